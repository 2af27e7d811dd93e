"""
Domain models for brio-riemann
States, flux parameters, waves, Riemann solutions and sweep records
"""
from enum import Enum
from typing import Annotated, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from brio_riemann.core.config import within_tol


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)


class WaveFamily(int, Enum):
    """Characteristic family: 1 is backward, 2 is forward"""
    BACK = 1
    FORWARD = 2


class CurveKind(str, Enum):
    """Elementary wave curve through a left state"""
    R1 = "R1"
    R2 = "R2"
    S1 = "S1"
    S2 = "S2"

    @property
    def family(self) -> WaveFamily:
        return WaveFamily.BACK if self.value.endswith("1") else WaveFamily.FORWARD

    @property
    def is_rarefaction(self) -> bool:
        return self.value.startswith("R")


class Region4(str, Enum):
    """Phase-plane region of the perturbed system"""
    R1R2 = "R1R2"
    S1R2 = "S1R2"
    R1S2 = "R1S2"
    S1S2 = "S1S2"


class Region3(str, Enum):
    """Phase-plane region of the one-parameter system"""
    I = "I"  # noqa: E741
    II = "II"
    III = "III"


class SystemKind(str, Enum):
    """Which conservation law a FluxParams pair selects"""
    TRANSPORT = "transport"
    SINGLE_PARAM = "single_param"
    PERTURBED_BRIO = "perturbed_brio"


class State(_Frozen):
    """A point (u, v): velocity and density"""
    u: float
    v: float

    def as_tuple(self) -> Tuple[float, float]:
        return (self.u, self.v)


class FluxParams(_Frozen):
    """Flux perturbation pair (eps1, eps2)"""
    eps1: float = Field(default=0.0, ge=0.0)
    eps2: float = Field(default=0.0, ge=0.0)

    @property
    def system(self) -> SystemKind:
        if self.eps1 > 0.0:
            return SystemKind.PERTURBED_BRIO
        if self.eps2 > 0.0:
            return SystemKind.SINGLE_PARAM
        return SystemKind.TRANSPORT

    @property
    def extensions(self) -> List[str]:
        """Parameter choices outside eps1, eps2 > 0 that are still solved"""
        if self.eps1 > 0.0 and self.eps2 == 0.0:
            return ["eps2_zero"]
        return []


class CharPair(_Frozen):
    """Characteristic speeds, lambda1 <= lambda2"""
    lambda1: float
    lambda2: float


# Waves


class Rarefaction(_Frozen):
    """Centered fan between xi_head and xi_tail

    Attributes:
        log_density_bounds: ln v at the left and right edge; kept because v
            can underflow in the vacuum limit
    """
    type: Literal["rarefaction"] = "rarefaction"
    family: WaveFamily
    left: State
    right: State
    xi_head: float
    xi_tail: float
    log_density_bounds: Tuple[float, float]

    @property
    def xi_min(self) -> float:
        return self.xi_head

    @property
    def xi_max(self) -> float:
        return self.xi_tail


class Shock(_Frozen):
    type: Literal["shock"] = "shock"
    family: WaveFamily
    left: State
    right: State
    sigma: float

    @property
    def xi_min(self) -> float:
        return self.sigma

    @property
    def xi_max(self) -> float:
        return self.sigma


class Contact(_Frozen):
    type: Literal["contact"] = "contact"
    left: State
    right: State
    speed: float

    @property
    def xi_min(self) -> float:
        return self.speed

    @property
    def xi_max(self) -> float:
        return self.speed


class DeltaShock(_Frozen):
    """Delta shock x = sigma t carrying mass w(t) = strength_rate t

    u_delta is the velocity on the discontinuity; it equals sigma for the
    transport system and sigma + eps2 for the one-parameter system.
    """
    type: Literal["delta_shock"] = "delta_shock"
    sigma: float
    u_delta: float
    strength_rate: float
    left: State
    right: State

    @property
    def xi_min(self) -> float:
        return self.sigma

    @property
    def xi_max(self) -> float:
        return self.sigma


class VacuumFan(_Frozen):
    """Vacuum region v = 0, u = xi between two contacts"""
    type: Literal["vacuum_fan"] = "vacuum_fan"
    xi_left: float
    xi_right: float

    @property
    def xi_min(self) -> float:
        return self.xi_left

    @property
    def xi_max(self) -> float:
        return self.xi_right


Wave = Annotated[
    Union[Rarefaction, Shock, Contact, DeltaShock, VacuumFan],
    Field(discriminator="type"),
]

DeltaShockSolution = DeltaShock


class DeltaMarker(_Frozen):
    """Sample taken exactly on a delta shock"""
    sigma: float
    u_delta: float
    strength_rate: float


SampleResult = Union[State, DeltaMarker]


class RiemannSolution(_Frozen):
    """Ordered wave fan of a Riemann problem

    Attributes:
        intermediate: constant state between two waves, None otherwise
        region: region of the perturbed system, when that system is in force
        region3: region of the one-parameter system
        intermediate_log_density: ln v of the intermediate state
    """
    left: State
    right: State
    params: FluxParams
    waves: List[Wave] = Field(default_factory=list)
    intermediate: Optional[State] = None
    region: Optional[Region4] = None
    region3: Optional[Region3] = None
    intermediate_log_density: Optional[float] = None

    @model_validator(mode="after")
    def _check_ordering(self) -> "RiemannSolution":
        for first, second in zip(self.waves, self.waves[1:]):
            if first.xi_max > second.xi_min and not within_tol(first.xi_max, second.xi_min):
                raise ValueError(
                    f"wave speeds out of order: {first.type} ends at {first.xi_max}, "
                    f"{second.type} starts at {second.xi_min}"
                )
        return self

    @property
    def system(self) -> SystemKind:
        return self.params.system

    @property
    def delta_shock(self) -> Optional[DeltaShock]:
        for wave in self.waves:
            if isinstance(wave, DeltaShock):
                return wave
        return None

    @property
    def has_vacuum(self) -> bool:
        return any(isinstance(w, VacuumFan) for w in self.waves)

    def speeds(self) -> List[float]:
        """Distinct edge speeds of every wave, left to right"""
        out: List[float] = []
        for wave in self.waves:
            out.append(wave.xi_min)
            if wave.xi_max != wave.xi_min:
                out.append(wave.xi_max)
        return out


class SweepRecord(_Frozen):
    """One point of a parameter-limit study

    sigma1 and sigma2 are the edges of wave 1 and wave 2 that touch the
    intermediate state.
    """
    eps1: float
    eps2: float
    v_star: float
    u_star: float
    sigma1: float
    sigma2: float
    strength_surrogate: float
    scaled_vstar: float
    region: Region4
    log_v_star: float
    printed_scaled_vstar: float
    fan_edges: Tuple[float, float, float, float]


CSV_COLUMNS = (
    "eps1", "eps2", "v_star", "u_star", "sigma1", "sigma2",
    "strength_surrogate", "scaled_vstar", "region",
)


class ScheduleMode(str, Enum):
    BOTH_EQUAL = "both-equal"
    EPS1_ONLY = "eps1-only"


class Schedule(_Frozen):
    """Geometric schedule eps_k = eps_start * ratio**k, truncated at floor"""
    eps_start: float = Field(gt=0.0)
    ratio: float = Field(gt=0.0, lt=1.0)
    count: int = Field(gt=0)
    mode: ScheduleMode = ScheduleMode.BOTH_EQUAL
    floor: float = Field(default=0.0, ge=0.0)

    def epsilons(self) -> List[float]:
        values = [self.eps_start * self.ratio ** k for k in range(self.count)]
        return [e for e in values if e > 0.0 and e >= self.floor]
