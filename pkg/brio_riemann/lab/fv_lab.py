"""
Finite-volume laboratory
First-order local Lax-Friedrichs runs on Riemann data, L1 comparison with
the exact solvers and a concentration diagnostic for delta shocks
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from brio_riemann.core.config import get_grid_defaults, resolve, settings
from brio_riemann.core.errors import DomainError, DomainTooSmallError, UnsupportedCaseError
from brio_riemann.core.workers import parallel_map
from brio_riemann.models.domain import DeltaMarker, FluxParams, RiemannSolution, State
from brio_riemann.solvers.brio_solver import sample
from brio_riemann.solvers.limit_models import solve
from brio_riemann.solvers.riemann_core import check_state

logger = logging.getLogger(__name__)

SCHEME_LABEL = "local Lax-Friedrichs (Rusanov), first order, transmissive boundaries"


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [x_min, x_max] and the run length"""
    x_min: float
    x_max: float
    n_cells: int
    cfl: float
    t_end: float

    def __post_init__(self):
        if not self.x_min < 0.0 < self.x_max:
            raise DomainError(f"grid must contain x = 0, got [{self.x_min}, {self.x_max}]")
        if self.n_cells < 10:
            raise DomainError(f"grid needs at least 10 cells, got {self.n_cells}")
        if not 0.0 < self.cfl < 1.0:
            raise DomainError(f"cfl must lie in (0, 1), got {self.cfl}")
        if not self.t_end > 0.0:
            raise DomainError(f"t_end must be positive, got {self.t_end}")

    @classmethod
    def default(cls, **overrides) -> "Grid":
        values = get_grid_defaults()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_cells

    @property
    def centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.n_cells) + 0.5) * self.dx


@dataclass
class CellField:
    """
    Cell averages of (u, v) at time t

    Attributes:
        boundary_flux: time-integrated flux through the right minus the left
            boundary, per component
        max_cfl_used: largest dt * max|lambda| / dx over all steps
        warnings: admissibility warnings raised during the run
    """
    grid: Grid
    t: float
    u: np.ndarray
    v: np.ndarray
    steps: int = 0
    boundary_flux: np.ndarray = field(default_factory=lambda: np.zeros(2))
    max_cfl_used: float = 0.0
    warnings: List[str] = field(default_factory=list)

    def totals(self) -> np.ndarray:
        dx = self.grid.dx
        return np.array([self.u.sum() * dx, self.v.sum() * dx])


def _flux(u: np.ndarray, v: np.ndarray, p: FluxParams) -> np.ndarray:
    return np.stack([0.5 * u * u + 0.5 * p.eps1 * v * v, u * v - p.eps2 * v])


def _max_speed(u: np.ndarray, v: np.ndarray, p: FluxParams) -> np.ndarray:
    mid = u - 0.5 * p.eps2
    half = 0.5 * np.hypot(p.eps2, 2.0 * np.sqrt(p.eps1) * v)
    return np.maximum(np.abs(mid - half), np.abs(mid + half))


def initial_field(left: State, right: State, g: Grid) -> CellField:
    x = g.centers
    u = np.where(x < 0.0, left.u, right.u).astype(float)
    v = np.where(x < 0.0, left.v, right.v).astype(float)
    return CellField(grid=g, t=0.0, u=u, v=v)


def lax_friedrichs_run(left: State, right: State, p: FluxParams, g: Grid,
                       t_stop: Optional[float] = None) -> CellField:
    """
    Advance Riemann data with the local Lax-Friedrichs flux

    Args:
        left: left state
        right: right state
        p: flux parameters
        g: grid and run length
        t_stop: stop earlier than g.t_end

    Returns:
        CellField at t_stop (or g.t_end)

    Raises:
        DomainTooSmallError: a wave reached the first or last cell
    """
    check_state(left, p)
    check_state(right, p)
    t_final = resolve(t_stop, g.t_end)
    state = initial_field(left, right, g)
    dx = g.dx
    q = np.stack([state.u, state.v])
    far_left = q[:, 0].copy()
    far_right = q[:, -1].copy()
    flux_through = np.zeros(2)
    t, steps, max_cfl = 0.0, 0, 0.0
    warned = False

    while t < t_final:
        u, v = q
        speed = _max_speed(u, v, p)
        a_max = float(speed.max())
        if a_max == 0.0:
            dt = t_final - t
        else:
            dt = min(g.cfl * dx / a_max, t_final - t)
        max_cfl = max(max_cfl, dt * a_max / dx)

        # transmissive ghost cells
        qg = np.concatenate([q[:, :1], q, q[:, -1:]], axis=1)
        sg = np.concatenate([speed[:1], speed, speed[-1:]])
        fg = _flux(qg[0], qg[1], p)
        a_face = np.maximum(sg[:-1], sg[1:])
        face = 0.5 * (fg[:, :-1] + fg[:, 1:]) - 0.5 * a_face * (qg[:, 1:] - qg[:, :-1])
        q = q - dt / dx * (face[:, 1:] - face[:, :-1])
        flux_through += dt * (face[:, -1] - face[:, 0])
        t += dt
        steps += 1

        drift = max(np.max(np.abs(q[:, 0] - far_left)), np.max(np.abs(q[:, -1] - far_right)))
        scale = float(np.max(np.abs(np.concatenate([far_left, far_right]))))
        if drift > settings.abs_tol + settings.rel_tol * scale:
            raise DomainTooSmallError(
                f"wave reached the boundary at t={t} (drift {drift}); enlarge [x_min, x_max]"
            )
        if p.eps1 > 0.0 and not warned and np.min(q[1]) <= 0.0:
            warned = True
            message = f"nonpositive density {np.min(q[1])} at t={t}"
            logger.warning(message)
            state.warnings.append(message)

    logger.info(f"finite-volume run finished: {steps} steps to t={t}")
    state.t = t
    state.u, state.v = q[0].copy(), q[1].copy()
    state.steps = steps
    state.boundary_flux = flux_through
    state.max_cfl_used = max_cfl
    return state


def exact_on_grid(exact: RiemannSolution, g: Grid, t: float) -> np.ndarray:
    """Exact (u, v) at the cell centers"""
    if exact.delta_shock is not None:
        raise UnsupportedCaseError("L1 comparison against a delta shock is undefined")
    values = np.empty((2, g.n_cells))
    for i, x in enumerate(g.centers):
        s = sample(exact, x / t)
        if isinstance(s, DeltaMarker):
            raise UnsupportedCaseError("sampled a delta shock")
        values[0, i], values[1, i] = s.u, s.v
    return values


def l1_error(num: CellField, exact: RiemannSolution, t: Optional[float] = None) -> float:
    """Sum over cells and both components of |q_num - q_exact| dx"""
    t = resolve(t, num.t)
    if not t > 0.0:
        raise DomainError(f"comparison time must be positive, got {t}")
    ref = exact_on_grid(exact, num.grid, t)
    diff = np.abs(num.u - ref[0]) + np.abs(num.v - ref[1])
    return float(diff.sum() * num.grid.dx)


def delta_indicator(num: CellField) -> float:
    """Largest single-cell mass v * dx"""
    return float(np.max(num.v) * num.grid.dx)


def _refinement_job(left: State, right: State, p: FluxParams, g: Grid,
                    exact: RiemannSolution) -> Dict[str, float]:
    run = lax_friedrichs_run(left, right, p, g)
    return {"n_cells": g.n_cells, "dx": g.dx, "l1_error": l1_error(run, exact),
            "steps": run.steps}


def refinement_study(left: State, right: State, p: FluxParams, cells: Sequence[int],
                     base: Optional[Grid] = None, n_jobs: Optional[int] = None) -> dict:
    """L1 errors over a list of grid sizes with the observed order"""
    base = base or Grid.default()
    exact = solve(left, right, p)
    grids = [Grid(base.x_min, base.x_max, n, base.cfl, base.t_end) for n in cells]
    rows = parallel_map(_refinement_job, [(left, right, p, g, exact) for g in grids], n_jobs)
    dx = np.array([r["dx"] for r in rows])
    err = np.array([r["l1_error"] for r in rows])
    order = float(np.polyfit(np.log(dx), np.log(err), 1)[0]) if len(rows) > 1 else None
    return {"runs": rows, "observed_order": order, "scheme": SCHEME_LABEL}


def indicator_history(left: State, right: State, p: FluxParams, g: Grid,
                      times: Sequence[float]) -> List[Dict[str, float]]:
    """delta_indicator at several stop times"""
    out = []
    for t in sorted(times):
        run = lax_friedrichs_run(left, right, p, g, t_stop=t)
        out.append({"t": run.t, "delta_indicator": delta_indicator(run)})
    return out
