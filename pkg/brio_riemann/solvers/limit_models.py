"""
Exact Riemann solvers of the limiting systems
Transport equations (vacuum and delta shocks) and the one-parameter system
"""
import logging
import math
from typing import Optional, Tuple

from brio_riemann.core.config import resolve, settings
from brio_riemann.core.errors import DomainError
from brio_riemann.models.domain import (
    Contact,
    DeltaShock,
    FluxParams,
    Rarefaction,
    Region3,
    RiemannSolution,
    Shock,
    State,
    SystemKind,
    VacuumFan,
    WaveFamily,
)
from brio_riemann.solvers import brio_solver

logger = logging.getLogger(__name__)


def _finite_nonneg(s: State, strict: bool) -> None:
    if strict and s.v <= 0.0:
        raise DomainError(f"density must be positive, got v={s.v}")
    if s.v < 0.0:
        raise DomainError(f"density must be nonnegative, got v={s.v}")


def solve_transport(left: State, right: State) -> RiemannSolution:
    """
    Riemann solution of u_t + (u^2/2)_x = 0, v_t + (uv)_x = 0

    u_left < u_right opens a vacuum between two contacts, u_left > u_right
    concentrates into a delta shock, equal velocities give one contact.
    """
    _finite_nonneg(left, strict=False)
    _finite_nonneg(right, strict=False)
    params = FluxParams(eps1=0.0, eps2=0.0)
    if left.u < right.u:
        waves = [
            Contact(left=left, right=State(u=left.u, v=0.0), speed=left.u),
            VacuumFan(xi_left=left.u, xi_right=right.u),
            Contact(left=State(u=right.u, v=0.0), right=right, speed=right.u),
        ]
    elif left.u > right.u:
        sigma = 0.5 * (left.u + right.u)
        rate = 0.5 * (left.v + right.v) * (left.u - right.u)
        waves = [DeltaShock(sigma=sigma, u_delta=sigma, strength_rate=rate, left=left, right=right)]
    else:
        waves = [Contact(left=left, right=right, speed=left.u)]
    return RiemannSolution(left=left, right=right, params=params, waves=waves)


def classify_single_param(left: State, right: State, eps2: float,
                          tie_tol: Optional[float] = None) -> Region3:
    """Region I, II or III; the II/III boundary belongs to III"""
    if not eps2 > 0.0:
        raise DomainError(f"the one-parameter system needs eps2 > 0, got {eps2}")
    tie = resolve(tie_tol, settings.tie_tol)
    if right.u > left.u + tie:
        return Region3.I
    if right.u > left.u - 2.0 * eps2 + tie:
        return Region3.II
    return Region3.III


def single_param_delta(left: State, right: State, eps2: float) -> DeltaShock:
    sigma = 0.5 * (left.u + right.u)
    rate = 0.5 * (right.v * (left.u - right.u + 2.0 * eps2)
                  - left.v * (right.u - left.u + 2.0 * eps2))
    return DeltaShock(sigma=sigma, u_delta=sigma + eps2, strength_rate=rate,
                      left=left, right=right)


def solve_single_param(left: State, right: State, eps2: float) -> RiemannSolution:
    """
    Riemann solution of u_t + (u^2/2)_x = 0, v_t + (uv - eps2 v)_x = 0

    Args:
        left: left state, v > 0
        right: right state, v > 0
        eps2: flux coefficient, strictly positive

    Returns:
        J + R (region I), J + S (region II) or a delta shock (region III);
        zero-strength waves are dropped
    """
    _finite_nonneg(left, strict=True)
    _finite_nonneg(right, strict=True)
    region = classify_single_param(left, right, eps2)
    params = FluxParams(eps1=0.0, eps2=eps2)

    if region is Region3.III:
        delta = single_param_delta(left, right, eps2)
        logger.debug(f"delta shock sigma={delta.sigma}, rate={delta.strength_rate}")
        return RiemannSolution(left=left, right=right, params=params, waves=[delta],
                               region3=region)

    du = right.u - left.u
    if region is Region3.I:
        log_mid = math.log(right.v) - du / eps2
    else:
        log_mid = math.log(right.v) + math.log(2.0 * eps2 - du) - math.log(2.0 * eps2 + du)
    mid = State(u=left.u, v=max(math.exp(log_mid), brio_solver.TINY_DENSITY))

    tie = settings.tie_tol
    waves = []
    if abs(log_mid - math.log(left.v)) > tie:
        waves.append(Contact(left=left, right=mid, speed=left.u - eps2))
    if abs(du) > tie:
        if region is Region3.I:
            waves.append(Rarefaction(
                family=WaveFamily.FORWARD, left=mid, right=right,
                xi_head=mid.u, xi_tail=right.u,
                log_density_bounds=(log_mid, math.log(right.v)),
            ))
        else:
            waves.append(Shock(family=WaveFamily.FORWARD, left=mid, right=right,
                               sigma=0.5 * (left.u + right.u)))
    two_waves = len(waves) == 2
    return RiemannSolution(
        left=left, right=right, params=params, waves=waves,
        intermediate=mid if two_waves else None,
        intermediate_log_density=log_mid if two_waves else None,
        region3=region,
    )


def grh_evolve(sigma: float, strength_rate: float, t: float) -> Tuple[float, float]:
    """Position and strength of a delta shock started at x(0) = 0, w(0) = 0"""
    if t < 0.0:
        raise DomainError(f"time must be nonnegative, got t={t}")
    return (sigma * t, strength_rate * t)


def delta_entropy_holds(delta: DeltaShock, params: FluxParams,
                        tie_tol: Optional[float] = None) -> bool:
    """Overcompressive entropy inequalities of an emitted delta shock"""
    tie = resolve(tie_tol, settings.tie_tol)
    eps2 = params.eps2
    ok_left = delta.sigma < delta.left.u - eps2 + tie
    ok_right = delta.right.u + eps2 < delta.sigma + tie
    return ok_left and ok_right and delta.strength_rate > 0.0


def solve(left: State, right: State, params: FluxParams,
          tol: Optional[float] = None) -> RiemannSolution:
    """Route Riemann data to the solver of the system params selects"""
    system = params.system
    if system is SystemKind.PERTURBED_BRIO:
        return brio_solver.solve_riemann(left, right, params, tol)
    if system is SystemKind.SINGLE_PARAM:
        return solve_single_param(left, right, params.eps2)
    return solve_transport(left, right)
