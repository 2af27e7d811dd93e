"""
Riemann solver for the perturbed Brio system
Phase-plane classification, intermediate state, wave fan and sampling
"""
import logging
import math
import sys
from typing import Callable, Optional, Tuple

from scipy import optimize

from brio_riemann.core.config import resolve, settings, within_tol
from brio_riemann.core.errors import BracketError, ConvergenceError, DomainError, SolverError
from brio_riemann.models.domain import (
    Contact,
    CurveKind,
    DeltaMarker,
    DeltaShock,
    FluxParams,
    Rarefaction,
    Region4,
    RiemannSolution,
    SampleResult,
    Shock,
    State,
    VacuumFan,
    WaveFamily,
)
from brio_riemann.solvers.riemann_core import (
    char_speeds,
    check_state,
    curve_u,
    potential_from_log,
    shock_slope,
    shock_speed,
)

logger = logging.getLogger(__name__)

TINY_DENSITY = sys.float_info.min


def _require_perturbed(left: State, right: State, p: FluxParams) -> None:
    if p.eps1 <= 0.0:
        raise DomainError("the perturbed system needs eps1 > 0; use limit_models for eps1 = 0")
    check_state(left, p)
    check_state(right, p)


def classify(left: State, right: State, p: FluxParams, tie_tol: Optional[float] = None) -> Region4:
    """
    Region of the right state relative to the wave curves through left

    Boundary cases (right state on a curve within tie_tol) fall into the
    closed middle region and later resolve to one-wave solutions.
    """
    _require_perturbed(left, right, p)
    tie = resolve(tie_tol, settings.tie_tol)
    if right.v > left.v:
        upper = curve_u(CurveKind.R2, left, right.v, p)
        lower = curve_u(CurveKind.S1, left, right.v, p)
        middle = Region4.S1R2
    elif right.v < left.v:
        upper = curve_u(CurveKind.R1, left, right.v, p)
        lower = curve_u(CurveKind.S2, left, right.v, p)
        middle = Region4.R1S2
    else:
        upper = lower = left.u
        middle = Region4.S1R2
    if right.u > upper + tie:
        return Region4.R1R2
    if right.u < lower - tie:
        return Region4.S1S2
    return middle


# Mismatch between the forward family-1 curve and the backward family-2 curve


def _forward_u(left: State, log_v: float, p: FluxParams) -> float:
    """Family-1 curve through left: R1 below v_left, S1 above"""
    v = math.exp(log_v)
    if log_v < math.log(left.v):
        return (left.u + potential_from_log(WaveFamily.BACK, log_v, p)
                - potential_from_log(WaveFamily.BACK, math.log(left.v), p))
    if v == left.v:
        return left.u
    return left.u + (v - left.v) * shock_slope(WaveFamily.BACK, 0.5 * (v + left.v), p)


def _backward_u(right: State, log_v: float, p: FluxParams) -> float:
    """States that reach right through a family-2 wave: R2 below v_right, S2 above"""
    v = math.exp(log_v)
    if log_v < math.log(right.v):
        return (right.u - potential_from_log(WaveFamily.FORWARD, math.log(right.v), p)
                + potential_from_log(WaveFamily.FORWARD, log_v, p))
    if v == right.v:
        return right.u
    return right.u + (v - right.v) * shock_slope(WaveFamily.FORWARD, 0.5 * (v + right.v), p)


def mismatch(left: State, right: State, p: FluxParams) -> Callable[[float], float]:
    """F(ln v) = u1 - u2, strictly decreasing in v"""
    def f(log_v: float) -> float:
        return _forward_u(left, log_v, p) - _backward_u(right, log_v, p)
    return f


def _bisect(f: Callable[[float], float], lo: float, hi: float, xtol: float,
            what: str) -> float:
    try:
        root, info = optimize.bisect(
            f, lo, hi, xtol=xtol, maxiter=settings.max_iter,
            full_output=True, disp=False,
        )
    except ValueError as exc:
        raise BracketError(f"{what}: {exc}", {"lo": lo, "hi": hi}) from exc
    if not info.converged:
        raise ConvergenceError(
            f"{what}: no convergence in {info.iterations} iterations",
            {"lo": lo, "hi": hi, "root": root, "xtol": xtol},
        )
    logger.debug(f"{what}: root {root} after {info.iterations} iterations")
    return root


def _linear_root(f: Callable[[float], float], lo: float, hi: float,
                 tol: float, tie: float, what: str) -> float:
    """Root of F(ln v) bracketed in v, snapping to an endpoint on ties"""
    g = lambda v: f(math.log(v))  # noqa: E731
    g_lo, g_hi = g(lo), g(hi)
    if g_lo <= tie:
        return lo
    if g_hi >= -tie:
        return hi
    return _bisect(g, lo, hi, tol, what)


def _shock_pair_bracket(g: Callable[[float], float], start: float) -> float:
    """Upper bracket for S1S2 by doubling from start"""
    hi = start + 1.0
    for _ in range(settings.bracket_doublings):
        value = g(hi)
        if value < 0.0:
            return hi
        hi *= 2.0
        if not math.isfinite(hi):
            break
    raise BracketError(
        "no sign change while expanding the S1S2 bracket",
        {"start": start, "last_hi": hi, "doublings": settings.bracket_doublings},
    )


def _vacuum_bracket(f: Callable[[float], float], upper: float, p: FluxParams) -> float:
    """Lower ln v bracket for R1R2 by doubling the distance below upper"""
    step = 1.0
    for _ in range(64):
        lo = upper - step
        if f(lo) > 0.0:
            return lo
        step *= 2.0
    if p.eps2 == 0.0:
        raise SolverError(
            "data requires a vacuum state, which the perturbed system with eps2 = 0 cannot connect",
            {"log_v_lowest": upper - step, "eps1": p.eps1},
        )
    raise BracketError("no sign change while expanding the R1R2 bracket", {"upper": upper})


def solve_intermediate_log(left: State, right: State, p: FluxParams,
                           tol: Optional[float] = None) -> Tuple[State, float, Region4]:
    """
    Intermediate state, its log density and the region

    v* is returned clamped to the smallest positive double while ln v*
    keeps its exact value.
    """
    tol = resolve(tol, settings.tol)
    if not tol > 0.0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    tie = settings.tie_tol
    region = classify(left, right, p)
    f = mismatch(left, right, p)
    lo_v, hi_v = min(left.v, right.v), max(left.v, right.v)
    what = f"intermediate state ({region.value})"

    if region is Region4.R1R2:
        upper = math.log(lo_v)
        if f(upper) >= -tie:
            log_v = upper
        else:
            lower = _vacuum_bracket(f, upper, p)
            log_v = _bisect(f, lower, upper, tol, what)
    elif region is Region4.S1S2:
        g = lambda v: f(math.log(v))  # noqa: E731
        if g(hi_v) <= tie:
            v_star = hi_v
        else:
            v_star = _bisect(g, hi_v, _shock_pair_bracket(g, hi_v), tol, what)
        log_v = math.log(v_star)
    else:
        log_v = math.log(_linear_root(f, lo_v, hi_v, tol, tie, what))

    u_star = _forward_u(left, log_v, p)
    v_star = max(math.exp(log_v), TINY_DENSITY)
    return State(u=u_star, v=v_star), log_v, region


def solve_intermediate(left: State, right: State, p: FluxParams,
                       tol: Optional[float] = None) -> Tuple[State, Region4]:
    """
    Intermediate state (u*, v*) between the two waves

    Args:
        left: left Riemann state
        right: right Riemann state
        p: flux parameters with eps1 > 0
        tol: bisection tolerance on v* (relative for R1R2, where the
            search runs in ln v)

    Returns:
        (intermediate state, region)

    Raises:
        BracketError: S1S2 bracket expansion failed
        ConvergenceError: iteration cap reached
    """
    state, _, region = solve_intermediate_log(left, right, p, tol)
    return state, region


def _same(a: State, b: State, log_a: float, log_b: float) -> bool:
    return within_tol(a.u, b.u) and within_tol(log_a, log_b)


def _family_wave(fam: WaveFamily, a: State, b: State, log_a: float, log_b: float,
                 p: FluxParams):
    rarefies = (log_b < log_a) if fam is WaveFamily.BACK else (log_b > log_a)
    if rarefies:
        idx = 0 if fam is WaveFamily.BACK else 1
        head = char_speeds(a.u, a.v, p)[idx]
        tail = char_speeds(b.u, b.v, p)[idx]
        return Rarefaction(family=fam, left=a, right=b, xi_head=head, xi_tail=tail,
                           log_density_bounds=(log_a, log_b))
    return Shock(family=fam, left=a, right=b, sigma=shock_speed(fam, a, b, p))


def solve_riemann(left: State, right: State, p: FluxParams,
                  tol: Optional[float] = None) -> RiemannSolution:
    """Two-wave solution of the perturbed system, one-wave on curve ties"""
    _require_perturbed(left, right, p)
    if left == right:
        return RiemannSolution(left=left, right=right, params=p)
    mid, log_mid, region = solve_intermediate_log(left, right, p, tol)
    log_left, log_right = math.log(left.v), math.log(right.v)

    waves = []
    if not _same(left, mid, log_left, log_mid):
        waves.append(_family_wave(WaveFamily.BACK, left, mid, log_left, log_mid, p))
    if not _same(mid, right, log_mid, log_right):
        waves.append(_family_wave(WaveFamily.FORWARD, mid, right, log_mid, log_right, p))
    two_waves = len(waves) == 2
    logger.debug(f"solved {region.value}: intermediate ({mid.u}, {mid.v}), {len(waves)} waves")
    return RiemannSolution(
        left=left,
        right=right,
        params=p,
        waves=waves,
        intermediate=mid if two_waves else None,
        intermediate_log_density=log_mid if two_waves else None,
        region=region,
    )


# Sampling


def _fan_state(wave: Rarefaction, xi: float, p: FluxParams, tol: float) -> State:
    idx = 0 if wave.family is WaveFamily.BACK else 1
    log_a, log_b = wave.log_density_bounds
    if wave.family is WaveFamily.BACK:
        anchor, log_anchor = wave.left, log_a
    else:
        anchor, log_anchor = wave.right, log_b
    base = potential_from_log(wave.family, log_anchor, p)

    def u_at(log_v: float) -> float:
        return anchor.u + potential_from_log(wave.family, log_v, p) - base

    def speed_gap(log_v: float) -> float:
        return char_speeds(u_at(log_v), math.exp(log_v), p)[idx] - xi

    lo, hi = min(log_a, log_b), max(log_a, log_b)
    log_v = _bisect(speed_gap, lo, hi, tol, "fan inversion")
    return State(u=u_at(log_v), v=max(math.exp(log_v), TINY_DENSITY))


def sample(sol: RiemannSolution, xi: float, tol: Optional[float] = None) -> SampleResult:
    """
    Self-similar value at xi = x/t

    Constant regions return their state, fans are inverted by bisection in
    ln v, a sample exactly on a delta shock returns a DeltaMarker.
    """
    tol = resolve(tol, settings.tol)
    current = sol.left
    for wave in sol.waves:
        if xi < wave.xi_min:
            return current
        if isinstance(wave, DeltaShock):
            if xi == wave.sigma:
                return DeltaMarker(sigma=wave.sigma, u_delta=wave.u_delta,
                                   strength_rate=wave.strength_rate)
            current = wave.right
        elif isinstance(wave, VacuumFan):
            if xi <= wave.xi_max:
                return State(u=xi, v=0.0)
            current = State(u=wave.xi_max, v=0.0)
        elif isinstance(wave, Rarefaction):
            if xi >= wave.xi_max:
                current = wave.right
                continue
            if xi == wave.xi_min:
                return wave.left
            return _fan_state(wave, xi, sol.params, tol)
        elif isinstance(wave, (Shock, Contact)):
            current = wave.right
    return current
