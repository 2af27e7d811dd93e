"""
Limits laboratory
Parameter sweeps toward the transport and one-parameter limits,
convergence-rate estimates and region thresholds
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Union

import numpy as np
from scipy import optimize

from brio_riemann.core.config import resolve, settings
from brio_riemann.core.errors import DomainError, SolverError, UnsupportedCaseError
from brio_riemann.core.workers import parallel_map, worker_count
from brio_riemann.models.domain import (
    CurveKind,
    FluxParams,
    Region3,
    Region4,
    RiemannSolution,
    Schedule,
    ScheduleMode,
    State,
    SweepRecord,
)
from brio_riemann.solvers import brio_solver, limit_models
from brio_riemann.solvers.riemann_core import curve_u

logger = logging.getLogger(__name__)

RECORD_FIELDS = (
    "v_star", "u_star", "sigma1", "sigma2", "strength_surrogate",
    "scaled_vstar", "printed_scaled_vstar", "log_v_star",
)


@dataclass
class LimitEstimate:
    """Limit and convergence rate read off a geometric schedule

    Attributes:
        limit: last value of the sequence
        rate: exponent p in |x_k - x*| ~ C eps_k^p, None for a non-monotone tail
        extrapolated: Aitken-type extrapolation of the limit, None without a rate
    """
    limit: float
    rate: Optional[float]
    extrapolated: Optional[float]


def record_from_solution(sol: RiemannSolution) -> SweepRecord:
    """Reduce a two-wave solution of the perturbed system to one sweep row"""
    if len(sol.waves) != 2 or sol.intermediate is None:
        raise UnsupportedCaseError(
            f"sweep records need two-wave solutions, got {len(sol.waves)} waves"
        )
    first, second = sol.waves
    sigma1, sigma2 = first.xi_max, second.xi_min
    v_star = sol.intermediate.v
    root_eps1 = math.sqrt(sol.params.eps1)
    log_v = sol.intermediate_log_density
    return SweepRecord(
        eps1=sol.params.eps1,
        eps2=sol.params.eps2,
        v_star=v_star,
        u_star=sol.intermediate.u,
        sigma1=sigma1,
        sigma2=sigma2,
        strength_surrogate=(sigma2 - sigma1) * v_star,
        scaled_vstar=root_eps1 * v_star,
        region=sol.region,
        log_v_star=log_v if log_v is not None else math.log(v_star),
        printed_scaled_vstar=2.0 * root_eps1 * v_star,
        fan_edges=(first.xi_min, first.xi_max, second.xi_min, second.xi_max),
    )


def _record_at(left: State, right: State, eps1: float, eps2: float,
               tol: Optional[float]) -> SweepRecord:
    params = FluxParams(eps1=eps1, eps2=eps2)
    try:
        sol = brio_solver.solve_riemann(left, right, params, tol)
    except SolverError as exc:
        raise exc.with_context(eps1=eps1, eps2=eps2)
    return record_from_solution(sol)


def _run_schedule(left: State, right: State, pairs: Sequence[tuple],
                  tol: Optional[float], n_jobs: Optional[int]) -> List[SweepRecord]:
    logger.info(f"sweeping {len(pairs)} schedule points with n_jobs={worker_count(n_jobs)}")
    records = parallel_map(_record_at, [(left, right, e1, e2, tol) for e1, e2 in pairs], n_jobs)
    return sorted(records, key=lambda r: (-r.eps1, -r.eps2))


def sweep_both(left: State, right: State, sch: Schedule,
               tol: Optional[float] = None, n_jobs: Optional[int] = None) -> List[SweepRecord]:
    """
    Sweep eps1 = eps2 = eps_k toward the transport limit

    Args:
        left: left Riemann state
        right: right Riemann state, u_right != u_left
        sch: both-equal schedule
        tol: root-finding tolerance
        n_jobs: worker processes, settings.n_jobs when None

    Returns:
        one SweepRecord per schedule point, largest eps first
    """
    if sch.mode is not ScheduleMode.BOTH_EQUAL:
        raise DomainError(f"sweep_both needs a both-equal schedule, got {sch.mode.value}")
    if left.u == right.u:
        raise DomainError("sweep_both needs u_left != u_right")
    pairs = [(e, e) for e in sch.epsilons()]
    return _run_schedule(left, right, pairs, tol, n_jobs)


def sweep_eps1(left: State, right: State, eps2: float, sch: Schedule,
               tol: Optional[float] = None, n_jobs: Optional[int] = None) -> List[SweepRecord]:
    """Sweep eps1 -> 0 with eps2 fixed; eps2 = 0 gives the exactly solvable family"""
    if sch.mode is not ScheduleMode.EPS1_ONLY:
        raise DomainError(f"sweep_eps1 needs an eps1-only schedule, got {sch.mode.value}")
    if eps2 < 0.0:
        raise DomainError(f"eps2 must be nonnegative, got {eps2}")
    if eps2 == 0.0:
        logger.warning("eps2 = 0 lies outside eps1, eps2 > 0; sweeping the exactly solvable family")
    pairs = [(e, eps2) for e in sch.epsilons()]
    return _run_schedule(left, right, pairs, tol, n_jobs)


def predicted_limit_both(left: State, right: State) -> RiemannSolution:
    """Transport-system solution the both-equal sweep converges to"""
    if left.u == right.u:
        raise DomainError("limit prediction needs u_left != u_right")
    return limit_models.solve_transport(left, right)


def predicted_limit_eps1(left: State, right: State, eps2: float) -> RiemannSolution:
    """One-parameter solution the eps1 sweep converges to (regions I and III)"""
    region = limit_models.classify_single_param(left, right, eps2)
    if region is Region3.II:
        raise UnsupportedCaseError(
            f"eps1 -> 0 limit is not constructed for region II data "
            f"(u_left - u_right = {left.u - right.u}, 2 eps2 = {2.0 * eps2})"
        )
    return limit_models.solve_single_param(left, right, eps2)


def predicted_scaled_vstar(left: State, right: State) -> Dict[str, float]:
    """Candidate constants of the growth law of v* for two-shock data

    corrected: lim sqrt(eps1) v*; printed: lim 2 sqrt(eps1) v*. Both are
    stated as (u_left - u_right)/2.
    """
    target = 0.5 * (left.u - right.u)
    return {"corrected": target, "printed": target}


# Convergence diagnostics


def estimate_rate(eps: Sequence[float], values: Sequence[float]) -> LimitEstimate:
    """Three-point rate estimate from the last three values of a sequence"""
    if len(values) < 3 or len(eps) != len(values):
        raise DomainError("rate estimation needs at least three paired values")
    x = np.asarray(values, dtype=float)
    e = np.asarray(eps, dtype=float)
    limit = float(x[-1])
    d1 = x[-2] - x[-3]
    d2 = x[-1] - x[-2]
    ratio = e[-1] / e[-2]
    monotone = d1 != 0.0 and d2 != 0.0 and np.sign(d1) == np.sign(d2) and abs(d2) < abs(d1)
    if not monotone or not 0.0 < ratio < 1.0:
        logger.info("non-monotone tail, rate unavailable")
        return LimitEstimate(limit=limit, rate=None, extrapolated=None)
    rho = d2 / d1
    rate = float(math.log(rho) / math.log(ratio))
    extrapolated = float(x[-1] + d2 * rho / (1.0 - rho))
    return LimitEstimate(limit=limit, rate=rate, extrapolated=extrapolated)


def estimate_limit(records: Sequence[SweepRecord],
                   field: Union[str, Callable[[SweepRecord], float]]) -> LimitEstimate:
    """Limit and rate of one SweepRecord field along the schedule"""
    getter = field if callable(field) else (lambda r: getattr(r, field))
    if len(records) < 3:
        raise DomainError(f"estimate_limit needs at least three records, got {len(records)}")
    ordered = sorted(records, key=lambda r: -r.eps1)
    return estimate_rate([r.eps1 for r in ordered], [getter(r) for r in ordered])


def summarize_sweep(left: State, right: State, records: Sequence[SweepRecord],
                    eps2: Optional[float] = None) -> dict:
    """Limit estimates next to the predicted limit of a sweep"""
    estimates = {}
    for name in RECORD_FIELDS:
        est = estimate_limit(records, name)
        estimates[name] = {"limit": est.limit, "rate": est.rate, "extrapolated": est.extrapolated}

    summary: dict = {"estimates": estimates, "count": len(records)}
    try:
        predicted = (predicted_limit_both(left, right) if eps2 is None
                     else predicted_limit_eps1(left, right, eps2))
        summary["predicted"] = predicted.model_dump(mode="json")
    except DomainError as exc:
        summary["predicted"] = None
        summary["predicted_error"] = str(exc)

    if left.u > right.u and records:
        constants = predicted_scaled_vstar(left, right)
        last = min(records, key=lambda r: r.eps1)
        gaps = {
            "corrected": abs(last.scaled_vstar - constants["corrected"]),
            "printed": abs(last.printed_scaled_vstar - constants["printed"]),
        }
        matched = min(gaps, key=gaps.get)
        summary["scaled_vstar"] = {
            "constants": constants,
            "gaps": gaps,
            "matched": matched if gaps[matched] <= 0.1 * abs(constants["corrected"]) else None,
        }
    return summary


# Region thresholds


def _shock_margin(left: State, right: State, eps2: float) -> Callable[[float], float]:
    kind = CurveKind.S1 if right.v > left.v else CurveKind.S2

    def margin(log10_eps1: float) -> float:
        p = FluxParams(eps1=10.0 ** log10_eps1, eps2=eps2)
        return curve_u(kind, left, right.v, p) - right.u
    return margin


def _rarefaction_margin(left: State, right: State, eps2: float) -> Callable[[float], float]:
    kind = CurveKind.R2 if right.v > left.v else CurveKind.R1

    def margin(log10_eps1: float) -> float:
        p = FluxParams(eps1=10.0 ** log10_eps1, eps2=eps2)
        return right.u - curve_u(kind, left, right.v, p)
    return margin


def find_region_threshold(left: State, right: State, eps2: float,
                          tol: Optional[float] = None) -> float:
    """
    eps1 below which the perturbed solution has the structure of the limit

    Region III data target S1S2, region I data target R1R2. The boundary
    is located by bisection on log10 eps1 over [1e-300, 1e6]; +inf means
    the target already holds at the upper end.

    Raises:
        UnsupportedCaseError: region II data
        SolverError: target fails even at eps1 = 1e-300
    """
    region = limit_models.classify_single_param(left, right, eps2)
    if region is Region3.II:
        raise UnsupportedCaseError("region thresholds are defined for regions I and III only")
    target = Region4.S1S2 if region is Region3.III else Region4.R1R2
    if right.v == left.v:
        return math.inf
    margin = (_shock_margin if target is Region4.S1S2 else _rarefaction_margin)(left, right, eps2)
    lo, hi = -300.0, 6.0
    if margin(hi) > 0.0:
        return math.inf
    if margin(lo) <= 0.0:
        raise SolverError(
            f"classification never reaches {target.value} for eps1 >= 1e-300",
            {"margin_lo": margin(lo), "eps2": eps2, "left": left.as_tuple(), "right": right.as_tuple()},
        )
    xtol = resolve(tol, settings.tol)
    root, info = optimize.bisect(margin, lo, hi, xtol=xtol, maxiter=settings.max_iter,
                                 full_output=True, disp=False)
    if not info.converged:
        raise SolverError("threshold bisection did not converge", {"root": root})
    # step to the side where the target holds
    for _ in range(8):
        if margin(root) > 0.0:
            break
        root -= xtol
    return 10.0 ** root


def shock_threshold_closed_form(left: State, right: State, eps2: float,
                                printed: bool = False) -> float:
    """Closed-form eps1 threshold for S1S2 of region III data"""
    if right.v == left.v:
        return math.inf
    slope = (right.u - left.u) / (right.v - left.v)
    total = left.v + right.v
    value = ((total * slope - eps2) ** 2 - eps2 ** 2) / total ** 2
    return value / 4.0 if printed else value

