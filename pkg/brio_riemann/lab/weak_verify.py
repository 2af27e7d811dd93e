"""
Weak-form verification
Quadrature residuals of constructed Riemann solutions against smooth bumps,
including the line term carried by a delta shock
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

from brio_riemann.core.config import resolve, settings
from brio_riemann.core.errors import DomainError, QuadratureError
from brio_riemann.core.workers import parallel_map
from brio_riemann.models.domain import DeltaMarker, DeltaShock, RiemannSolution
from brio_riemann.solvers.brio_solver import sample

logger = logging.getLogger(__name__)

EQUATIONS = ("u", "v")


@dataclass(frozen=True)
class BumpTestFn:
    """
    Smooth bump exp(1 - 1/(1 - rho^2)) on an ellipse in the (x, t) plane

    Attributes:
        center: (x0, t0)
        radii: (r_x, r_t); the support stays in t > 0
    """
    center: Tuple[float, float]
    radii: Tuple[float, float]

    def _rho2(self, x: float, t: float) -> float:
        dx = (x - self.center[0]) / self.radii[0]
        dt = (t - self.center[1]) / self.radii[1]
        return dx * dx + dt * dt

    def __call__(self, x: float, t: float) -> float:
        rho2 = self._rho2(x, t)
        if rho2 >= 1.0:
            return 0.0
        return math.exp(1.0 - 1.0 / (1.0 - rho2))

    def gradient(self, x: float, t: float) -> Tuple[float, float]:
        """(phi_x, phi_t)"""
        rho2 = self._rho2(x, t)
        if rho2 >= 1.0:
            return (0.0, 0.0)
        gap = 1.0 - rho2
        scale = -math.exp(1.0 - 1.0 / gap) / (gap * gap)
        rx, rt = self.radii
        return (scale * 2.0 * (x - self.center[0]) / (rx * rx),
                scale * 2.0 * (t - self.center[1]) / (rt * rt))

    @property
    def t_range(self) -> Tuple[float, float]:
        return (self.center[1] - self.radii[1], self.center[1] + self.radii[1])

    def x_range(self, t: float) -> Tuple[float, float]:
        s = (t - self.center[1]) / self.radii[1]
        half = self.radii[0] * math.sqrt(max(0.0, 1.0 - s * s))
        return (self.center[0] - half, self.center[0] + half)


def make_bump(center: Tuple[float, float], radii: Tuple[float, float]) -> BumpTestFn:
    """Bump test function; its support must lie strictly inside t > 0"""
    rx, rt = radii
    if not (rx > 0.0 and rt > 0.0):
        raise DomainError(f"bump radii must be positive, got {radii}")
    if not center[1] - rt > 0.0:
        raise DomainError(f"bump support touches t <= 0: t0={center[1]}, r_t={rt}")
    return BumpTestFn(center=(float(center[0]), float(center[1])), radii=(float(rx), float(rt)))


def random_bumps(rng: np.random.Generator, count: int,
                 x_span: Tuple[float, float] = (-1.5, 1.5)) -> List[BumpTestFn]:
    """Random bump placements with supports inside t in (0.1, 2.5)"""
    bumps = []
    for _ in range(count):
        t0 = rng.uniform(0.6, 1.6)
        rt = rng.uniform(0.2, min(0.8, t0 - 0.1))
        bumps.append(make_bump((rng.uniform(*x_span), t0), (rng.uniform(0.3, 1.2), rt)))
    return bumps


@dataclass
class ResidualReport:
    """Per-equation residuals over a set of bumps

    Attributes:
        per_bump: one {"u": r_u, "v": r_v} entry per bump
        max_abs: max |residual| per equation
        trace: quadrature calls that reported a warning
    """
    per_bump: List[Dict[str, float]]
    max_abs: Dict[str, float]
    trace: List[Dict[str, Any]] = field(default_factory=list)

    def passed(self, bound: Optional[float] = None) -> bool:
        bound = resolve(bound, settings.report_tol)
        return all(value <= bound for value in self.max_abs.values())


def _quad(func: Callable[[float], float], a: float, b: float, points: Sequence[float],
          quad_tol: float, trace: List[Dict[str, Any]], label: str) -> float:
    inner = sorted(p for p in points if a < p < b)
    out = integrate.quad(func, a, b, points=inner or None, epsabs=quad_tol, epsrel=0.0,
                         limit=settings.quad_limit, full_output=1)
    value, abserr = out[0], out[1]
    if len(out) > 3:
        entry = {"where": label, "a": a, "b": b, "abserr": abserr, "message": str(out[3])}
        trace.append(entry)
        if abserr > settings.report_tol:
            raise QuadratureError(f"quadrature did not converge on {label}", trace=trace)
    return value


def _fluxes(sol: RiemannSolution, x: float, t: float) -> Tuple[float, float, float, float]:
    """(u, f_u, v, f_v) of the background solution at (x, t)"""
    s = sample(sol, x / t)
    if isinstance(s, DeltaMarker):
        # measure-zero line; the background is read just to the right
        s = sample(sol, math.nextafter(x / t, math.inf))
    p = sol.params
    return (s.u, 0.5 * s.u * s.u + 0.5 * p.eps1 * s.v * s.v, s.v, s.u * s.v - p.eps2 * s.v)


def _wave_rays(sol: RiemannSolution) -> List[float]:
    rays = []
    for wave in sol.waves:
        rays.extend({wave.xi_min, wave.xi_max})
    return rays


def _background_integral(sol: RiemannSolution, bump: BumpTestFn, quad_tol: float,
                         trace: List[Dict[str, Any]]) -> Dict[str, float]:
    rays = _wave_rays(sol)
    t_lo, t_hi = bump.t_range
    result = {}
    for eq in EQUATIONS:
        def inner(t: float, eq: str = eq) -> float:
            x_lo, x_hi = bump.x_range(t)
            if x_hi <= x_lo:
                return 0.0

            def integrand(x: float) -> float:
                q_u, f_u, q_v, f_v = _fluxes(sol, x, t)
                phi_x, phi_t = bump.gradient(x, t)
                if eq == "u":
                    return q_u * phi_t + f_u * phi_x
                return q_v * phi_t + f_v * phi_x

            return _quad(integrand, x_lo, x_hi, [xi * t for xi in rays], quad_tol, trace,
                         f"x-integral eq={eq} t={t}")

        crossings = _ray_crossings(bump, rays)
        result[eq] = _quad(inner, t_lo, t_hi, crossings, quad_tol, trace, f"t-integral eq={eq}")
    return result


def _ray_crossings(bump: BumpTestFn, rays: Sequence[float]) -> List[float]:
    """Times where a ray x = xi t meets the boundary of the bump support"""
    x0, t0 = bump.center
    rx, rt = bump.radii
    times = []
    for xi in rays:
        # ((xi t - x0)/rx)^2 + ((t - t0)/rt)^2 = 1
        a = (xi / rx) ** 2 + (1.0 / rt) ** 2
        b = -2.0 * (xi * x0 / rx ** 2 + t0 / rt ** 2)
        c = (x0 / rx) ** 2 + (t0 / rt) ** 2 - 1.0
        disc = b * b - 4.0 * a * c
        if disc > 0.0:
            root = math.sqrt(disc)
            times.extend(((-b - root) / (2.0 * a), (-b + root) / (2.0 * a)))
    return times


def _delta_line_integral(delta: DeltaShock, eps2: float, bump: BumpTestFn, quad_tol: float,
                         trace: List[Dict[str, Any]]) -> float:
    """Line term of w(t) delta along x = sigma t in the v-equation"""
    crossings = sorted(_ray_crossings(bump, [delta.sigma]))
    if len(crossings) < 2:
        return 0.0
    carried = delta.u_delta - eps2

    def integrand(t: float) -> float:
        phi_x, phi_t = bump.gradient(delta.sigma * t, t)
        return delta.strength_rate * t * (phi_t + carried * phi_x)

    return _quad(integrand, crossings[0], crossings[-1], [], quad_tol, trace, "delta line")


def bump_residual(sol: RiemannSolution, bump: BumpTestFn, quad_tol: Optional[float] = None,
                  trace: Optional[List[Dict[str, Any]]] = None) -> Dict[str, float]:
    """Weak residual of both equations against one bump"""
    quad_tol = resolve(quad_tol, settings.quad_tol)
    trace = [] if trace is None else trace
    residual = _background_integral(sol, bump, quad_tol, trace)
    delta = sol.delta_shock
    if delta is not None:
        # the u-equation carries no concentration
        residual["v"] += _delta_line_integral(delta, sol.params.eps2, bump, quad_tol, trace)
    return residual


def _bump_job(sol: RiemannSolution, bump: BumpTestFn,
              quad_tol: Optional[float]) -> Tuple[Dict[str, float], List[Dict[str, Any]]]:
    trace: List[Dict[str, Any]] = []
    return bump_residual(sol, bump, quad_tol, trace), trace


def weak_residual(sol: RiemannSolution, bumps: Sequence[BumpTestFn],
                  quad_tol: Optional[float] = None, n_jobs: Optional[int] = None) -> ResidualReport:
    """
    Weak-form residuals of a solution over a list of bumps

    Args:
        sol: exact solution; its params select the system
        bumps: test functions
        quad_tol: absolute quadrature tolerance, settings.quad_tol when None
        n_jobs: worker processes, settings.n_jobs when None

    Returns:
        ResidualReport with max |residual| per equation

    Raises:
        QuadratureError: a quadrature call failed, with the refinement trace
    """
    if not bumps:
        raise DomainError("weak_residual needs at least one bump")
    logger.info(f"weak residual over {len(bumps)} bumps ({sol.system.value})")
    results = parallel_map(_bump_job, [(sol, bump, quad_tol) for bump in bumps], n_jobs)
    per_bump = [residual for residual, _ in results]
    max_abs = {eq: max(abs(r[eq]) for r in per_bump) for eq in EQUATIONS}
    return ResidualReport(per_bump=per_bump, max_abs=max_abs,
                          trace=[entry for _, t in results for entry in t])


def perturb_delta(sol: RiemannSolution, d_sigma: float = 0.0, d_u_delta: float = 0.0,
                  d_rate: float = 0.0) -> RiemannSolution:
    """Copy of a delta-shock solution with shifted parameters"""
    delta = sol.delta_shock
    if delta is None:
        raise DomainError("solution has no delta shock to perturb")
    shifted = delta.model_copy(update={
        "sigma": delta.sigma + d_sigma,
        "u_delta": delta.u_delta + d_u_delta,
        "strength_rate": delta.strength_rate + d_rate,
    })
    waves = [shifted if w is delta else w for w in sol.waves]
    return sol.model_copy(update={"waves": waves})
