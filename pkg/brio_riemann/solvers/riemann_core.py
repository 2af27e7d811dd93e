"""
Pointwise kernel of the perturbed Brio system
Eigenvalues, wave curves, shock speeds, jump residuals and entropy checks

Flux: f(u, v) = (u^2/2 + eps1 v^2/2, u v - eps2 v). With eps1 = 0 the
formulas reduce to the one-parameter system, with eps1 = eps2 = 0 to the
transport equations.
"""
import logging
import math
from typing import Optional, Tuple

from brio_riemann.core.config import resolve, settings
from brio_riemann.core.errors import DegenerateJumpError, DomainError
from brio_riemann.models.domain import (
    CharPair,
    CurveKind,
    FluxParams,
    State,
    WaveFamily,
)

logger = logging.getLogger(__name__)


def check_state(s: State, p: FluxParams) -> None:
    """Reject densities outside the half plane of the selected system"""
    if p.eps1 > 0.0 or p.eps2 > 0.0:
        if s.v <= 0.0:
            raise DomainError(f"density must be positive for {p.system.value}, got v={s.v}")
    elif s.v < 0.0:
        raise DomainError(f"density must be nonnegative for transport, got v={s.v}")


def spread(v: float, p: FluxParams) -> float:
    """S = sqrt(eps2^2 + 4 eps1 v^2), the gap lambda2 - lambda1"""
    return math.hypot(p.eps2, 2.0 * math.sqrt(p.eps1) * v)


def char_speeds(u: float, v: float, p: FluxParams) -> Tuple[float, float]:
    s = spread(v, p)
    mid = u - 0.5 * p.eps2
    if p.eps1 == 0.0:
        # exact reduction to (u - eps2, u)
        return (u - p.eps2, u)
    return (mid - 0.5 * s, mid + 0.5 * s)


def eigenvalues(s: State, p: FluxParams) -> CharPair:
    check_state(s, p)
    lam1, lam2 = char_speeds(s.u, s.v, p)
    return CharPair(lambda1=lam1, lambda2=lam2)


def genuine_nonlinearity(s: State, p: FluxParams) -> Tuple[float, float]:
    """
    Genuine-nonlinearity indicators eps1 v (2 -/+ eps2/S)

    The prefactor eps1 v makes both entries vanish for eps1 = 0; the
    eigenvectors are not rescaled.
    """
    if p.eps1 > 0.0 and s.v <= 0.0:
        raise DomainError(f"genuine nonlinearity needs v > 0 when eps1 > 0, got v={s.v}")
    if p.eps1 == 0.0:
        return (0.0, 0.0)
    ratio = p.eps2 / spread(s.v, p)
    pre = p.eps1 * s.v
    return (pre * (2.0 - ratio), pre * (2.0 + ratio))


# Rarefaction potentials


def potential_from_log(fam: WaveFamily, log_v: float, p: FluxParams) -> float:
    """Rarefaction potential evaluated from ln v

    Works past the underflow of v itself, where S collapses to eps2.
    """
    if p.eps1 == 0.0:
        if fam is WaveFamily.BACK or p.eps2 == 0.0:
            return 0.0
        return p.eps2 * log_v
    v = math.exp(log_v)
    s = spread(v, p)
    sign = -1.0 if fam is WaveFamily.BACK else 1.0
    if p.eps2 == 0.0:
        # eps2 ln(...) vanishes, also at v = 0 where the log is undefined
        return 0.5 * sign * s
    if fam is WaveFamily.BACK:
        return 0.5 * (-s + p.eps2 * math.log(s + p.eps2))
    # ln(S - eps2) = ln(4 eps1) + 2 ln v - ln(S + eps2)
    log_gap = math.log(4.0 * p.eps1) + 2.0 * log_v - math.log(s + p.eps2)
    return 0.5 * (s + p.eps2 * log_gap)


def rarefaction_potential(fam: WaveFamily, v: float, p: FluxParams) -> float:
    """
    Potential Phi of the rarefaction curves, u - Phi(v) constant along each

    Args:
        fam: WaveFamily.BACK for Phi1, WaveFamily.FORWARD for Phi2
        v: density, strictly positive
        p: flux parameters

    Returns:
        Phi1 = (-S + eps2 ln(S + eps2))/2 or Phi2 = (S + eps2 ln(S - eps2))/2
    """
    if not v > 0.0:
        raise DomainError(f"rarefaction potential needs v > 0, got v={v}")
    return potential_from_log(WaveFamily(fam), math.log(v), p)


# Shock curves


def shock_slope(fam: WaveFamily, v_bar: float, p: FluxParams, printed: bool = False) -> float:
    """
    Slope (u - u_left)/(v - v_left) along a shock curve

    Root of v_bar r^2 - eps2 r - eps1 v_bar = 0 with v_bar the mean density,
    minus branch for family 1. printed=True evaluates the alternative
    normalization with 4 eps1 (v + v_left)^2 under the root over (v + v_left).
    """
    sign = -1.0 if WaveFamily(fam) is WaveFamily.BACK else 1.0
    if printed:
        total = 2.0 * v_bar
        return (p.eps2 + sign * math.hypot(p.eps2, 2.0 * math.sqrt(p.eps1) * total)) / total
    if p.eps1 == 0.0:
        return 0.0 if sign < 0.0 else p.eps2 / v_bar
    root = math.hypot(p.eps2, 2.0 * math.sqrt(p.eps1) * v_bar)
    if sign < 0.0:
        # rationalized form of (eps2 - root)/(2 v_bar)
        return -2.0 * p.eps1 * v_bar / (p.eps2 + root)
    return (p.eps2 + root) / (2.0 * v_bar)


def _admissible(kind: CurveKind, left: State, v: float) -> bool:
    if v == left.v:
        return True
    if kind in (CurveKind.R1, CurveKind.S2):
        return 0.0 < v < left.v
    return v > left.v


def curve_u(kind: CurveKind, left: State, v: float, p: FluxParams, printed: bool = False) -> float:
    """
    Velocity at density v on the elementary wave curve of kind through left

    Args:
        kind: R1 (0 < v < v_left), R2 (v > v_left), S1 (v > v_left) or
            S2 (0 < v < v_left); v = v_left returns u_left
        left: state the curve starts from
        v: target density
        p: flux parameters
        printed: shock curves only, use the alternative slope normalization

    Returns:
        u on the curve

    Raises:
        DomainError: v outside the admissible branch or v <= 0
    """
    kind = CurveKind(kind)
    if not v > 0.0:
        raise DomainError(f"{kind.value} curve needs v > 0, got v={v}")
    check_state(left, p)
    if not _admissible(kind, left, v):
        raise DomainError(f"v={v} is outside the {kind.value} branch through v_left={left.v}")
    if v == left.v:
        return left.u
    if kind.is_rarefaction:
        fam = kind.family
        return left.u + rarefaction_potential(fam, v, p) - rarefaction_potential(fam, left.v, p)
    v_bar = 0.5 * (v + left.v)
    return left.u + (v - left.v) * shock_slope(kind.family, v_bar, p, printed=printed)


def curve_limit_u(kind: CurveKind, left: State, p: FluxParams, printed: bool = False) -> float:
    """Endpoint u of the R1 or S2 curve as v -> 0+

    R1 accepts eps2 = 0 with eps2 ln eps2 read as its limit 0.
    """
    kind = CurveKind(kind)
    if p.eps1 <= 0.0:
        raise DomainError(f"{kind.value} endpoint limit needs eps1 > 0")
    check_state(left, p)
    if kind is CurveKind.R1:
        c1 = left.u - rarefaction_potential(WaveFamily.BACK, left.v, p)
        tail = 0.0 if p.eps2 == 0.0 else p.eps2 * math.log(2.0 * p.eps2)
        return 0.5 * (-p.eps2 + tail) + c1
    if kind is CurveKind.S2:
        scale = 4.0 if printed else 1.0
        return left.u - (p.eps2 + math.sqrt(p.eps2 ** 2 + scale * p.eps1 * left.v ** 2))
    raise DomainError(f"endpoint limit is defined for R1 and S2 only, got {kind.value}")


# Jump conditions


def shock_speed(fam: WaveFamily, left: State, right: State, p: FluxParams) -> float:
    """Shock speed from the v-equation jump condition

    Family 1 is evaluated with the right density as weight, family 2 with the
    left one; both equal [uv - eps2 v]/[v].
    """
    dv = right.v - left.v
    if dv == 0.0:
        raise DegenerateJumpError(f"shock speed undefined for equal densities v={left.v}")
    du = right.u - left.u
    if WaveFamily(fam) is WaveFamily.BACK:
        return left.u + right.v * du / dv - p.eps2
    return right.u + left.v * du / dv - p.eps2


def rh_residual(left: State, right: State, sigma: float, p: FluxParams) -> Tuple[float, float]:
    """Rankine-Hugoniot residuals sigma [q] - [f] of both equations"""
    du = right.u - left.u
    dv = right.v - left.v
    f_u = 0.5 * (right.u ** 2 - left.u ** 2) + 0.5 * p.eps1 * (right.v ** 2 - left.v ** 2)
    f_v = (right.u * right.v - left.u * left.v) - p.eps2 * dv
    return (sigma * du - f_u, sigma * dv - f_v)


def lax_check(fam: WaveFamily, left: State, right: State, sigma: float, p: FluxParams,
              tie_tol: Optional[float] = None) -> bool:
    """Lax entropy inequalities, ties within tie_tol accepted"""
    tie = resolve(tie_tol, settings.tie_tol)
    l1_left, l2_left = char_speeds(left.u, left.v, p)
    l1_right, l2_right = char_speeds(right.u, right.v, p)

    def below(a: float, b: float) -> bool:
        return a < b + tie

    if WaveFamily(fam) is WaveFamily.BACK:
        return below(sigma, l1_left) and below(l1_right, sigma) and below(sigma, l2_right)
    return below(l1_left, sigma) and below(sigma, l2_left) and below(l2_right, sigma)
