"""
Error hierarchy for brio-riemann
"""
from typing import Any, Dict, List, Optional


class BrioError(Exception):
    """Base class for every error raised by the package"""


class DomainError(BrioError, ValueError):
    """Input outside the domain of the requested operation"""


class DegenerateJumpError(DomainError):
    """Shock speed requested across equal densities"""


class UnsupportedCaseError(DomainError):
    """Data for which the requested construction is not defined"""


class DomainTooSmallError(DomainError):
    """A finite-volume wave reached the computational boundary"""


class SolverError(BrioError, RuntimeError):
    """Numerical failure with diagnostics attached"""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics: Dict[str, Any] = dict(diagnostics or {})

    def with_context(self, **context: Any) -> "SolverError":
        """Attach extra diagnostics and return self for re-raising"""
        self.diagnostics.update(context)
        return self

    def __str__(self) -> str:
        base = super().__str__()
        if not self.diagnostics:
            return base
        details = ", ".join(f"{k}={v!r}" for k, v in sorted(self.diagnostics.items()))
        return f"{base} ({details})"


class BracketError(SolverError):
    """No sign change found while expanding a root bracket"""


class ConvergenceError(SolverError):
    """Iteration cap reached before the tolerance"""


class QuadratureError(SolverError):
    """Adaptive quadrature did not converge"""

    def __init__(self, message: str, trace: Optional[List[Dict[str, Any]]] = None,
                 diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message, diagnostics)
        self.trace: List[Dict[str, Any]] = list(trace or [])
