"""Exception types raised by the package."""

from __future__ import annotations

from typing import Any


class GaussianStateError(Exception):
    """Base class for all errors raised by ``sofeof``."""


class NonPositiveDefinite(GaussianStateError):
    pass


class WrongModeCount(GaussianStateError):
    pass


class IndexOutOfRange(GaussianStateError):
    pass


class ParamOutOfRange(GaussianStateError):
    pass


class DimensionMismatch(GaussianStateError):
    pass


class NotSymplectic(GaussianStateError):
    pass


class NotPure(GaussianStateError):
    pass


class NotPassive(GaussianStateError):
    pass


class DomainError(GaussianStateError):
    pass


class InvalidParams(GaussianStateError):
    pass


class EmptyWindow(GaussianStateError):
    pass


class InvalidState(GaussianStateError):
    """A loaded matrix violates a covariance-matrix invariant."""

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        msg = f"state violates invariant '{invariant}'"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class OptimizerFailed(GaussianStateError):
    """An optimizer found no acceptable point."""

    def __init__(self, message: str, diagnostics: dict[str, Any] | None = None):
        self.diagnostics = dict(diagnostics or {})
        super().__init__(message)


class DccFailed(GaussianStateError):
    """No single-mode rotation removes the x-p cross correlations."""

    def __init__(self, residual: float):
        self.residual = residual
        super().__init__(f"de-cross-correlation residual {residual:.3e} above tolerance")


class ConjectureGap(GaussianStateError):
    """The EOF-maximizing pipeline missed the saturation contract."""

    def __init__(self, report: dict[str, Any], sigma_out=None, trace=None):
        self.report = report
        self.sigma_out = sigma_out
        self.trace = trace
        super().__init__(
            "saturation contract violated: "
            + ", ".join(f"{k}={v:.3e}" for k, v in report.items() if isinstance(v, float))
        )
