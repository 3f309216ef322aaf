"""Exception hierarchy and the global residual threshold."""

from __future__ import annotations

import os

TOLERANCE_ENV = "RICCATI_FORGE_SEED_TOL"
DEFAULT_RESIDUAL_TOL = 1e-5


def residual_threshold() -> float:
    """Residual threshold for transform reports, overridable from the environment."""
    raw = os.environ.get(TOLERANCE_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_RESIDUAL_TOL
    value = float(raw)
    if not value > 0:
        raise ValueError(f"{TOLERANCE_ENV} must be positive, got {raw!r}")
    return value


class RiccatiForgeError(Exception):
    pass


class DomainError(RiccatiForgeError, ValueError):
    pass


class ArgumentError(RiccatiForgeError, ValueError):
    pass


class DegenerateInput(RiccatiForgeError, ValueError):
    pass


class OrderError(RiccatiForgeError, ValueError):
    pass


class EnergyOrderError(OrderError):
    pass


class InvalidSolution(RiccatiForgeError, ValueError):
    pass


class GaugeError(RiccatiForgeError, ValueError):
    pass


class NotGroundState(RiccatiForgeError, ValueError):
    pass


class ParameterError(RiccatiForgeError, ValueError):
    pass


class NotNormalizable(ParameterError):
    pass


class ConvergenceError(RiccatiForgeError, ArithmeticError):
    """Adaptive quadrature ran out of depth; keeps the best estimate."""

    def __init__(self, message: str, estimate: float, error: float):
        super().__init__(f"{message} (estimate={estimate!r}, error={error!r})")
        self.estimate = estimate
        self.error = error


class ResidualError(RiccatiForgeError, ArithmeticError):
    """A constructed solution missed its target equation."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report
