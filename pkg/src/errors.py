"""
Exception hierarchy for the split-NLC lab.

Every error raised by the library derives from SplitNlcError and carries the
process exit code the CLI reports for it:

- ConfigError (2): invalid parameters, plans, grids and config files
- NumericalError (3): aliasing, undefined scaling, unbounded optima
- SyncError / CalibrationError (4): receiver or calibration failures
"""

from typing import Any, Dict, Optional


class SplitNlcError(Exception):
    """Base class for all lab errors."""

    exit_code = 1

    def __init__(self, message: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.context: Dict[str, Any] = dict(context or {})

    def __str__(self) -> str:
        message = super().__str__()
        if not self.context:
            return message
        details = ", ".join(f"{key}={value}" for key, value in sorted(self.context.items()))
        return f"{message} ({details})"


class ConfigError(SplitNlcError, ValueError):
    """Invalid configuration file or experiment description."""

    exit_code = 2


class ParameterError(ConfigError):
    """A parameter is outside its allowed domain."""


class PlanError(ParameterError):
    """Split plan inconsistent with the link (k outside 0..N)."""


class GridError(ParameterError):
    """WDM grid does not fit the simulation band or channels overlap."""


class NumericalError(SplitNlcError, ArithmeticError):
    """Numerical precondition violated."""

    exit_code = 3


class AliasingError(NumericalError):
    """Signal content would fold across the Nyquist band."""


class UndefinedScalingError(NumericalError):
    """Power normalization requested for an all-zero signal."""


class UnboundedPowerError(NumericalError):
    """Budget has no nonlinear term, so no finite optimum power exists."""


class SyncError(SplitNlcError, RuntimeError):
    """Frame synchronization failed (correlation peak below threshold)."""

    exit_code = 4


class CalibrationError(SplitNlcError, RuntimeError):
    """Calibration could not reach its target."""

    exit_code = 4


class CalibrationRequiredError(CalibrationError):
    """Analytic budget evaluated without calibrated coefficients."""


class StatisticalAccuracyWarning(UserWarning):
    """Estimate computed from too few symbols for 0.05 dB accuracy."""


__all__ = [
    "SplitNlcError",
    "ConfigError",
    "ParameterError",
    "PlanError",
    "GridError",
    "NumericalError",
    "AliasingError",
    "UndefinedScalingError",
    "UnboundedPowerError",
    "SyncError",
    "CalibrationError",
    "CalibrationRequiredError",
    "StatisticalAccuracyWarning",
]
