"""
Dual-polarization baseband waveform and power accounting.

Amplitudes use the sqrt-watt convention: |x|^2 + |y|^2 is the instantaneous
optical power in watts, so nonlinear phases and launch powers need no extra
scaling factors.
"""

from dataclasses import dataclass, replace
from typing import Any, Union

import numpy as np

from src.errors import NumericalError, ParameterError, UndefinedScalingError


def dbm_to_watt(power_dbm: float) -> float:
    """Convert dBm to watts."""
    return float(10.0 ** ((power_dbm - 30.0) / 10.0))


def watt_to_dbm(power_w: float) -> float:
    """Convert watts to dBm (-inf for zero power)."""
    if power_w <= 0:
        return float("-inf")
    return float(10.0 * np.log10(power_w) + 30.0)


def _frozen_samples(values: Any, name: str) -> np.ndarray:
    samples = np.array(values, dtype=np.complex128, copy=True)
    if samples.ndim != 1:
        raise ParameterError(f"{name} must be one-dimensional, got shape {samples.shape}")
    samples.setflags(write=False)
    return samples


@dataclass(frozen=True)
class DualPolSignal:
    """
    Sampled dual-polarization complex baseband waveform.

    Attributes:
        samples_x: X-polarization amplitudes in sqrt(W)
        samples_y: Y-polarization amplitudes in sqrt(W), same length as samples_x
        sample_rate: Sample rate in Hz
        center_offset: Frequency in Hz of the waveform's nominal center relative to
            the optical carrier the digital 0 Hz bin represents
    """

    samples_x: np.ndarray
    samples_y: np.ndarray
    sample_rate: float
    center_offset: float = 0.0

    def __post_init__(self):
        x = _frozen_samples(self.samples_x, "samples_x")
        y = _frozen_samples(self.samples_y, "samples_y")
        if x.size == 0:
            raise ParameterError("signal must contain at least one sample")
        if x.shape != y.shape:
            raise ParameterError(
                f"polarization lengths differ: {x.size} vs {y.size}"
            )
        if not (np.isfinite(x).all() and np.isfinite(y).all()):
            raise NumericalError("signal contains non-finite samples")
        if not self.sample_rate > 0:
            raise ParameterError(f"sample_rate must be positive, got {self.sample_rate}")

        object.__setattr__(self, "samples_x", x)
        object.__setattr__(self, "samples_y", y)
        object.__setattr__(self, "sample_rate", float(self.sample_rate))
        object.__setattr__(self, "center_offset", float(self.center_offset))

    @classmethod
    def from_array(
        cls, samples: np.ndarray, sample_rate: float, center_offset: float = 0.0
    ) -> "DualPolSignal":
        """Build a signal from a (2, n) array of X/Y samples."""
        samples = np.asarray(samples)
        if samples.ndim != 2 or samples.shape[0] != 2:
            raise ParameterError(f"expected a (2, n) array, got shape {samples.shape}")
        return cls(samples[0], samples[1], sample_rate, center_offset)

    @property
    def n_samples(self) -> int:
        return int(self.samples_x.size)

    @property
    def samples(self) -> np.ndarray:
        """Stacked (2, n) copy of both polarizations."""
        return np.stack([self.samples_x, self.samples_y])

    @property
    def duration(self) -> float:
        """Block duration in seconds."""
        return self.n_samples / self.sample_rate

    @property
    def mean_power(self) -> float:
        """Mean total power mean(|x|^2 + |y|^2) in watts."""
        power = np.abs(self.samples_x) ** 2 + np.abs(self.samples_y) ** 2
        return float(np.mean(power))

    @property
    def power_dbm(self) -> float:
        return watt_to_dbm(self.mean_power)

    def with_samples(self, samples: np.ndarray, **changes: Any) -> "DualPolSignal":
        """Return a copy carrying new (2, n) samples and optional field changes."""
        samples = np.asarray(samples)
        return replace(self, samples_x=samples[0], samples_y=samples[1], **changes)


SignalLike = Union[DualPolSignal, np.ndarray]


def as_array(signal: SignalLike) -> np.ndarray:
    """Samples of a signal, or the array itself, as a complex ndarray."""
    if isinstance(signal, DualPolSignal):
        return signal.samples
    return np.asarray(signal, dtype=np.complex128)


def set_mean_power(signal: DualPolSignal, power_dbm: float) -> DualPolSignal:
    """
    Scale a signal to a target mean power.

    Args:
        signal: Input waveform
        power_dbm: Target mean(|x|^2 + |y|^2) in dBm

    Returns:
        Scaled copy of the waveform

    Raises:
        UndefinedScalingError: If the signal has zero power
    """
    current = signal.mean_power
    if current <= 0:
        raise UndefinedScalingError("cannot set the power of an all-zero signal")
    scale = np.sqrt(dbm_to_watt(power_dbm) / current)
    return signal.with_samples(signal.samples * scale)


def nmse_db(reference: SignalLike, estimate: SignalLike) -> float:
    """
    Normalized mean-square error of an estimate against a reference.

    Returns:
        10*log10(sum|estimate - reference|^2 / sum|reference|^2), -inf when exact
    """
    ref = as_array(reference)
    est = as_array(estimate)
    if ref.shape != est.shape:
        raise ParameterError(f"shape mismatch: {ref.shape} vs {est.shape}")
    error = float(np.sum(np.abs(est - ref) ** 2))
    energy = float(np.sum(np.abs(ref) ** 2))
    if energy == 0:
        raise UndefinedScalingError("reference has zero energy")
    if error == 0:
        return float("-inf")
    return float(10.0 * np.log10(error / energy))


def papr_db(signal: SignalLike) -> float:
    """Peak-to-average power ratio of the total (X+Y) power in dB."""
    power = np.sum(np.abs(as_array(signal)) ** 2, axis=0)
    mean = float(np.mean(power))
    if mean == 0:
        raise UndefinedScalingError("PAPR of an all-zero signal is undefined")
    return float(10.0 * np.log10(np.max(power) / mean))
