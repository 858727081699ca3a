"""
Whole-block FFT operations on DualPolSignal.

Signals are single contiguous blocks treated as one period of a cyclic
waveform, so every filter here is a circular (overlap-free) FFT filter.
"""

import logging
from typing import Tuple

import numpy as np
from scipy import fft as sfft
from scipy import signal as ssignal

from src.errors import AliasingError, ParameterError
from src.sigkit.signal import DualPolSignal

logger = logging.getLogger('splitnlc.sigkit')

# Power fraction defining the occupied band used by all aliasing checks.
OCCUPIED_FRACTION = 0.999


def frequency_grid(signal: DualPolSignal) -> np.ndarray:
    """FFT-ordered baseband frequencies in Hz."""
    return sfft.fftfreq(signal.n_samples, d=1.0 / signal.sample_rate)


def fft_filter(signal: DualPolSignal, response: np.ndarray) -> DualPolSignal:
    """
    Apply an FFT-ordered frequency response to both polarizations.

    Args:
        signal: Input waveform
        response: Complex response, one value per FFT bin

    Returns:
        Filtered waveform
    """
    response = np.asarray(response)
    if response.shape != (signal.n_samples,):
        raise ParameterError(
            f"response needs {signal.n_samples} bins, got shape {response.shape}"
        )
    spectrum = sfft.fft(signal.samples, axis=-1)
    return signal.with_samples(sfft.ifft(spectrum * response, axis=-1))


def bandlimit(signal: DualPolSignal, low: float, high: float) -> DualPolSignal:
    """Ideal brick-wall filter keeping baseband frequencies in [low, high]."""
    if high < low:
        raise ParameterError(f"empty band [{low}, {high}]")
    freqs = frequency_grid(signal)
    mask = (freqs >= low) & (freqs <= high)
    return fft_filter(signal, mask.astype(float))


def occupied_band(
    signal: DualPolSignal, fraction: float = OCCUPIED_FRACTION
) -> Tuple[float, float]:
    """
    Frequency edges of the band holding `fraction` of the signal power.

    The band is cut symmetrically in power: (1 - fraction)/2 of the power lies
    below the lower edge and the same amount above the upper edge.

    Returns:
        (low, high) edges in Hz
    """
    if not 0 < fraction <= 1:
        raise ParameterError(f"fraction must be in (0, 1], got {fraction}")
    spectrum = sfft.fftshift(np.sum(np.abs(sfft.fft(signal.samples, axis=-1)) ** 2, axis=0))
    freqs = sfft.fftshift(frequency_grid(signal))
    total = spectrum.sum()
    if total == 0:
        return 0.0, 0.0
    cumulative = np.cumsum(spectrum) / total
    tail = (1.0 - fraction) / 2.0
    low_index = int(np.searchsorted(cumulative, tail, side="right"))
    high_index = int(np.searchsorted(cumulative, 1.0 - tail, side="left"))
    high_index = min(high_index, freqs.size - 1)
    return float(freqs[low_index]), float(freqs[high_index])


def occupied_bandwidth(signal: DualPolSignal, fraction: float = OCCUPIED_FRACTION) -> float:
    """Width in Hz of the band holding `fraction` of the power."""
    low, high = occupied_band(signal, fraction)
    return high - low


def frequency_shift(
    signal: DualPolSignal,
    delta_f: float,
    *,
    allow_wrap: bool = False,
    snap_to_bin: bool = False,
) -> DualPolSignal:
    """
    Shift a waveform in frequency by complex mixing.

    Args:
        signal: Input waveform
        delta_f: Shift in Hz
        allow_wrap: Skip the Nyquist check (receiver down-conversion, where
            wrapped content is filtered out afterwards)
        snap_to_bin: Round delta_f to a whole number of FFT bins so the mixer
            is periodic over the block and leaks nothing into other bins

    Returns:
        Shifted waveform with center_offset increased by delta_f

    Raises:
        AliasingError: If the shifted occupied band crosses +/- sample_rate/2
    """
    if snap_to_bin:
        bin_width = signal.sample_rate / signal.n_samples
        delta_f = round(delta_f / bin_width) * bin_width
    if delta_f == 0:
        return signal

    nyquist = signal.sample_rate / 2.0
    if not allow_wrap:
        low, high = occupied_band(signal)
        if high + delta_f >= nyquist or low + delta_f <= -nyquist:
            raise AliasingError(
                "frequency shift pushes the spectrum past Nyquist",
                {"delta_f": delta_f, "band": (low, high), "sample_rate": signal.sample_rate},
            )

    n = np.arange(signal.n_samples)
    mixer = np.exp(2j * np.pi * delta_f * n / signal.sample_rate)
    return signal.with_samples(
        signal.samples * mixer, center_offset=signal.center_offset + delta_f
    )


def resample(signal: DualPolSignal, new_rate: float) -> DualPolSignal:
    """
    Band-limited resampling by FFT zero-padding or truncation.

    The new block length n * new_rate / sample_rate must be an integer, i.e.
    the block must hold a whole number of samples at both rates.

    Args:
        signal: Input waveform
        new_rate: Target sample rate in Hz

    Returns:
        Resampled waveform with the same mean power

    Raises:
        AliasingError: If the occupied band does not fit inside +/- new_rate/2
        ParameterError: If the rate ratio does not give an integer length
    """
    if new_rate <= 0:
        raise ParameterError(f"new_rate must be positive, got {new_rate}")
    if new_rate == signal.sample_rate:
        return signal

    exact_length = signal.n_samples * new_rate / signal.sample_rate
    new_length = int(round(exact_length))
    if new_length < 1 or abs(exact_length - new_length) > 1e-6 * max(exact_length, 1.0):
        raise ParameterError(
            f"rate ratio {new_rate}/{signal.sample_rate} does not map "
            f"{signal.n_samples} samples onto an integer length"
        )

    if new_rate < signal.sample_rate:
        low, high = occupied_band(signal)
        if max(abs(low), abs(high)) > new_rate / 2.0:
            raise AliasingError(
                "new rate is below the occupied bandwidth",
                {"new_rate": new_rate, "band": (low, high)},
            )

    resampled = ssignal.resample(signal.samples, new_length, axis=-1)
    logger.debug(
        f"resampled {signal.n_samples} -> {new_length} samples "
        f"({signal.sample_rate:.4g} -> {new_rate:.4g} Hz)"
    )
    return DualPolSignal(resampled[0], resampled[1], new_rate, signal.center_offset)
