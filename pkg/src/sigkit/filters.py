"""
Root-raised-cosine pulse shaping and matched filtering.

Waveforms are shaped and matched with the exact RRC response over the whole
block; rrc_taps gives a finite-span FIR design of the same filter.
"""

from dataclasses import dataclass

import numpy as np
from scipy import fft as sfft

from src.errors import ParameterError
from src.sigkit.signal import DualPolSignal
from src.sigkit.spectral import fft_filter

# Gaussian window sigma of rrc_taps is span_symbols / this.
_SPAN_PER_WINDOW_SIGMA = 10.0


@dataclass(frozen=True)
class RrcSpec:
    """
    Root-raised-cosine filter description.

    Attributes:
        roll_off: Excess bandwidth factor in [0, 1]
        span_symbols: Filter length in symbols
        samples_per_symbol: Oversampling factor (>= 2)
    """

    roll_off: float
    span_symbols: int = 128
    samples_per_symbol: int = 2

    def __post_init__(self):
        if not 0.0 <= self.roll_off <= 1.0:
            raise ParameterError(f"roll_off must be in [0, 1], got {self.roll_off}")
        if self.span_symbols < 8:
            raise ParameterError(f"span_symbols must be >= 8, got {self.span_symbols}")
        if self.samples_per_symbol < 2:
            raise ParameterError(
                f"samples_per_symbol must be >= 2, got {self.samples_per_symbol}"
            )

    @property
    def n_taps(self) -> int:
        return 2 * (self.span_symbols * self.samples_per_symbol // 2) + 1

    def bandwidth(self, symbol_rate: float) -> float:
        """Two-sided bandwidth (1 + roll_off) * symbol_rate in Hz."""
        return (1.0 + self.roll_off) * symbol_rate

def raised_cosine_spectrum(normalized_frequency: np.ndarray, roll_off: float) -> np.ndarray:
    """
    Raised-cosine power response at frequencies given in units of the symbol rate.

    Folded copies spaced by one symbol rate sum to exactly 1, which is the
    Nyquist condition of the matched RRC pair.
    """
    nu = np.abs(np.asarray(normalized_frequency, dtype=float))
    low, high = (1.0 - roll_off) / 2.0, (1.0 + roll_off) / 2.0
    spectrum = np.where(nu <= low, 1.0, 0.0)
    if roll_off > 0:
        ramp = (nu > low) & (nu < high)
        spectrum[ramp] = 0.5 * (1.0 + np.cos(np.pi / roll_off * (nu[ramp] - low)))
    else:
        spectrum[np.isclose(nu, 0.5)] = 0.5
    return spectrum


def _raised_cosine_pulse(t: np.ndarray, roll_off: float) -> np.ndarray:
    """Raised-cosine impulse response at times t in symbol periods (peak 1 at t = 0)."""
    pulse = np.sinc(t)
    if roll_off == 0:
        return pulse
    denominator = 1.0 - (2.0 * roll_off * t) ** 2
    pole = np.isclose(denominator, 0.0)
    safe = np.where(pole, 1.0, denominator)
    return np.where(
        pole,
        np.pi / 4.0 * np.sinc(1.0 / (2.0 * roll_off)),
        pulse * np.cos(np.pi * roll_off * t) / safe,
    )


def rrc_taps(spec: RrcSpec) -> np.ndarray:
    """
    Unit-energy root-raised-cosine FIR filter of span_symbols symbols.

    A bare truncated RRC leaves a slowly decaying tail at small roll-off, so
    the taps are the spectral square root of a raised cosine multiplied by a
    Gaussian window whose width is a fixed fraction of the span. The window
    keeps the symbol-spaced zeros of the cascade, widens the transition band
    by about 1 / span_symbols and lets the square root decay well inside the
    span.

    Args:
        spec: Filter description

    Returns:
        Odd-length symmetric real taps, peak at the center tap
    """
    sps = spec.samples_per_symbol
    half = spec.n_taps // 2
    n_fft = sfft.next_fast_len(8 * spec.n_taps)
    t = sfft.fftfreq(n_fft, d=1.0 / n_fft) / sps
    sigma = spec.span_symbols / _SPAN_PER_WINDOW_SIGMA
    cascade = _raised_cosine_pulse(t, spec.roll_off) * np.exp(-0.5 * (t / sigma) ** 2)

    power_response = np.clip(sfft.fft(cascade).real, 0.0, None)
    impulse = sfft.ifft(np.sqrt(power_response)).real
    taps = np.concatenate([impulse[-half:], impulse[: half + 1]])
    taps = 0.5 * (taps + taps[::-1])
    return taps / np.sqrt(np.sum(taps ** 2))


def rrc_response(spec: RrcSpec, n_samples: int) -> np.ndarray:
    """
    Exact RRC response over a whole n-sample block at spec.samples_per_symbol.

    The response is the square root of the raised-cosine spectrum sampled on
    the FFT grid, scaled to a unit-energy impulse response. For blocks holding
    a whole number of symbols the matched pair is exactly Nyquist and nothing
    leaks past (1 + roll_off) * symbol_rate / 2.

    Returns:
        Real FFT-ordered response, one value per bin
    """
    if n_samples % spec.samples_per_symbol:
        raise ParameterError(
            f"{n_samples} samples do not hold whole symbols at "
            f"{spec.samples_per_symbol} samples per symbol"
        )
    nu = sfft.fftfreq(n_samples) * spec.samples_per_symbol
    return np.sqrt(spec.samples_per_symbol * raised_cosine_spectrum(nu, spec.roll_off))


def pulse_shape(symbols: np.ndarray, spec: RrcSpec, symbol_rate: float) -> DualPolSignal:
    """
    Shape (2, n) symbols with the block RRC response at spec.samples_per_symbol.

    Returns:
        Waveform at samples_per_symbol * symbol_rate, symbol k centered on
        sample k * samples_per_symbol
    """
    symbols = np.asarray(symbols, dtype=np.complex128)
    sps = spec.samples_per_symbol
    upsampled = np.zeros((2, symbols.shape[-1] * sps), dtype=np.complex128)
    upsampled[:, ::sps] = symbols
    signal = DualPolSignal.from_array(upsampled, sps * symbol_rate)
    return fft_filter(signal, rrc_response(spec, signal.n_samples))


def matched_filter(signal: DualPolSignal, spec: RrcSpec) -> DualPolSignal:
    """Apply the (real, even) RRC matched filter over the whole block."""
    return fft_filter(signal, rrc_response(spec, signal.n_samples))
