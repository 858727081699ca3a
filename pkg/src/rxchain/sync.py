"""
Preamble-based frame synchronization.

The known preamble is correlated circularly against both sample phases of
the 2-samples-per-symbol stream and against both polarization assignments.
The normalized metric

    rho[k] = (|c_x[k]| + |c_y[k]|) / (sqrt(E_px * E_rx[k]) + sqrt(E_py * E_ry[k]))

lies in [0, 1] and is insensitive to a common phase and to scaling.
"""

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import fft as sfft

from src.errors import ParameterError, SyncError
from src.sigkit import DualPolSignal, as_array
from src.txchain import SHAPING_SAMPLES_PER_SYMBOL, TxFrame

logger = logging.getLogger('splitnlc.rxchain')

DEFAULT_SYNC_THRESHOLD = 0.5


@dataclass(frozen=True, eq=False)
class SyncResult:
    """
    Attributes:
        sync_index: Sample offset (at 2 samples/symbol) of the frame start
        symbols: (2, n_symbols) symbol-spaced stream aligned to the frame
        swapped: True if the received polarizations were exchanged
        peak: Normalized correlation peak in [0, 1]
    """

    sync_index: int
    symbols: np.ndarray
    swapped: bool
    peak: float


def _window_energy(power: np.ndarray, length: int) -> np.ndarray:
    """Circular sliding sum of `length` samples starting at every index."""
    extended = np.concatenate([power, power[:length]])
    cumulative = np.concatenate([[0.0], np.cumsum(extended)])
    return cumulative[length: length + power.size] - cumulative[: power.size]


def _correlate(received: np.ndarray, known: np.ndarray) -> np.ndarray:
    """Circular cross-correlation sum_n r[n + k] * conj(p[n])."""
    padded = np.zeros(received.size, dtype=np.complex128)
    padded[: known.size] = known
    return sfft.ifft(sfft.fft(received) * np.conj(sfft.fft(padded)))


def synchronize(
    samples: Union[DualPolSignal, np.ndarray],
    frame: TxFrame,
    threshold: float = DEFAULT_SYNC_THRESHOLD,
) -> SyncResult:
    """
    Locate the preamble and return the symbol stream aligned to the frame.

    Args:
        samples: Matched-filter output at 2 samples per symbol, one frame long
        frame: Transmitted frame (its preamble is the correlation template)
        threshold: Minimum normalized correlation peak

    Returns:
        SyncResult

    Raises:
        ParameterError: If the stream is not exactly one frame long
        SyncError: If the correlation peak is below `threshold`
    """
    stream = as_array(samples)
    sps = SHAPING_SAMPLES_PER_SYMBOL
    if stream.shape != (2, sps * frame.n_symbols):
        raise ParameterError(
            f"expected (2, {sps * frame.n_symbols}) samples, got {stream.shape}"
        )

    preamble = frame.preamble
    length = preamble.shape[1]
    preamble_energy = np.sum(np.abs(preamble) ** 2, axis=1)

    best = (-1.0, 0, 0, False)
    for phase in range(sps):
        decimated = stream[:, phase::sps]
        energy = [_window_energy(np.abs(pol) ** 2, length) for pol in decimated]
        for swapped in (False, True):
            order = (1, 0) if swapped else (0, 1)
            numerator = sum(
                np.abs(_correlate(decimated[order[pol]], preamble[pol])) for pol in range(2)
            )
            denominator = sum(
                np.sqrt(preamble_energy[pol] * energy[order[pol]]) for pol in range(2)
            )
            metric = np.divide(
                numerator, denominator, out=np.zeros_like(numerator), where=denominator > 0
            )
            lag = int(np.argmax(metric))
            if metric[lag] > best[0]:
                best = (float(metric[lag]), lag, phase, swapped)

    peak, lag, phase, swapped = best
    if peak < threshold:
        raise SyncError(
            "preamble correlation below threshold",
            {"peak": round(peak, 4), "threshold": threshold},
        )

    aligned = np.roll(stream[:, phase::sps], -lag, axis=1)
    if swapped:
        aligned = aligned[::-1]
    sync_index = sps * lag + phase
    logger.debug(f"sync at sample {sync_index} (peak {peak:.3f}, swapped={swapped})")
    return SyncResult(sync_index, np.ascontiguousarray(aligned), swapped, peak)


__all__ = ["synchronize", "SyncResult", "DEFAULT_SYNC_THRESHOLD"]
