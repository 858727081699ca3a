"""
Pilot-aided carrier phase estimation.

Pilot phases are unwrapped, a linear trend (residual frequency offset) is
fitted and removed, the remainder is averaged over +/- half_window pilots with
triangular weights and interpolated linearly to every symbol.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import convolve1d

from src.errors import ParameterError
from src.txchain import TxFrame

logger = logging.getLogger('splitnlc.rxchain')

DEFAULT_HALF_WINDOW = 6


@dataclass(frozen=True, eq=False)
class CpeResult:
    """
    Attributes:
        symbols: (2, n) derotated symbols
        phase: (2, n) removed phase in rad
        frequency_offset_rad_per_symbol: Slope of the unwrapped pilot phase
    """

    symbols: np.ndarray
    phase: np.ndarray
    frequency_offset_rad_per_symbol: float


def _track(phasors: np.ndarray, positions: np.ndarray, n_symbols: int, half_window: int):
    unwrapped = np.unwrap(np.angle(phasors))
    slope = np.polyfit(positions, unwrapped, 1)[0]
    residual = unwrapped - slope * positions
    if half_window > 0:
        weights = half_window + 1.0 - np.abs(np.arange(-half_window, half_window + 1))
        residual = convolve1d(residual, weights / weights.sum(), mode="nearest")
    grid = np.arange(n_symbols)
    return np.interp(grid, positions, residual) + slope * grid, float(slope)


def pilot_cpe(
    symbols: np.ndarray,
    frame: TxFrame,
    averaging_half_window: int = DEFAULT_HALF_WINDOW,
    joint_polarization: bool = True,
) -> CpeResult:
    """
    Remove carrier phase using the frame's known symbols.

    Args:
        symbols: (2, n) synchronized symbols
        frame: Transmitted frame
        averaging_half_window: Pilots averaged on each side of a pilot
        joint_polarization: Sum the pilot phasors of both polarizations
            (one shared laser) instead of tracking each separately

    Returns:
        CpeResult
    """
    symbols = np.asarray(symbols, dtype=np.complex128)
    if symbols.shape != (2, frame.n_symbols):
        raise ParameterError(f"expected (2, {frame.n_symbols}) symbols, got {symbols.shape}")
    if averaging_half_window < 0:
        raise ParameterError("averaging_half_window must be >= 0")

    positions = frame.pilot_indices
    phasors = symbols[:, positions] * np.conj(frame.symbols[:, positions])

    if joint_polarization:
        shared, slope = _track(
            phasors.sum(axis=0), positions, frame.n_symbols, averaging_half_window
        )
        phase = np.stack([shared, shared])
    else:
        tracks = [_track(pol, positions, frame.n_symbols, averaging_half_window) for pol in phasors]
        phase = np.stack([track for track, _ in tracks])
        slope = float(np.mean([s for _, s in tracks]))

    logger.debug(f"CPE slope {slope:.3e} rad/symbol over {positions.size} pilots")
    return CpeResult(symbols * np.exp(-1j * phase), phase, slope)


__all__ = ["pilot_cpe", "CpeResult", "DEFAULT_HALF_WINDOW"]
