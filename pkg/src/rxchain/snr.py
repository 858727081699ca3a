"""
Data-aided SNR estimation.
"""

import logging
import warnings
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.errors import ParameterError, StatisticalAccuracyWarning, UndefinedScalingError
from src.txchain import TxFrame, demap_qam

logger = logging.getLogger('splitnlc.rxchain')

SNR_CAP_DB = 60.0
MIN_ACCURATE_SYMBOLS = 10_000


@dataclass(frozen=True, eq=False)
class SnrEstimate:
    """
    Attributes:
        snr_db: Combined SNR pooling both polarizations
        snr_x_db: X-polarization SNR
        snr_y_db: Y-polarization SNR
        gains: Fitted complex gain per polarization
        equalized: (2, n_data) data symbols divided by the fitted gains
    """

    snr_db: float
    snr_x_db: float
    snr_y_db: float
    gains: Tuple[complex, complex]
    equalized: np.ndarray


def _capped_db(signal_energy: float, error_energy: float) -> float:
    if error_energy <= 0:
        return SNR_CAP_DB
    return float(min(10.0 * np.log10(signal_energy / error_energy), SNR_CAP_DB))


def estimate_snr(symbols: np.ndarray, frame: TxFrame) -> SnrEstimate:
    """
    SNR of the payload data against the transmitted symbols.

    One complex least-squares gain per polarization is removed first, so the
    estimate is invariant to any complex scaling of `symbols`. Pilots and
    preamble are excluded. Values are capped at SNR_CAP_DB.

    Args:
        symbols: (2, n) phase-corrected symbols aligned to the frame
        frame: Transmitted frame

    Returns:
        SnrEstimate

    Raises:
        UndefinedScalingError: If a polarization carries no signal
    """
    symbols = np.asarray(symbols, dtype=np.complex128)
    if symbols.shape != (2, frame.n_symbols):
        raise ParameterError(f"expected (2, {frame.n_symbols}) symbols, got {symbols.shape}")

    data = frame.data_indices
    if data.size < MIN_ACCURATE_SYMBOLS:
        warnings.warn(
            f"SNR from {data.size} symbols per polarization is not accurate to 0.05 dB",
            StatisticalAccuracyWarning,
            stacklevel=2,
        )

    sent = frame.symbols[:, data]
    received = symbols[:, data]
    gains = np.sum(np.conj(sent) * received, axis=1) / np.sum(np.abs(sent) ** 2, axis=1)
    if np.any(gains == 0):
        raise UndefinedScalingError("received data uncorrelated with the transmitted symbols")

    equalized = received / gains[:, None]
    signal_energy = np.sum(np.abs(sent) ** 2, axis=1)
    error_energy = np.sum(np.abs(equalized - sent) ** 2, axis=1)

    return SnrEstimate(
        snr_db=_capped_db(float(signal_energy.sum()), float(error_energy.sum())),
        snr_x_db=_capped_db(float(signal_energy[0]), float(error_energy[0])),
        snr_y_db=_capped_db(float(signal_energy[1]), float(error_energy[1])),
        gains=(complex(gains[0]), complex(gains[1])),
        equalized=equalized,
    )


def bit_error_ratio(equalized: np.ndarray, frame: TxFrame) -> float:
    """Hard-decision BER of equalized (2, n_data) payload symbols."""
    decided = np.stack([demap_qam(pol, frame.qam_order) for pol in equalized])
    errors = np.count_nonzero(decided != frame.source_bits)
    return errors / frame.source_bits.size


__all__ = [
    "estimate_snr",
    "bit_error_ratio",
    "SnrEstimate",
    "SNR_CAP_DB",
    "MIN_ACCURATE_SYMBOLS",
]
