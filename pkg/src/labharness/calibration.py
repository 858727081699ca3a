"""
Back-to-back calibration of the transceiver noise.
"""

import logging
import math
from dataclasses import replace
from typing import Optional, Tuple

from src.errors import CalibrationError, ParameterError
from src.labharness.config import ExperimentConfig
from src.labharness.runner import run_point
from src.nlc import Scheme
from src.rxchain import TrxNoiseSpec
from src.sigkit import derive_seed

logger = logging.getLogger('splitnlc.labharness')

INF = float("inf")
CALIBRATION_TOLERANCE_DB = 0.1
SEARCH_HALF_RANGE_DB = 10.0


def split_levels(combined_snr_db: float, tx_share: float) -> Tuple[float, float]:
    """
    Per-source SNRs whose noise powers add to a combined level.

    Args:
        combined_snr_db: SNR of the summed Tx + Rx noise
        tx_share: Fraction of the noise power coming from the transmitter

    Returns:
        (tx_snr_db, rx_snr_db); a source with zero share is +inf
    """
    if not 0.0 <= tx_share <= 1.0:
        raise ParameterError(f"tx_share must be in [0, 1], got {tx_share}")
    tx = INF if tx_share == 0 else combined_snr_db - 10.0 * math.log10(tx_share)
    rx = INF if tx_share == 1 else combined_snr_db - 10.0 * math.log10(1.0 - tx_share)
    return tx, rx


def measure_b2b(
    config: ExperimentConfig,
    trx: TrxNoiseSpec,
    seed: int,
    channel: Optional[int] = None,
    power_dbm: float = 0.0,
) -> float:
    """Back-to-back SNR of one channel (center by default) for a transceiver setting."""
    records = run_point(replace(config, trx=trx), 0, Scheme.edc(), power_dbm, seed)
    index = config.superchannel.center_channel if channel is None else channel
    return records[index].snr_db


def calibrate_b2b(
    config: ExperimentConfig,
    target_snr_db: float,
    tx_share: float = 0.5,
    *,
    channel: Optional[int] = None,
    tolerance_db: float = CALIBRATION_TOLERANCE_DB,
    max_iterations: int = 30,
) -> TrxNoiseSpec:
    """
    Solve for Tx/Rx noise levels that hit a back-to-back SNR target.

    The ratio of Tx to Rx noise power is held fixed while the combined level
    is bisected. Every evaluation uses the same seed, so the measured SNR is
    monotone in the level.

    Args:
        config: Experiment description (its trx LO and edge offset are kept)
        target_snr_db: Back-to-back SNR to reach
        tx_share: Fraction of the noise power from the transmitter (0.5 = 1:1)
        channel: Channel to calibrate (default: center)
        tolerance_db: Accepted deviation from the target
        max_iterations: Bisection steps before giving up

    Returns:
        TrxNoiseSpec reproducing the target within tolerance_db

    Raises:
        CalibrationError: If the target lies above the numerical floor or
            bisection does not converge
    """
    seed = derive_seed(config.master_seed, 0xB2B)

    def spec_for(level: float) -> TrxNoiseSpec:
        tx, rx = split_levels(level, tx_share)
        return replace(config.trx, tx_snr_db=tx, rx_snr_db=rx)

    def error(level: float) -> float:
        return measure_b2b(config, spec_for(level), seed, channel) - target_snr_db

    low, high = target_snr_db - SEARCH_HALF_RANGE_DB, target_snr_db + SEARCH_HALF_RANGE_DB
    if error(high) < 0:
        raise CalibrationError(
            f"back-to-back target {target_snr_db:.2f} dB is above the numerical floor",
            {"target_snr_db": target_snr_db},
        )

    level = target_snr_db
    for iteration in range(max_iterations):
        deviation = error(level)
        logger.debug(
            f"b2b calibration step {iteration}: level {level:.3f} dB, error {deviation:+.3f} dB"
        )
        if abs(deviation) <= tolerance_db:
            spec = spec_for(level)
            logger.info(
                f"calibrated b2b {target_snr_db:.2f} dB: tx {spec.tx_snr_db:.2f} dB, "
                f"rx {spec.rx_snr_db:.2f} dB"
            )
            return spec
        if deviation < 0:
            low = level
        else:
            high = level
        level = 0.5 * (low + high)

    raise CalibrationError(
        f"back-to-back calibration did not converge in {max_iterations} steps",
        {"target_snr_db": target_snr_db, "level_db": level},
    )


__all__ = ["calibrate_b2b", "measure_b2b", "split_levels"]
