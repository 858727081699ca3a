"""
Least-squares calibration of the budget coefficients against simulated sweeps.

For each record the measured excess noise

    y = 1/SNR - iota - N * ase_per_span / P

is regressed through the origin on x = N^(1+eps) * P^2 (EDC records, giving
eta) or M * P^2 (Rx-DBP records, giving xi, after removing the TRX-beating
term predicted by the fitted eta).
"""

import logging
from typing import Iterable, List, Optional, Protocol

import numpy as np

from src.analytic.budget import (
    BudgetCoefficients,
    ase_per_span,
    inverse_snr,
    trx_floor,
)
from src.errors import CalibrationError
from src.fiberchannel import LinkSpec
from src.rxchain import TrxNoiseSpec
from src.sigkit import dbm_to_watt

logger = logging.getLogger('splitnlc.analytic')


class BudgetRecord(Protocol):
    scheme: str
    spans: int
    tx_spans: int
    power_dbm: float
    channel: int
    snr_db: float


def _fit_through_origin(x: List[float], y: List[float], name: str) -> float:
    design = np.asarray(x)[:, None]
    solution, *_ = np.linalg.lstsq(design, np.asarray(y), rcond=None)
    value = float(solution[0])
    if not np.isfinite(value) or value <= 0:
        raise CalibrationError(
            f"records show no nonlinear signature for {name}", {"fitted": value}
        )
    return value


def calibrate_budget(
    records: Iterable[BudgetRecord],
    link: LinkSpec,
    trx: TrxNoiseSpec,
    symbol_rate: float,
    *,
    epsilon: float = 0.0,
    channel: Optional[int] = None,
) -> BudgetCoefficients:
    """
    Fit eta from EDC records and xi from Rx-DBP records.

    Args:
        records: Simulated sweep points (scheme, spans, power_dbm, snr_db, ...)
        link: Link of one span family; its span ASE sets ase_per_span
        trx: Transceiver noise used in the simulations
        symbol_rate: Channel symbol rate in Hz
        epsilon: Coherent accumulation exponent
        channel: Only use records of this channel index

    Returns:
        BudgetCoefficients with eta and/or xi set

    Raises:
        CalibrationError: If neither coefficient can be fitted
    """
    per_span = ase_per_span(link, symbol_rate)
    iota = trx_floor(trx.tx_snr_db, trx.rx_snr_db)
    exponent = 1.0 + epsilon

    usable = [
        record
        for record in records
        if record.spans > 0
        and np.isfinite(record.snr_db)
        and (channel is None or record.channel == channel)
    ]

    def excess(record: BudgetRecord) -> float:
        power = dbm_to_watt(record.power_dbm)
        return inverse_snr(record.snr_db) - iota - record.spans * per_span / power

    edc = [record for record in usable if record.scheme == "EDC"]
    rx_dbp = [record for record in usable if record.scheme == "RxDBP"]
    if not edc and not rx_dbp:
        raise CalibrationError("calibration needs EDC or Rx-DBP records")

    eta = None
    if edc:
        eta = _fit_through_origin(
            [r.spans ** exponent * dbm_to_watt(r.power_dbm) ** 2 for r in edc],
            [excess(r) for r in edc],
            "eta",
        )

    xi = None
    if rx_dbp:
        y = []
        for record in rx_dbp:
            value = excess(record)
            if eta is not None:
                trx_beat = 3.0 * eta * record.spans ** exponent * inverse_snr(trx.rx_snr_db)
                value -= trx_beat * dbm_to_watt(record.power_dbm) ** 2
            y.append(value)
        xi = _fit_through_origin(
            [r.spans * dbm_to_watt(r.power_dbm) ** 2 for r in rx_dbp], y, "xi"
        )

    logger.info(
        f"calibrated budget from {len(edc)} EDC and {len(rx_dbp)} Rx-DBP records: "
        f"eta={eta}, xi={xi}"
    )
    return BudgetCoefficients(per_span, eta, xi, epsilon)


__all__ = ["calibrate_budget", "BudgetRecord"]
