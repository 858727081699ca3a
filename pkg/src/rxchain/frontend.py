"""
Coherent receiver front end: LO mixing and receiver noise.
"""

import logging
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from src.errors import ParameterError
from src.sigkit import DualPolSignal, derive_seed
from src.txchain import LaserSpec, SuperchannelSpec, apply_awgn, check_snr_db, laser_phase

logger = logging.getLogger('splitnlc.rxchain')

INF = float("inf")


@dataclass(frozen=True)
class TrxNoiseSpec:
    """
    Transceiver noise split.

    Attributes:
        tx_snr_db: Per-transmitter SNR in the symbol-rate bandwidth (+inf: noiseless)
        rx_snr_db: Receiver SNR referenced to one channel's symbol-rate bandwidth
        lo: Local oscillator laser
        edge_rx_snr_offset_db: Receiver SNR change of the two edge channels of a
            multi-channel grid (<= 0)
    """

    tx_snr_db: float = INF
    rx_snr_db: float = INF
    lo: LaserSpec = LaserSpec()
    edge_rx_snr_offset_db: float = -2.0

    def __post_init__(self):
        check_snr_db(self.tx_snr_db)
        check_snr_db(self.rx_snr_db)
        if not self.edge_rx_snr_offset_db <= 0:
            raise ParameterError(
                f"edge_rx_snr_offset_db must be <= 0, got {self.edge_rx_snr_offset_db}"
            )

    @property
    def b2b_snr_db(self) -> float:
        """Combined back-to-back SNR of the Tx and Rx noise sources."""
        inverse = 10.0 ** (-self.tx_snr_db / 10.0) + 10.0 ** (-self.rx_snr_db / 10.0)
        if inverse == 0:
            return INF
        return float(-10.0 * np.log10(inverse))


def edge_noise_snr_db(rx_snr_db: float, offset_db: float) -> float:
    """SNR of the extra noise that lowers an edge channel's rx SNR by -offset_db."""
    excess = 10.0 ** (-offset_db / 10.0) - 1.0
    if excess <= 0 or rx_snr_db == INF:
        return INF
    return float(rx_snr_db - 10.0 * np.log10(excess))


def coherent_front_end(
    signal: DualPolSignal,
    trx: TrxNoiseSpec,
    seed: int,
    spec: Optional[SuperchannelSpec] = None,
    *,
    channel_power_w: Optional[float] = None,
) -> DualPolSignal:
    """
    Mix with the LO and add receiver noise.

    Receiver noise is white over the whole digitized band with a PSD set by
    rx_snr_db against one channel's power in its symbol-rate bandwidth. Edge
    channels of a multi-channel grid get extra noise confined to their slot.

    Args:
        signal: Received composite field
        trx: Transceiver noise and LO settings
        seed: Seed; LO phase, white noise and edge noise use derived streams
        spec: Grid description, required when rx_snr_db is finite
        channel_power_w: Per-channel signal power in W
            (default: mean power / channel count)

    Returns:
        Field as seen by the digitizer
    """
    if trx.lo.linewidth > 0 or trx.lo.frequency_offset != 0:
        lo = replace(trx.lo, prng_seed=derive_seed(seed, 0))
        rotation = np.exp(-1j * laser_phase(signal.n_samples, signal.sample_rate, lo))
        signal = signal.with_samples(signal.samples * rotation)

    if trx.rx_snr_db == INF:
        return signal
    if spec is None:
        raise ParameterError("a SuperchannelSpec is needed to reference the receiver noise")

    power = signal.mean_power / spec.channel_count if channel_power_w is None else channel_power_w
    signal = apply_awgn(
        signal, trx.rx_snr_db, spec.symbol_rate, derive_seed(seed, 1), signal_power=power
    )

    edge_snr = edge_noise_snr_db(trx.rx_snr_db, trx.edge_rx_snr_offset_db)
    if edge_snr < INF:
        half_slot = spec.spacing / 2.0
        for index, offset in enumerate(spec.channel_offsets):
            if not spec.is_edge_channel(index):
                continue
            center = offset - signal.center_offset
            signal = apply_awgn(
                signal,
                edge_snr,
                spec.symbol_rate,
                derive_seed(seed, 2, index),
                signal_power=power,
                band=(center - half_slot, center + half_slot),
            )
    logger.debug(f"front end: rx SNR {trx.rx_snr_db:.2f} dB, LO {trx.lo.linewidth:.3g} Hz")
    return signal


__all__ = ["TrxNoiseSpec", "coherent_front_end", "edge_noise_snr_db"]
