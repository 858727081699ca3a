"""
WDM superchannel assembly.

Channels sit on a uniform grid centered on the optical carrier (0 Hz of the
composite baseband). Channel i of n is at (i - (n - 1)/2) * spacing, which
also fixes the centering rule for even channel counts.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import constants

from src.errors import GridError, ParameterError
from src.sigkit import (
    DualPolSignal,
    bandlimit,
    derive_seed,
    frequency_shift,
    resample,
)
from src.txchain.framing import ModulationSpec, TxFrame, build_frame
from src.txchain.modulator import LaserSpec, apply_laser, modulate_channel
from src.txchain.noise import apply_awgn, check_snr_db

logger = logging.getLogger('splitnlc.txchain')


@dataclass(frozen=True)
class SuperchannelSpec:
    """
    WDM grid description.

    Attributes:
        channel_count: Number of channels
        spacing: Grid spacing in Hz
        per_channel: Modulation parameters of each channel, lowest frequency first
        center_wavelength: Carrier wavelength in m
    """

    channel_count: int = 1
    spacing: float = 50e9
    per_channel: Tuple[ModulationSpec, ...] = (ModulationSpec(),)
    center_wavelength: float = 1553e-9

    def __post_init__(self):
        object.__setattr__(self, "per_channel", tuple(self.per_channel))
        if self.channel_count < 1:
            raise ParameterError(f"channel_count must be >= 1, got {self.channel_count}")
        if len(self.per_channel) != self.channel_count:
            raise ParameterError(
                f"{len(self.per_channel)} modulation specs for {self.channel_count} channels"
            )
        if self.spacing <= 0:
            raise ParameterError(f"spacing must be positive, got {self.spacing}")
        if self.channel_count > 1:
            widest = max(mod.occupied_bandwidth for mod in self.per_channel)
            if widest > self.spacing:
                raise GridError(
                    f"channels of {widest:.4g} Hz overlap on a {self.spacing:.4g} Hz grid"
                )
        frame_lengths = {mod.frame_symbols for mod in self.per_channel}
        rates = {mod.symbol_rate for mod in self.per_channel}
        if len(frame_lengths) > 1 or len(rates) > 1:
            raise ParameterError("all channels must share symbol rate and frame length")

    @classmethod
    def uniform(
        cls,
        channel_count: int,
        modulation: ModulationSpec = ModulationSpec(),
        spacing: float = 50e9,
        center_wavelength: float = 1553e-9,
    ) -> "SuperchannelSpec":
        """Grid of identical channels (seeds shared until run_point reseeds them)."""
        return cls(channel_count, spacing, (modulation,) * channel_count, center_wavelength)

    @property
    def symbol_rate(self) -> float:
        return self.per_channel[0].symbol_rate

    @property
    def center_frequency(self) -> float:
        return constants.c / self.center_wavelength

    @property
    def channel_offsets(self) -> Tuple[float, ...]:
        middle = (self.channel_count - 1) / 2.0
        return tuple((index - middle) * self.spacing for index in range(self.channel_count))

    @property
    def occupied_bandwidth(self) -> float:
        """(n - 1) * spacing + (1 + roll_off) * symbol_rate of the widest channel."""
        widest = max(mod.occupied_bandwidth for mod in self.per_channel)
        return (self.channel_count - 1) * self.spacing + widest

    @property
    def center_channel(self) -> int:
        return self.channel_count // 2

    def is_edge_channel(self, index: int) -> bool:
        return self.channel_count > 1 and index in (0, self.channel_count - 1)


def composite_sample_rate(
    spec: SuperchannelSpec, min_oversampling: int = 4, guard: float = 0.25
) -> float:
    """
    Simulation sample rate: an integer multiple of the symbol rate.

    Uses at least `min_oversampling` samples per symbol and keeps a relative
    `guard` band beyond the occupied bandwidth for dispersion and nonlinear
    broadening.
    """
    needed = math.ceil((1.0 + guard) * spec.occupied_bandwidth / spec.symbol_rate - 1e-9)
    return spec.symbol_rate * max(min_oversampling, needed)


def mux_superchannel(
    channels: Sequence[DualPolSignal], spec: SuperchannelSpec, composite_rate: float
) -> DualPolSignal:
    """
    Multiplex channels onto the WDM grid.

    Each channel is resampled to the composite rate, confined to its slot of
    width `spacing` and shifted to its grid frequency, rounded to the nearest
    FFT bin of the composite block.

    Args:
        channels: Baseband channel waveforms, lowest frequency first
        spec: Grid description
        composite_rate: Output sample rate in Hz

    Returns:
        Composite waveform with center_offset 0

    Raises:
        GridError: If the grid does not fit inside the composite Nyquist band
    """
    if len(channels) != spec.channel_count:
        raise GridError(f"{len(channels)} waveforms for {spec.channel_count} channels")
    if spec.occupied_bandwidth >= composite_rate:
        raise GridError(
            f"grid bandwidth {spec.occupied_bandwidth:.4g} Hz exceeds the "
            f"composite rate {composite_rate:.4g} Hz"
        )

    half_slot = spec.spacing / 2.0
    total: Optional[np.ndarray] = None
    for channel, offset in zip(channels, spec.channel_offsets):
        placed = resample(channel, composite_rate)
        if spec.channel_count > 1:
            placed = bandlimit(placed, -half_slot, half_slot)
        placed = frequency_shift(placed, offset, snap_to_bin=True)
        total = placed.samples if total is None else total + placed.samples

    logger.debug(
        f"muxed {spec.channel_count} channel(s) at {composite_rate / 1e9:.1f} GS/s"
    )
    return DualPolSignal.from_array(total, composite_rate, 0.0)


def generate_superchannel(
    spec: SuperchannelSpec, lasers: Sequence[LaserSpec], composite_rate: float
) -> Tuple[DualPolSignal, List[TxFrame]]:
    """
    Run the per-channel transmitters and multiplex them.

    Each channel is framed, shaped at the composite rate and given its own
    laser before multiplexing.

    Returns:
        (composite waveform, per-channel frames)
    """
    if len(lasers) != spec.channel_count:
        raise ParameterError(f"{len(lasers)} lasers for {spec.channel_count} channels")
    frames = [build_frame(mod) for mod in spec.per_channel]
    channels = [
        apply_laser(
            modulate_channel(frame, mod, composite_rate), laser, 1.0 / mod.symbol_rate
        )
        for frame, mod, laser in zip(frames, spec.per_channel, lasers)
    ]
    return mux_superchannel(channels, spec, composite_rate), frames


def apply_tx_noise(
    signal: DualPolSignal,
    spec: SuperchannelSpec,
    tx_snr_db: float,
    seed: int,
    *,
    channel_power: Optional[float] = None,
) -> DualPolSignal:
    """
    Add independent transmitter noise in each channel slot.

    Every transmitter contributes white noise confined to its own grid slot,
    with `tx_snr_db` measured against the per-channel power in the
    symbol-rate bandwidth. Applied to the launch waveform, after any
    pre-compensation.

    Args:
        signal: Composite waveform
        spec: Grid description
        tx_snr_db: Per-transmitter SNR; +inf adds nothing
        seed: Seed; slot i uses derive_seed(seed, i)
        channel_power: Per-channel power in W (default: mean power / channel count)

    Returns:
        Noisy composite waveform
    """
    check_snr_db(tx_snr_db)
    if tx_snr_db == float("inf"):
        return signal

    power = signal.mean_power / spec.channel_count if channel_power is None else channel_power
    half_slot = spec.spacing / 2.0
    noisy = signal
    for index, offset in enumerate(spec.channel_offsets):
        noisy = apply_awgn(
            noisy,
            tx_snr_db,
            spec.symbol_rate,
            derive_seed(seed, index),
            signal_power=power,
            band=(offset - half_slot, offset + half_slot),
        )
    return noisy


__all__ = [
    "SuperchannelSpec",
    "composite_sample_rate",
    "mux_superchannel",
    "generate_superchannel",
    "apply_tx_noise",
]
