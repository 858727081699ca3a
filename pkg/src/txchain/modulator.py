"""
Per-channel modulation and laser phase noise.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.errors import AliasingError, ParameterError
from src.sigkit import DualPolSignal, RrcSpec, pulse_shape, resample, rng_for
from src.txchain.framing import ModulationSpec, TxFrame

logger = logging.getLogger('splitnlc.txchain')

SHAPING_SAMPLES_PER_SYMBOL = 2


@dataclass(frozen=True)
class LaserSpec:
    """
    Laser phase-noise model.

    Attributes:
        linewidth: Lorentzian linewidth in Hz
        frequency_offset: Carrier frequency offset in Hz
        prng_seed: Seed of the Wiener phase process
    """

    linewidth: float = 100e3
    frequency_offset: float = 0.0
    prng_seed: int = 0

    def __post_init__(self):
        if self.linewidth < 0:
            raise ParameterError(f"linewidth must be >= 0, got {self.linewidth}")
        if self.prng_seed < 0:
            raise ParameterError("prng_seed must be non-negative")

    @property
    def is_ideal(self) -> bool:
        return self.linewidth == 0 and self.frequency_offset == 0


def rrc_spec_for(mod: ModulationSpec) -> RrcSpec:
    """Shaping filter of a channel at the 2-samples-per-symbol DSP rate."""
    return RrcSpec(mod.roll_off, mod.rrc_span_symbols, SHAPING_SAMPLES_PER_SYMBOL)


def modulate_channel(frame: TxFrame, mod: ModulationSpec, sample_rate: float) -> DualPolSignal:
    """
    RRC-shape a frame and resample it to the requested rate.

    Args:
        frame: Symbols to transmit
        mod: Modulation parameters (symbol rate, roll-off, filter span)
        sample_rate: Output sample rate in Hz

    Returns:
        Baseband waveform with center_offset 0

    Raises:
        AliasingError: If sample_rate is below (1 + roll_off) * symbol_rate
    """
    if sample_rate < mod.occupied_bandwidth:
        raise AliasingError(
            "sample rate below the occupied bandwidth of the channel",
            {"sample_rate": sample_rate, "occupied_bandwidth": mod.occupied_bandwidth},
        )
    shaped = pulse_shape(frame.symbols, rrc_spec_for(mod), mod.symbol_rate)
    return resample(shaped, sample_rate)


def laser_phase(n_samples: int, sample_rate: float, laser: LaserSpec) -> np.ndarray:
    """
    Phase trajectory of a laser: Wiener phase noise plus a linear offset ramp.

    The Wiener increments have variance 2*pi*linewidth/sample_rate and the
    trajectory starts at exactly 0 rad.
    """
    n = np.arange(n_samples)
    phase = 2.0 * np.pi * laser.frequency_offset * n / sample_rate
    if laser.linewidth > 0:
        std = np.sqrt(2.0 * np.pi * laser.linewidth / sample_rate)
        steps = rng_for(laser.prng_seed).normal(0.0, std, n_samples - 1)
        phase[1:] += np.cumsum(steps)
    return phase


def apply_laser(
    signal: DualPolSignal,
    laser: LaserSpec,
    symbol_duration_reference: Optional[float] = None,
) -> DualPolSignal:
    """
    Impose a laser's phase noise and frequency offset on both polarizations.

    Args:
        signal: Input waveform
        laser: Laser model
        symbol_duration_reference: Symbol duration in s, only used to report the
            linewidth-symbol-duration product

    Returns:
        Waveform multiplied by exp(i * phase)
    """
    if laser.is_ideal:
        return signal
    if symbol_duration_reference:
        logger.debug(
            f"laser linewidth x symbol duration = {laser.linewidth * symbol_duration_reference:.3e}"
        )
    rotation = np.exp(1j * laser_phase(signal.n_samples, signal.sample_rate, laser))
    return signal.with_samples(signal.samples * rotation)


__all__ = [
    "LaserSpec",
    "modulate_channel",
    "apply_laser",
    "laser_phase",
    "rrc_spec_for",
    "SHAPING_SAMPLES_PER_SYMBOL",
]
