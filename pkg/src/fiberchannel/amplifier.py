"""
EDFA gain and ASE noise.

ASE is white across the simulation band with one-sided PSD per polarization
S_ASE = n_sp * h * nu * (G - 1), n_sp = NF * G / (2 * (G - 1)).
"""

import logging
from typing import Optional

import numpy as np
from scipy import constants

from src.fiberchannel.params import AmpSpec, LinkSpec
from src.sigkit import DualPolSignal, complex_gaussian, rng_for

logger = logging.getLogger('splitnlc.fiberchannel')

OSNR_REFERENCE_BANDWIDTH = 12.5e9  # 0.1 nm at 1550 nm


def spontaneous_emission_factor(amp: AmpSpec) -> float:
    """Population inversion factor n_sp = NF * G / (2 * (G - 1))."""
    gain = amp.gain_linear
    if gain <= 1.0:
        return 0.0
    return 10.0 ** (amp.noise_figure_db / 10.0) * gain / (2.0 * (gain - 1.0))


def ase_psd_per_pol(amp: AmpSpec, center_frequency: float) -> float:
    """ASE power spectral density per polarization in W/Hz (0 without ASE)."""
    if not amp.adds_noise:
        return 0.0
    gain = amp.gain_linear
    return spontaneous_emission_factor(amp) * constants.h * center_frequency * (gain - 1.0)


def amplify(
    signal: DualPolSignal,
    amp: AmpSpec,
    center_frequency: float,
    seed: Optional[int] = None,
) -> DualPolSignal:
    """
    Apply EDFA gain and add ASE.

    Args:
        signal: Field at the amplifier input
        amp: Amplifier parameters
        center_frequency: Optical carrier frequency in Hz
        seed: ASE seed (default: amp.prng_seed)

    Returns:
        Amplified field
    """
    if not amp.gain_db:
        return signal
    fields = signal.samples * np.sqrt(amp.gain_linear)
    psd = ase_psd_per_pol(amp, center_frequency)
    if psd > 0:
        rng = rng_for(amp.prng_seed if seed is None else seed)
        fields = fields + complex_gaussian(rng, fields.shape, psd * signal.sample_rate)
        logger.debug(f"ASE {psd:.3e} W/Hz per pol over {signal.sample_rate / 1e9:.1f} GHz")
    return signal.with_samples(fields)


def ase_noise_power(amp: AmpSpec, center_frequency: float, bandwidth: float) -> float:
    """ASE power in `bandwidth` summed over both polarizations, in W."""
    return 2.0 * ase_psd_per_pol(amp, center_frequency) * bandwidth


def predicted_osnr_db(
    launch_power_w: float,
    link: LinkSpec,
    reference_bandwidth: float = OSNR_REFERENCE_BANDWIDTH,
) -> float:
    """OSNR after a transparent link: P / (sum of ASE over amplifiers in B_ref, both pols)."""
    noise = sum(
        ase_noise_power(span.amp, link.center_frequency, reference_bandwidth)
        for span in link.spans
    )
    if noise == 0:
        return float("inf")
    return float(10.0 * np.log10(launch_power_w / noise))


__all__ = [
    "amplify",
    "ase_psd_per_pol",
    "ase_noise_power",
    "spontaneous_emission_factor",
    "predicted_osnr_db",
    "OSNR_REFERENCE_BANDWIDTH",
]
