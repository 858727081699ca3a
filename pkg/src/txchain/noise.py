"""
Additive white Gaussian noise loading.

SNRs are defined as signal power over the noise power falling in a reference
bandwidth (both polarizations), which for an RRC matched receiver with the
symbol rate as reference equals the post-filter symbol SNR.
"""

import logging
from typing import Optional, Tuple

import numpy as np

from src.errors import ParameterError
from src.sigkit import DualPolSignal, bandlimit, complex_gaussian, rng_for

logger = logging.getLogger('splitnlc.txchain')


def noise_psd_per_pol(signal_power: float, snr_db: float, reference_bandwidth: float) -> float:
    """One-polarization noise PSD (W/Hz) giving `snr_db` in the reference bandwidth."""
    noise_power = signal_power / 10.0 ** (snr_db / 10.0)
    return noise_power / (2.0 * reference_bandwidth)


def check_snr_db(snr_db: float) -> None:
    if np.isnan(snr_db) or snr_db == float("-inf"):
        raise ParameterError(f"snr_db must be finite or +inf, got {snr_db}")


def apply_awgn(
    signal: DualPolSignal,
    snr_db: float,
    reference_bandwidth: float,
    seed: int,
    *,
    signal_power: Optional[float] = None,
    band: Optional[Tuple[float, float]] = None,
) -> DualPolSignal:
    """
    Add white circular Gaussian noise to both polarizations.

    Args:
        signal: Input waveform
        snr_db: Signal-to-noise ratio in the reference bandwidth; +inf adds nothing
        reference_bandwidth: Noise reference bandwidth in Hz
        seed: Noise seed
        signal_power: Reference signal power in W (default: signal mean power)
        band: Optional (low, high) baseband band the noise is confined to

    Returns:
        Noisy waveform

    Raises:
        ParameterError: If reference_bandwidth is not positive or snr_db is invalid
    """
    if reference_bandwidth <= 0:
        raise ParameterError(
            f"reference_bandwidth must be positive, got {reference_bandwidth}"
        )
    check_snr_db(snr_db)
    if snr_db == float("inf"):
        return signal

    power = signal.mean_power if signal_power is None else signal_power
    psd = noise_psd_per_pol(power, snr_db, reference_bandwidth)
    noise = complex_gaussian(rng_for(seed), (2, signal.n_samples), psd * signal.sample_rate)
    if band is not None:
        noise = bandlimit(signal.with_samples(noise), *band).samples
    logger.debug(f"awgn at {snr_db:.2f} dB in {reference_bandwidth:.4g} Hz (seed {seed})")
    return signal.with_samples(signal.samples + noise)


__all__ = ["apply_awgn", "check_snr_db", "noise_psd_per_pol"]
