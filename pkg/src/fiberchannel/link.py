"""
Multi-span forward channel.
"""

import logging
from typing import Sequence, Union

import numpy as np

from src.fiberchannel.amplifier import amplify
from src.fiberchannel.params import LinkSpec, SpanSpec, SsfmConfig, spans_of
from src.fiberchannel.ssfm import propagate_fiber
from src.sigkit import DualPolSignal, derive_seed, fft_filter, frequency_grid

logger = logging.getLogger('splitnlc.fiberchannel')


def propagate_link(
    signal: DualPolSignal, link: LinkSpec, cfg: SsfmConfig, seed: int
) -> DualPolSignal:
    """
    Propagate through every span and amplifier of a link.

    Args:
        signal: Launch field (power already set)
        link: Span cascade
        cfg: Step settings
        seed: Master seed; amplifier i uses derive_seed(seed, i)

    Returns:
        Field after the last amplifier
    """
    for index, span in enumerate(link.spans):
        signal = propagate_fiber(signal, span.fiber, cfg, sign=1)
        signal = amplify(signal, span.amp, link.center_frequency, seed=derive_seed(seed, index))
    logger.debug(
        f"link of {link.n_spans} spans ({link.distance_km:.1f} km) done, "
        f"output {signal.power_dbm:.2f} dBm"
    )
    return signal


def linear_response(
    signal: DualPolSignal,
    spans: Union[LinkSpec, Sequence[SpanSpec]],
    include_gain: bool = True,
) -> np.ndarray:
    """
    Closed-form frequency response of the spans with the Kerr effect removed.

    Returns:
        FFT-ordered response prod_i sqrt(G_i) * exp((i*beta2/2*omega^2 - alpha/2) * L_i)
    """
    omega = 2.0 * np.pi * frequency_grid(signal)
    exponent = np.zeros(signal.n_samples, dtype=np.complex128)
    log_gain = 0.0
    for span in spans_of(spans):
        fiber = span.fiber
        per_km = 0.5j * fiber.beta2_s2_per_km * omega ** 2 - fiber.alpha_per_km / 2.0
        exponent += per_km * fiber.length_km
        if include_gain:
            log_gain += 0.5 * np.log(span.amp.gain_linear)
    return np.exp(exponent + log_gain)


def apply_linear_link(
    signal: DualPolSignal,
    spans: Union[LinkSpec, Sequence[SpanSpec]],
    include_gain: bool = True,
) -> DualPolSignal:
    """Analytic linear propagation (dispersion, loss, gain) of a noiseless field."""
    return fft_filter(signal, linear_response(signal, spans, include_gain))


__all__ = ["propagate_link", "linear_response", "apply_linear_link"]
