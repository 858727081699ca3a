"""
Symmetric split-step Fourier integration of the Manakov equation.

One step of length h applies a half linear step, the Kerr phase rotation
exp(i*sign*gamma*(8/9)*(|x|^2 + |y|^2)*h_eff) and a second half linear step,
where the linear operator is exp(sign*(i*beta2/2*omega^2 - alpha/2)*h/2).

sign=-1 runs the inverted channel used by backpropagation. The inverse
steps reuse the forward loss-weighted length h_eff, so a forward step
followed by the same step with sign=-1 is the identity to rounding.
"""

import logging

import numpy as np
from scipy import fft as sfft

from src.errors import ParameterError
from src.fiberchannel.params import FiberParams, SsfmConfig
from src.sigkit import DualPolSignal, frequency_grid

logger = logging.getLogger('splitnlc.fiberchannel')


def _check_sign(sign: int) -> None:
    if sign not in (1, -1):
        raise ParameterError(f"sign must be +1 or -1, got {sign}")


def step_sizes(fiber: FiberParams, cfg: SsfmConfig) -> np.ndarray:
    """
    Step lengths in km covering one span.

    "uniform" uses length/steps. "logarithmic" equalizes the loss-weighted
    length of every step, so steps grow as the power decays.
    """
    count = cfg.steps_per_span
    alpha = fiber.alpha_per_km
    if cfg.step_distribution == "uniform" or alpha == 0:
        return np.full(count, fiber.length_km / count)
    per_step = -np.expm1(-alpha * fiber.length_km) / count
    boundaries = -np.log1p(-per_step * np.arange(count + 1)) / alpha
    boundaries[-1] = fiber.length_km
    return np.diff(boundaries)


def linear_exponent(signal: DualPolSignal, fiber: FiberParams, sign: int) -> np.ndarray:
    """Per-km exponent sign*(i*beta2/2*omega^2 - alpha/2) on the FFT grid."""
    omega = 2.0 * np.pi * frequency_grid(signal)
    return sign * (0.5j * fiber.beta2_s2_per_km * omega ** 2 - fiber.alpha_per_km / 2.0)


def ssfm_step(
    signal: DualPolSignal, fiber: FiberParams, h_km: float, sign: int = 1
) -> DualPolSignal:
    """
    One symmetric split step.

    Args:
        signal: Field at the start of the step
        fiber: Fiber parameters
        h_km: Step length in km
        sign: +1 forward, -1 inverted channel

    Returns:
        Field at the end of the step
    """
    _check_sign(sign)
    if h_km <= 0:
        raise ParameterError(f"h_km must be positive, got {h_km}")
    half = np.exp(linear_exponent(signal, fiber, sign) * h_km / 2.0)
    fields = sfft.ifft(sfft.fft(signal.samples, axis=-1) * half, axis=-1)
    power = np.sum(np.abs(fields) ** 2, axis=0)
    fields *= np.exp(sign * 1j * fiber.nonlinear_coefficient * fiber.effective_length(h_km) * power)
    fields = sfft.ifft(sfft.fft(fields, axis=-1) * half, axis=-1)
    return signal.with_samples(fields)


def propagate_fiber(
    signal: DualPolSignal, fiber: FiberParams, cfg: SsfmConfig, sign: int = 1
) -> DualPolSignal:
    """
    Propagate through one span with the symmetric SSFM.

    Consecutive half linear steps are fused, so each step costs one FFT pair;
    the result equals sequential ssfm_step calls to rounding. For sign=-1 the
    step sequence is traversed in reverse, retracing the forward grid.

    Args:
        signal: Field at the span input (output for sign=-1)
        fiber: Fiber parameters
        cfg: Step settings
        sign: +1 forward, -1 inverted channel

    Returns:
        Field after the span
    """
    _check_sign(sign)
    exponent = linear_exponent(signal, fiber, sign)

    if not cfg.nonlinear or fiber.gamma == 0:
        spectrum = sfft.fft(signal.samples, axis=-1) * np.exp(exponent * fiber.length_km)
        return signal.with_samples(sfft.ifft(spectrum, axis=-1))

    steps = step_sizes(fiber, cfg)
    if sign < 0:
        steps = steps[::-1]
    kerr = sign * fiber.nonlinear_coefficient

    # uniform grids reuse three factors; logarithmic grids recompute each one
    factors = {}

    def linear_factor(length: float) -> np.ndarray:
        key = round(length, 15)
        factor = factors.get(key)
        if factor is None:
            factor = np.exp(exponent * length)
            if len(factors) < 4:
                factors[key] = factor
        return factor

    spectrum = sfft.fft(signal.samples, axis=-1)
    pending = steps[0] / 2.0
    for index, h in enumerate(steps):
        fields = sfft.ifft(spectrum * linear_factor(pending), axis=-1)
        power = np.sum(np.abs(fields) ** 2, axis=0)
        fields *= np.exp(1j * kerr * fiber.effective_length(h) * power)
        spectrum = sfft.fft(fields, axis=-1)
        pending = h / 2.0 + (steps[index + 1] / 2.0 if index + 1 < steps.size else 0.0)

    fields = sfft.ifft(spectrum * linear_factor(pending), axis=-1)
    logger.debug(
        f"propagated {fiber.length_km:.2f} km in {steps.size} steps (sign {sign:+d})"
    )
    return signal.with_samples(fields)


__all__ = ["ssfm_step", "propagate_fiber", "step_sizes", "linear_exponent"]
