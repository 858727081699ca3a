"""
Digital backpropagation and electronic dispersion compensation.

DBP runs the inverted channel over a contiguous span subset: spans are
taken in reverse order, each amplifier gain is undone without noise and
the fiber is traversed with propagate_fiber(sign=-1) on the forward step
grid. Noise is never modelled here.
"""

import logging
from typing import Optional, Sequence, Union

import numpy as np

from src.errors import AliasingError, PlanError
from src.fiberchannel import LinkSpec, SpanSpec, SsfmConfig, propagate_fiber, spans_of
from src.nlc.plan import NlcPlan
from src.sigkit import (
    DualPolSignal,
    fft_filter,
    frequency_grid,
    occupied_bandwidth,
    set_mean_power,
)

logger = logging.getLogger('splitnlc.nlc')

SpansLike = Union[LinkSpec, Sequence[SpanSpec]]


def _check_bandwidth(signal: DualPolSignal, signal_bandwidth: Optional[float]) -> None:
    bandwidth = occupied_bandwidth(signal) if signal_bandwidth is None else signal_bandwidth
    if bandwidth >= signal.sample_rate:
        raise AliasingError(
            "sample rate does not cover the compensated field",
            context={"bandwidth_hz": bandwidth, "sample_rate_hz": signal.sample_rate},
        )


def dbp(
    signal: DualPolSignal,
    spans: SpansLike,
    cfg: SsfmConfig,
    *,
    signal_bandwidth: Optional[float] = None,
) -> DualPolSignal:
    """
    Backpropagate a field through a span subset.

    Args:
        signal: Field observed after the last span of the subset
        spans: Ordered spans as physically traversed
        cfg: Step settings (use the forward grid for exact inversion)
        signal_bandwidth: Bandwidth to check against the sample rate
            (default: 99.9 % occupied bandwidth of `signal`)

    Returns:
        Estimate of the field at the input of the first span

    Raises:
        AliasingError: If the sample rate cannot hold the compensated bandwidth
    """
    subset = list(spans_of(spans))
    if not subset:
        return signal
    _check_bandwidth(signal, signal_bandwidth)

    for span in reversed(subset):
        gain = span.amp.gain_linear
        if gain != 1.0:
            signal = signal.with_samples(signal.samples / np.sqrt(gain))
        signal = propagate_fiber(signal, span.fiber, cfg, sign=-1)

    logger.debug(
        f"backpropagated {len(subset)} spans with {cfg.steps_per_span} steps/span "
        f"(nonlinear={cfg.nonlinear})"
    )
    return signal


def _check_link(link: LinkSpec, plan: NlcPlan) -> None:
    if plan.total_spans != link.n_spans:
        raise PlanError(
            "plan does not match the link",
            context={"plan_spans": plan.total_spans, "link_spans": link.n_spans},
        )


def precompensate(
    signal: DualPolSignal,
    link: LinkSpec,
    plan: NlcPlan,
    *,
    target_power_dbm: Optional[float] = None,
) -> DualPolSignal:
    """
    Pre-distort a launch waveform over the first k spans of the link.

    The pre-distorted field is renormalized to the mean launch power
    (`target_power_dbm`, default: the input mean power).

    Raises:
        PlanError: If the plan was made for another span count
    """
    _check_link(link, plan)
    if plan.tx_spans == 0:
        return signal
    target = signal.power_dbm if target_power_dbm is None else target_power_dbm
    distorted = dbp(signal, link.spans[: plan.tx_spans], plan.ssfm)
    return set_mean_power(distorted, target)


def postcompensate(signal: DualPolSignal, link: LinkSpec, plan: NlcPlan) -> DualPolSignal:
    """
    Backpropagate the received field over the last N - k spans.

    Raises:
        PlanError: If the plan was made for another span count
    """
    _check_link(link, plan)
    if plan.rx_spans == 0:
        return signal
    return dbp(signal, link.spans[plan.tx_spans:], plan.ssfm)


def edc(signal: DualPolSignal, link: SpansLike) -> DualPolSignal:
    """
    Remove the accumulated chromatic dispersion with one all-pass filter.

    Response exp(-i * beta2_total / 2 * omega^2), beta2_total = sum beta2 * L.
    """
    subset = spans_of(link)
    if not subset:
        return signal
    total = sum(span.fiber.beta2_s2_per_km * span.fiber.length_km for span in subset)
    if total == 0:
        return signal
    omega = 2.0 * np.pi * frequency_grid(signal)
    return fft_filter(signal, np.exp(-0.5j * total * omega ** 2))


__all__ = ["dbp", "precompensate", "postcompensate", "edc"]
