"""
Single sweep point: the full transmission chain for one (N, scheme, power, seed).

Seed layout inside a point (all derived from the point seed):
    (seed, 1, ch)  frame data of channel ch
    (seed, 2, ch)  transmitter laser of channel ch
    (seed, 3)      transmitter noise
    (seed, 4)      amplifier ASE
    (seed, 5)      receiver front end (LO and noise)
"""

import logging
import math
import time
from dataclasses import replace
from typing import List

from src.errors import SplitNlcError
from src.fiberchannel import propagate_link
from src.infrastructure.logging import get_logger, track_performance
from src.labharness.config import ExperimentConfig
from src.labharness.records import MeasurementRecord
from src.nlc import Scheme, edc, postcompensate, precompensate
from src.rxchain import coherent_front_end, receive_channel
from src.sigkit import dbm_to_watt, derive_seed, set_mean_power
from src.txchain import (
    SuperchannelSpec,
    apply_tx_noise,
    composite_sample_rate,
    generate_superchannel,
)

logger = logging.getLogger('splitnlc.labharness')


def point_seed(
    config: ExperimentConfig, n_spans: int, scheme: Scheme, power_index: int, realization: int
) -> int:
    """Seed of one point, independent of every other point of the campaign."""
    return derive_seed(
        config.master_seed, n_spans, scheme.code(n_spans), power_index, realization
    )


def _reseeded(config: ExperimentConfig, seed: int) -> SuperchannelSpec:
    spec = config.superchannel
    channels = tuple(
        replace(mod, prng_seed=derive_seed(seed, 1, index))
        for index, mod in enumerate(spec.per_channel)
    )
    return replace(spec, per_channel=channels)


@track_performance("labharness", "run_point")
def run_point(
    config: ExperimentConfig,
    n_spans: int,
    scheme: Scheme,
    power_dbm: float,
    seed: int,
    realization: int = 0,
) -> List[MeasurementRecord]:
    """
    Simulate one sweep point and measure every channel.

    Tx chain, launch power, Tx pre-compensation over the first k spans,
    transmitter noise, N-span link, coherent front end, Rx backpropagation of
    the last N - k spans (EDC replaces both DBP stages), per-channel receiver.

    Args:
        config: Experiment description
        n_spans: Link span count (0 = back-to-back)
        scheme: Compensation scheme
        power_dbm: Launch power per channel
        seed: Point seed
        realization: Realization index recorded with the results

    Returns:
        One record per channel

    Raises:
        SyncError, AliasingError: With the point parameters added to the context
    """
    start = time.perf_counter()
    spec = _reseeded(config, seed)
    lasers = [
        replace(config.tx_laser, prng_seed=derive_seed(seed, 2, index))
        for index in range(spec.channel_count)
    ]
    rate = composite_sample_rate(spec, config.min_oversampling, config.guard)
    plan = scheme.plan(n_spans, config.ssfm)
    link = config.link(n_spans) if n_spans > 0 else None
    total_dbm = power_dbm + 10.0 * math.log10(spec.channel_count)
    channel_power = dbm_to_watt(power_dbm)

    try:
        composite, frames = generate_superchannel(spec, lasers, rate)
        field = set_mean_power(composite, total_dbm)
        if link is not None and plan is not None and plan.tx_spans > 0:
            field = precompensate(field, link, plan, target_power_dbm=total_dbm)
        field = apply_tx_noise(
            field, spec, config.trx.tx_snr_db, derive_seed(seed, 3), channel_power=channel_power
        )

        received_power = channel_power
        if link is not None:
            field = propagate_link(field, link, config.ssfm, derive_seed(seed, 4))
            net_gain_db = sum(s.amp.gain_db - s.fiber.span_loss_db for s in link.spans)
            received_power = channel_power * 10.0 ** (net_gain_db / 10.0)

        field = coherent_front_end(
            field, config.trx, derive_seed(seed, 5), spec, channel_power_w=received_power
        )
        if link is not None:
            field = edc(field, link) if plan is None else postcompensate(field, link, plan)

        results = [
            receive_channel(
                field,
                frame,
                mod,
                offset,
                channel_index=index,
                averaging_half_window=config.cpe_half_window,
                compute_ber=config.compute_ber,
            )
            for index, (frame, mod, offset) in enumerate(
                zip(frames, spec.per_channel, spec.channel_offsets)
            )
        ]
    except SplitNlcError as e:
        e.context.update(
            {
                "spans": n_spans,
                "scheme": scheme.label(n_spans),
                "power_dbm": power_dbm,
                "seed": seed,
            }
        )
        raise

    elapsed = time.perf_counter() - start
    distance = n_spans * config.span.fiber.length_km
    logger.debug(
        f"point N={n_spans} {scheme.label(n_spans)} {power_dbm:.2f} dBm in {elapsed:.1f} s"
    )
    lab_logger = get_logger()
    for result in results:
        lab_logger.log_metric(
            "snr_db",
            result.snr_db,
            unit="dB",
            labels={
                "scheme": scheme.label(n_spans),
                "spans": str(n_spans),
                "power_dbm": f"{power_dbm:.2f}",
                "channel": str(result.channel_index),
                "realization": str(realization),
            },
            run_id=f"{seed:016x}",
        )
    return [
        MeasurementRecord(
            scheme=scheme.name_for(n_spans),
            spans=n_spans,
            tx_spans=plan.tx_spans if plan is not None else 0,
            distance_km=distance,
            power_dbm=power_dbm,
            channel=result.channel_index,
            snr_db=result.snr_db,
            snr_x_db=result.snr_x_db,
            snr_y_db=result.snr_y_db,
            seed=seed,
            realization=realization,
            wall_time_s=elapsed,
            ber=result.ber,
        )
        for result in results
    ]


__all__ = ["run_point", "point_seed"]
