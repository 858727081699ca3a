"""
Sweep campaigns: SNR vs launch power, gain vs split ratio, optimum SNR vs distance.

Every point is an independent job (N, scheme, power index, realization)
with its own derived seed. Jobs run inline or on a process pool; the
collected records are sorted before anything is written, so the output
does not depend on the worker count.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from src.analytic import (
    BudgetCoefficients,
    CrossoverResult,
    calibrate_budget,
    crossover_distance,
)
from src.errors import CalibrationError, PlanError, SplitNlcError
from src.infrastructure.logging import get_logger
from src.infrastructure.results_store import ResultStore
from src.labharness.config import ExperimentConfig
from src.labharness.peaks import SchemePeak, scheme_peaks
from src.labharness.records import CSV_HEADER, MeasurementRecord, sort_records, to_rows
from src.labharness.runner import point_seed, run_point
from src.nlc import Scheme

logger = logging.getLogger('splitnlc.labharness')

Job = Tuple[ExperimentConfig, int, Scheme, int, float, int]


@dataclass(frozen=True)
class PointFailure:
    """A sweep point that raised instead of producing records."""

    spans: int
    scheme: str
    power_dbm: float
    realization: int
    seed: int
    error_type: str
    message: str
    exit_code: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "spans": self.spans,
            "scheme": self.scheme,
            "power_dbm": self.power_dbm,
            "realization": self.realization,
            "seed": self.seed,
            "error_type": self.error_type,
            "message": self.message,
            "exit_code": self.exit_code,
        }


@dataclass(frozen=True)
class SplitGain:
    """Peak-SNR gain of one split over the EDC peak on the same link."""

    spans: int
    tx_spans: Optional[int]
    label: str
    peak_power_dbm: float
    peak_snr_db: float
    gain_db: float

    @property
    def split_ratio(self) -> Optional[float]:
        if self.tx_spans is None or self.spans == 0:
            return None
        return self.tx_spans / self.spans

    def to_dict(self) -> Dict[str, Any]:
        return {
            "spans": self.spans,
            "tx_spans": self.tx_spans,
            "split_ratio": self.split_ratio,
            "label": self.label,
            "peak_power_dbm": self.peak_power_dbm,
            "peak_snr_db": self.peak_snr_db,
            "gain_db": self.gain_db,
        }


@dataclass
class SweepResult:
    """
    Records and derived tables of one campaign.

    Attributes:
        kind: power, split or distance
        records: Sorted measurement records
        failures: Points that raised
        peaks: Realization-averaged peak SNR per (N, scheme)
        gains: Split gain table (split sweeps)
        crossover: Analytic crossover annotation (distance sweeps, finite TRX noise)
        coefficients: Budget coefficients used for the annotation
    """

    kind: str
    records: List[MeasurementRecord]
    failures: List[PointFailure] = field(default_factory=list)
    peaks: List[SchemePeak] = field(default_factory=list)
    gains: List[SplitGain] = field(default_factory=list)
    crossover: Optional[CrossoverResult] = None
    coefficients: Optional[BudgetCoefficients] = None

    def peak_for(self, spans: int, label: str) -> Optional[SchemePeak]:
        for peak in self.peaks:
            if peak.spans == spans and peak.label == label:
                return peak
        return None

    def summary(self, config: Optional[ExperimentConfig] = None) -> Dict[str, Any]:
        """JSON-ready summary sidecar."""
        summary: Dict[str, Any] = {
            "kind": self.kind,
            "n_records": len(self.records),
            "peaks": [peak.to_dict() for peak in self.peaks],
            "failures": [failure.to_dict() for failure in self.failures],
        }
        if config is not None:
            summary["config"] = config.to_dict()
        if self.gains:
            summary["gains"] = [gain.to_dict() for gain in self.gains]
        if self.coefficients is not None:
            summary["calibration"] = self.coefficients.to_dict()
        if self.crossover is not None:
            summary["crossover"] = {
                "label": self.crossover.label,
                "n_spans": self.crossover.n_spans,
                "distance_km": self.crossover.distance_km,
                "max_spans": self.crossover.max_spans,
            }
        return summary

    def write(
        self, path: Union[str, Path], config: Optional[ExperimentConfig] = None
    ) -> Path:
        """Write the results CSV and its summary sidecar next to it."""
        path = Path(path)
        store = ResultStore(path.parent)
        written = store.write_rows(path.stem, CSV_HEADER, to_rows(self.records))
        store.save_summary(path.stem, self.summary(config))
        return written


def _init_worker(level: int) -> None:
    """Give a pool worker the parent's log level."""
    get_logger(level=level).set_level(level)


def _run_job(job: Job) -> Tuple[List[MeasurementRecord], Optional[PointFailure]]:
    config, n_spans, scheme, power_index, power, realization = job
    seed = point_seed(config, n_spans, scheme, power_index, realization)
    try:
        return run_point(config, n_spans, scheme, power, seed, realization), None
    except SplitNlcError as e:
        return [], PointFailure(
            spans=n_spans,
            scheme=scheme.label(n_spans),
            power_dbm=power,
            realization=realization,
            seed=seed,
            error_type=type(e).__name__,
            message=str(e),
            exit_code=e.exit_code,
        )


def build_jobs(config: ExperimentConfig, span_counts: Sequence[int]) -> List[Job]:
    """
    Every (N, scheme, power, realization) job of a campaign.

    Schemes that resolve to the same split on a link (Tx-DBP and Rx-DBP at
    N = 0, a 50% split at N = 1) are run once.
    """
    jobs: List[Job] = []
    seen = set()
    for n_spans in span_counts:
        for scheme, power_index, power in config.points(n_spans):
            key = (n_spans, scheme.code(n_spans), power_index)
            if key in seen:
                continue
            seen.add(key)
            jobs.extend(
                (config, n_spans, scheme, power_index, power, realization)
                for realization in range(config.realizations)
            )
    return jobs


def run_jobs(
    jobs: Sequence[Job], workers: int = 1
) -> Tuple[List[MeasurementRecord], List[PointFailure]]:
    """
    Execute jobs inline (workers == 1) or on a process pool.

    Returns:
        (sorted records, failures in job order)
    """
    logger.info(f"running {len(jobs)} sweep points on {workers} worker(s)")
    if workers > 1:
        level = logging.getLogger("splitnlc").getEffectiveLevel()
        with ProcessPoolExecutor(
            max_workers=workers, initializer=_init_worker, initargs=(level,)
        ) as pool:
            outcomes = list(pool.map(_run_job, jobs))
    else:
        outcomes = [_run_job(job) for job in jobs]

    records: List[MeasurementRecord] = []
    failures: List[PointFailure] = []
    for point_records, failure in outcomes:
        records.extend(point_records)
        if failure is not None:
            failures.append(failure)
    if failures:
        logger.warning(f"{len(failures)} of {len(jobs)} points failed")
    return sort_records(records), failures


def _peaks(records: List[MeasurementRecord]) -> List[SchemePeak]:
    return scheme_peaks(records) if records else []


def sweep_power(
    config: ExperimentConfig,
    workers: int = 1,
    span_counts: Optional[Sequence[int]] = None,
) -> SweepResult:
    """
    SNR vs launch power for every configured scheme and span count.

    Args:
        config: Experiment description
        workers: Process count (1 = inline)
        span_counts: Subset of link lengths (default: config.span_counts)

    Returns:
        SweepResult with per-scheme peak SNR and its power
    """
    counts = tuple(span_counts) if span_counts is not None else config.span_counts
    records, failures = run_jobs(build_jobs(config, counts), workers)
    peaks = _peaks(records)
    for peak in peaks:
        logger.info(
            f"N={peak.spans} {peak.label}: peak {peak.snr_db:.2f} dB at {peak.power_dbm:.2f} dBm"
        )
    return SweepResult("power", records, failures, peaks)


def split_gains(peaks: Sequence[SchemePeak]) -> List[SplitGain]:
    """Gain of every DBP peak over the EDC peak of the same span count."""
    edc = {peak.spans: peak for peak in peaks if peak.scheme == "EDC"}
    gains = []
    for peak in peaks:
        baseline = edc.get(peak.spans)
        if baseline is None:
            continue
        gains.append(
            SplitGain(
                spans=peak.spans,
                tx_spans=None if peak.scheme == "EDC" else peak.tx_spans,
                label=peak.label,
                peak_power_dbm=peak.power_dbm,
                peak_snr_db=peak.snr_db,
                gain_db=peak.snr_db - baseline.snr_db,
            )
        )
    return gains


def sweep_split(
    config: ExperimentConfig,
    n_spans: int,
    tx_spans: Optional[Sequence[int]] = None,
    workers: int = 1,
) -> SweepResult:
    """
    Peak SNR gain over EDC versus the number of pre-compensated spans.

    Args:
        config: Experiment description (its scheme list is replaced)
        n_spans: Link length
        tx_spans: Split points k to evaluate (default: 0..N)
        workers: Process count

    Raises:
        PlanError: If a requested k is outside 0..N
    """
    ks = list(range(n_spans + 1)) if tx_spans is None else sorted(set(tx_spans))
    if any(k < 0 or k > n_spans for k in ks):
        raise PlanError(f"split points {ks} outside 0..{n_spans}")
    schemes = (Scheme.edc(),) + tuple(Scheme.at(k, n_spans) for k in ks)
    split_config = replace(config, span_counts=(n_spans,), schemes=schemes)

    records, failures = run_jobs(build_jobs(split_config, (n_spans,)), workers)
    peaks = _peaks(records)
    gains = split_gains(peaks)
    best = max((g for g in gains if g.tx_spans is not None), key=lambda g: g.gain_db, default=None)
    if best is not None:
        logger.info(f"N={n_spans}: best split {best.label}, gain {best.gain_db:.2f} dB over EDC")
    return SweepResult("split", records, failures, peaks, gains)


DISTANCE_SCHEMES = (Scheme.edc(), Scheme.tx_dbp(), Scheme.rx_dbp(), Scheme.split(ratio=0.5))


def _annotate_crossover(
    config: ExperimentConfig,
    records: List[MeasurementRecord],
    coefficients: Optional[BudgetCoefficients],
) -> Tuple[Optional[CrossoverResult], Optional[BudgetCoefficients]]:
    trx = config.trx
    if trx.b2b_snr_db == float("inf"):
        return None, coefficients

    longest = max(n for n in config.span_counts)
    if longest == 0:
        return None, coefficients
    try:
        if coefficients is None:
            coefficients = calibrate_budget(
                records, config.link(longest), trx, config.superchannel.symbol_rate
            )
        crossover = crossover_distance(trx, coefficients, config.span.fiber.length_km)
    except CalibrationError as e:
        logger.warning(f"no crossover annotation: {e}")
        return None, coefficients

    if crossover.found:
        logger.info(
            f"analytic crossover at {crossover.n_spans} spans ({crossover.distance_km:.0f} km)"
        )
    return crossover, coefficients


def sweep_distance(
    config: ExperimentConfig,
    workers: int = 1,
    coefficients: Optional[BudgetCoefficients] = None,
) -> SweepResult:
    """
    Optimum-power SNR versus span count for EDC, Tx-DBP, Rx-DBP and 50% split.

    With finite transceiver noise the result carries the analytic crossover
    annotation, from `coefficients` or from a budget fit to the sweep itself.
    """
    distance_config = replace(config, schemes=DISTANCE_SCHEMES)
    records, failures = run_jobs(build_jobs(distance_config, config.span_counts), workers)
    peaks = _peaks(records)
    crossover, coefficients = _annotate_crossover(config, records, coefficients)
    return SweepResult(
        "distance", records, failures, peaks, crossover=crossover, coefficients=coefficients
    )


__all__ = [
    "SweepResult",
    "PointFailure",
    "SplitGain",
    "sweep_power",
    "sweep_split",
    "sweep_distance",
    "split_gains",
    "build_jobs",
    "run_jobs",
    "DISTANCE_SCHEMES",
]
