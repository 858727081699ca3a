"""
Realization averaging and peak-SNR extraction.
"""

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.errors import ParameterError
from src.labharness.records import MeasurementRecord


@dataclass(frozen=True)
class PeakEstimate:
    """
    Peak of one SNR-vs-power curve.

    Attributes:
        power_dbm: Power at the peak
        snr_db: Peak SNR
        fitted: False when the best grid point was returned without a fit
            (peak on the grid edge or non-concave neighborhood)
    """

    power_dbm: float
    snr_db: float
    fitted: bool


@dataclass(frozen=True)
class CurvePoint:
    """Realization-averaged SNR of one (N, scheme, power) point."""

    spans: int
    scheme: str
    tx_spans: int
    power_dbm: float
    snr_db: float
    snr_std_db: float
    realizations: int

    @property
    def label(self) -> str:
        if self.scheme == "EDC":
            return "EDC"
        return f"{self.tx_spans}:{self.spans - self.tx_spans}"


@dataclass(frozen=True)
class SchemePeak:
    """Optimum-power SNR of one scheme on one link."""

    spans: int
    distance_km: float
    scheme: str
    tx_spans: int
    label: str
    power_dbm: float
    snr_db: float
    fitted: bool

    def to_dict(self) -> dict:
        return {
            "spans": self.spans,
            "distance_km": self.distance_km,
            "scheme": self.scheme,
            "tx_spans": self.tx_spans,
            "label": self.label,
            "peak_power_dbm": self.power_dbm,
            "peak_snr_db": self.snr_db,
            "fitted": self.fitted,
        }


def find_peak(powers: Sequence[float], snrs: Sequence[float]) -> PeakEstimate:
    """
    Peak SNR over a power grid.

    Fits a parabola through the best grid point and its two neighbors and
    returns its vertex. Falls back to the best grid point when the maximum
    sits on the grid edge or the neighborhood is not concave.

    Raises:
        ParameterError: If there is no finite SNR value
    """
    p = np.asarray(powers, dtype=float)
    s = np.asarray(snrs, dtype=float)
    if p.shape != s.shape:
        raise ParameterError(f"{p.size} powers for {s.size} SNR values")
    finite = np.isfinite(s)
    if not finite.any():
        raise ParameterError("no finite SNR value to extract a peak from")
    order = np.argsort(p[finite])
    p, s = p[finite][order], s[finite][order]

    best = int(np.argmax(s))
    if best == 0 or best == p.size - 1:
        return PeakEstimate(float(p[best]), float(s[best]), False)

    window = slice(best - 1, best + 2)
    a, b, c = np.polyfit(p[window], s[window], 2)
    if a >= 0:
        return PeakEstimate(float(p[best]), float(s[best]), False)
    vertex = float(np.clip(-b / (2.0 * a), p[best - 1], p[best + 1]))
    return PeakEstimate(vertex, float(np.polyval((a, b, c), vertex)), True)


def center_channel_of(records: Iterable[MeasurementRecord]) -> int:
    """Center channel index implied by the highest channel index present."""
    highest = max(record.channel for record in records)
    return (highest + 1) // 2


def average_realizations(
    records: Sequence[MeasurementRecord], channel: Optional[int] = None
) -> List[CurvePoint]:
    """
    Average each point over its realizations.

    SNRs are averaged as linear error powers; the spread is the sample
    standard deviation of the dB values. Uses the center channel unless
    `channel` is given.
    """
    if not records:
        return []
    if channel is None:
        channel = center_channel_of(records)

    groups: Dict[Tuple[int, str, int, float], List[float]] = defaultdict(list)
    for record in records:
        if record.channel == channel:
            groups[(record.spans, record.scheme, record.tx_spans, record.power_dbm)].append(
                record.snr_db
            )

    points = []
    for (spans, scheme, tx_spans, power), values in sorted(groups.items()):
        snr = np.asarray(values)
        if np.isinf(snr).any():
            mean_db = float(np.mean(snr))
        else:
            mean_db = float(-10.0 * np.log10(np.mean(10.0 ** (-snr / 10.0))))
        spread = float(np.std(snr, ddof=1)) if snr.size > 1 and np.isfinite(snr).all() else 0.0
        points.append(CurvePoint(spans, scheme, tx_spans, power, mean_db, spread, snr.size))
    return points


def scheme_peaks(
    records: Sequence[MeasurementRecord], channel: Optional[int] = None
) -> List[SchemePeak]:
    """Peak SNR of every (N, scheme) curve in the records."""
    curves: Dict[Tuple[int, str, int], List[CurvePoint]] = defaultdict(list)
    for point in average_realizations(records, channel):
        curves[(point.spans, point.scheme, point.tx_spans)].append(point)

    distances = {record.spans: record.distance_km for record in records}
    peaks = []
    for (spans, scheme, tx_spans), points in sorted(curves.items()):
        if not any(np.isfinite(point.snr_db) for point in points):
            continue
        peak = find_peak([p.power_dbm for p in points], [p.snr_db for p in points])
        peaks.append(
            SchemePeak(
                spans=spans,
                distance_km=distances[spans],
                scheme=scheme,
                tx_spans=tx_spans,
                label=points[0].label,
                power_dbm=peak.power_dbm,
                snr_db=peak.snr_db,
                fitted=peak.fitted,
            )
        )
    return peaks


__all__ = [
    "PeakEstimate",
    "CurvePoint",
    "SchemePeak",
    "find_peak",
    "average_realizations",
    "scheme_peaks",
    "center_channel_of",
]
