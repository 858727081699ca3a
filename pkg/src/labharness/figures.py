"""
Per-figure CSV series for external plotting tools.

    snr_vs_power      realization-averaged SNR vs launch power per scheme
    split_gain        peak-SNR gain over EDC vs split ratio
    snr_vs_distance   optimum-power SNR vs distance per scheme
"""

import logging
from pathlib import Path
from typing import Dict, Optional, Sequence, Union

from src.infrastructure.results_store import ResultStore
from src.labharness.peaks import average_realizations, scheme_peaks
from src.labharness.records import MeasurementRecord
from src.labharness.sweeps import split_gains

logger = logging.getLogger('splitnlc.labharness')

POWER_HEADER = ("spans", "scheme", "label", "power_dbm", "snr_db", "snr_std_db", "realizations")
SPLIT_HEADER = (
    "spans", "tx_spans", "split_ratio", "label", "peak_power_dbm", "peak_snr_db", "gain_db"
)
DISTANCE_HEADER = ("spans", "distance_km", "scheme", "label", "peak_power_dbm", "peak_snr_db")


def _number(value: Optional[float], digits: int = 4) -> str:
    return "" if value is None else f"{value:.{digits}f}"


def write_figure_series(
    records: Sequence[MeasurementRecord],
    out_dir: Union[str, Path],
    channel: Optional[int] = None,
) -> Dict[str, Path]:
    """
    Write the three figure series derived from sweep records.

    Series without data (e.g. a split gain table with no EDC baseline) are
    skipped.

    Args:
        records: Sweep records of any campaign
        out_dir: Output directory
        channel: Channel to plot (default: center)

    Returns:
        Mapping of series name to written path
    """
    store = ResultStore(out_dir)
    written: Dict[str, Path] = {}

    curve = [
        {
            "spans": str(point.spans),
            "scheme": point.scheme,
            "label": point.label,
            "power_dbm": f"{point.power_dbm:.3f}",
            "snr_db": _number(point.snr_db),
            "snr_std_db": _number(point.snr_std_db),
            "realizations": str(point.realizations),
        }
        for point in average_realizations(records, channel)
    ]
    if curve:
        written["snr_vs_power"] = store.write_rows("snr_vs_power", POWER_HEADER, curve)

    peaks = scheme_peaks(records, channel) if records else []
    gains = [
        {
            "spans": str(gain.spans),
            "tx_spans": "" if gain.tx_spans is None else str(gain.tx_spans),
            "split_ratio": _number(gain.split_ratio),
            "label": gain.label,
            "peak_power_dbm": _number(gain.peak_power_dbm, 3),
            "peak_snr_db": _number(gain.peak_snr_db),
            "gain_db": _number(gain.gain_db),
        }
        for gain in split_gains(peaks)
    ]
    if gains:
        written["split_gain"] = store.write_rows("split_gain", SPLIT_HEADER, gains)

    distance = [
        {
            "spans": str(peak.spans),
            "distance_km": f"{peak.distance_km:.3f}",
            "scheme": peak.scheme,
            "label": peak.label,
            "peak_power_dbm": _number(peak.power_dbm, 3),
            "peak_snr_db": _number(peak.snr_db),
        }
        for peak in peaks
    ]
    if distance:
        written["snr_vs_distance"] = store.write_rows(
            "snr_vs_distance", DISTANCE_HEADER, distance
        )

    logger.info(f"wrote figure series {sorted(written)} to {store.storage_dir}")
    return written


__all__ = ["write_figure_series"]
