"""
Sweep measurement records and their CSV form.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence

from src.errors import ConfigError

CSV_HEADER = (
    "scheme",
    "spans",
    "tx_spans",
    "distance_km",
    "power_dbm",
    "channel",
    "snr_db",
    "snr_x_db",
    "snr_y_db",
    "seed",
    "realization",
)


def _format_snr(value: float) -> str:
    if value == float("inf"):
        return "inf"
    return f"{value:.4f}"


@dataclass(frozen=True)
class MeasurementRecord:
    """
    One channel of one sweep point.

    Attributes:
        scheme: EDC, TxDBP, RxDBP or Split
        spans: Link span count N
        tx_spans: Pre-compensated spans k (0 for EDC)
        distance_km: N times the span length
        power_dbm: Launch power per channel
        channel: Channel index, lowest frequency first
        snr_db: Combined SNR
        snr_x_db: X-polarization SNR
        snr_y_db: Y-polarization SNR
        seed: Point seed
        realization: Realization index
        wall_time_s: Point runtime (not written to the CSV)
        ber: Hard-decision BER when requested (not written to the CSV)
    """

    scheme: str
    spans: int
    tx_spans: int
    distance_km: float
    power_dbm: float
    channel: int
    snr_db: float
    snr_x_db: float
    snr_y_db: float
    seed: int
    realization: int
    wall_time_s: float = 0.0
    ber: Optional[float] = None

    @property
    def label(self) -> str:
        """Return "EDC" or the k:(N-k) split label."""
        if self.scheme == "EDC":
            return "EDC"
        return f"{self.tx_spans}:{self.spans - self.tx_spans}"

    @property
    def sort_key(self):
        return (
            self.spans, self.scheme, self.tx_spans, self.power_dbm, self.realization, self.channel
        )

    def to_row(self) -> Dict[str, str]:
        return {
            "scheme": self.scheme,
            "spans": str(self.spans),
            "tx_spans": str(self.tx_spans),
            "distance_km": f"{self.distance_km:.3f}",
            "power_dbm": f"{self.power_dbm:.3f}",
            "channel": str(self.channel),
            "snr_db": _format_snr(self.snr_db),
            "snr_x_db": _format_snr(self.snr_x_db),
            "snr_y_db": _format_snr(self.snr_y_db),
            "seed": str(self.seed),
            "realization": str(self.realization),
        }

    @classmethod
    def from_row(cls, row: Dict[str, str]) -> "MeasurementRecord":
        try:
            return cls(
                scheme=row["scheme"],
                spans=int(row["spans"]),
                tx_spans=int(row["tx_spans"]),
                distance_km=float(row["distance_km"]),
                power_dbm=float(row["power_dbm"]),
                channel=int(row["channel"]),
                snr_db=float(row["snr_db"]),
                snr_x_db=float(row["snr_x_db"]),
                snr_y_db=float(row["snr_y_db"]),
                seed=int(row["seed"]),
                realization=int(row["realization"]),
            )
        except (KeyError, ValueError) as e:
            raise ConfigError(f"malformed result row {row}: {e}") from e


def sort_records(records: Iterable[MeasurementRecord]) -> List[MeasurementRecord]:
    """Canonical order used for every written results file."""
    return sorted(records, key=lambda record: record.sort_key)


def to_rows(records: Iterable[MeasurementRecord]) -> List[Dict[str, str]]:
    return [record.to_row() for record in sort_records(records)]


def from_rows(rows: Sequence[Dict[str, str]]) -> List[MeasurementRecord]:
    return [MeasurementRecord.from_row(row) for row in rows]


__all__ = [
    "MeasurementRecord",
    "CSV_HEADER",
    "sort_records",
    "to_rows",
    "from_rows",
]
