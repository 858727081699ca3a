"""
File-based persistence for sweep results.

Each result set is a CSV table `<name>.csv` plus an optional JSON sidecar
`<name>.summary.json` (config, peak tables, calibration, crossover
annotation, failures). Rows are written exactly as given, so callers sort
them first; the writer only fixes the quoting and line endings.
"""

import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

logger = logging.getLogger('splitnlc.results_store')

SUMMARY_SUFFIX = ".summary.json"


class ResultStore:
    """
    CSV + JSON sidecar storage rooted at one directory.

    Waveforms are never stored here; only per-point scalar results.
    """

    def __init__(self, storage_dir: Union[str, Path, None] = None):
        """
        Initialize the store.

        Args:
            storage_dir: Directory holding result files (default: results)
        """
        if storage_dir is None:
            storage_dir = 'results'

        self.storage_dir = Path(storage_dir)
        self.storage_dir.mkdir(parents=True, exist_ok=True)

        logger.debug(f"ResultStore initialized with storage: {self.storage_dir}")

    def csv_path(self, name: str) -> Path:
        return self.storage_dir / f"{name}.csv"

    def summary_path(self, name: str) -> Path:
        return self.storage_dir / f"{name}{SUMMARY_SUFFIX}"

    def write_rows(
        self, name: str, header: Sequence[str], rows: Sequence[Mapping[str, str]]
    ) -> Path:
        """
        Write a table with RFC-4180 quoting and CRLF line endings.

        Args:
            name: Result set name (file stem)
            header: Column names, in order
            rows: One mapping per row; extra keys are an error

        Returns:
            Path of the written CSV
        """
        path = self.csv_path(name)
        with open(path, 'w', newline='') as f:
            writer = csv.DictWriter(f, fieldnames=list(header), quoting=csv.QUOTE_MINIMAL)
            writer.writeheader()
            writer.writerows(rows)

        logger.info(f"Wrote {len(rows)} rows to {path}")
        return path

    def read_rows(self, name: str) -> List[Dict[str, str]]:
        """
        Read a table written by write_rows.

        Raises:
            FileNotFoundError: If the result set does not exist
        """
        path = self.csv_path(name)
        with open(path, 'r', newline='') as f:
            return [dict(row) for row in csv.DictReader(f)]

    def save_summary(self, name: str, summary: Dict[str, Any]) -> Path:
        path = self.summary_path(name)
        try:
            with open(path, 'w') as f:
                json.dump(summary, f, indent=2, sort_keys=True)
            logger.debug(f"Saved summary: {path}")
        except (TypeError, OSError) as e:
            logger.error(f"Failed to save summary {name}: {e}")
            raise
        return path

    def load_summary(self, name: str) -> Optional[Dict[str, Any]]:
        """
        Load a summary sidecar.

        Returns:
            The summary dict, or None if it does not exist or is unreadable
        """
        path = self.summary_path(name)

        if not path.exists():
            logger.warning(f"Summary not found: {name}")
            return None

        try:
            with open(path, 'r') as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            logger.error(f"Failed to load summary {name}: {e}")
            return None


__all__ = ["ResultStore", "SUMMARY_SUFFIX"]
