"""
Tests for the file-based result store.
"""

import pytest

from src.infrastructure.results_store import ResultStore

HEADER = ("spans", "scheme", "snr_db")


@pytest.fixture
def store(tmp_path):
    return ResultStore(tmp_path / "results")


class TestRows:
    """Test CSV tables."""

    def test_write_then_read(self, store):
        """Test that rows come back in order as strings."""
        rows = [
            {"spans": "2", "scheme": "EDC", "snr_db": "15.25"},
            {"spans": "2", "scheme": "Split", "snr_db": "16.10"},
        ]
        path = store.write_rows("sweep", HEADER, rows)
        assert path == store.csv_path("sweep")
        assert store.read_rows("sweep") == rows

    def test_crlf_line_endings(self, store):
        """Test RFC-4180 line endings."""
        store.write_rows("sweep", HEADER, [{"spans": "1", "scheme": "EDC", "snr_db": "9.0"}])
        raw = store.csv_path("sweep").read_bytes()
        assert raw.startswith(b"spans,scheme,snr_db\r\n")
        assert raw.count(b"\r\n") == 2

    def test_quotes_commas(self, store):
        """Test quoting of fields holding separators."""
        store.write_rows("sweep", HEADER, [{"spans": "1", "scheme": "a,b", "snr_db": "1"}])
        assert b'"a,b"' in store.csv_path("sweep").read_bytes()
        assert store.read_rows("sweep")[0]["scheme"] == "a,b"

    def test_unknown_column(self, store):
        """Test that rows may not carry columns outside the header."""
        with pytest.raises(ValueError):
            store.write_rows("sweep", HEADER, [{"spans": "1", "power": "0"}])

    def test_missing_table(self, store):
        """Test reading a result set that was never written."""
        with pytest.raises(FileNotFoundError):
            store.read_rows("absent")


class TestSummaries:
    """Test JSON sidecars."""

    def test_save_then_load(self, store):
        """Test summary persistence."""
        summary = {"kind": "power", "peaks": [{"label": "EDC", "snr_db": 14.1}]}
        path = store.save_summary("sweep", summary)
        assert path.name == "sweep.summary.json"
        assert store.load_summary("sweep") == summary

    def test_missing_summary(self, store):
        """Test that a missing summary loads as None."""
        assert store.load_summary("absent") is None

    def test_corrupt_summary(self, store):
        """Test that an unreadable summary loads as None."""
        store.summary_path("sweep").write_text("{not json")
        assert store.load_summary("sweep") is None

    def test_unserializable_summary(self, store):
        """Test that non-JSON values are refused."""
        with pytest.raises(TypeError):
            store.save_summary("sweep", {"value": object()})

