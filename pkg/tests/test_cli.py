"""
Tests for the CLI module.

This module tests argument parsing, subcommand dispatch, exit codes and
output formatting of the splitnlc command.
"""

import json
import os
import tempfile
from dataclasses import replace
from unittest.mock import patch

import pytest

from src.fiberchannel import SsfmConfig
from src.infrastructure.results_store import ResultStore
from src.labharness import (
    CSV_HEADER,
    ExperimentConfig,
    MeasurementRecord,
    PowerSweep,
    save_config,
    to_rows,
)
from src.main import create_parser, print_records, run_cli, save_json_output
from src.nlc import Scheme
from src.rxchain import TrxNoiseSpec
from src.txchain import LaserSpec, ModulationSpec, SuperchannelSpec

quiet_estimates = pytest.mark.filterwarnings("ignore::src.errors.StatisticalAccuracyWarning")


def tiny_config():
    """Small single-channel experiment."""
    mod = ModulationSpec(qam_order=16, payload_symbols=4096, pilot_preamble_len=256)
    return ExperimentConfig(
        superchannel=SuperchannelSpec.uniform(1, mod),
        span_counts=(0, 2),
        schemes=(Scheme.edc(), Scheme.rx_dbp()),
        power_sweep=PowerSweep(0.0, 1.0, 1.0),
        trx=TrxNoiseSpec(25.0, 25.0, lo=LaserSpec(linewidth=0.0)),
        ssfm=SsfmConfig(steps_per_span=10),
        tx_laser=LaserSpec(linewidth=0.0),
        realizations=1,
    )


@pytest.fixture
def config_file(tmp_path):
    """Small experiment config written to disk."""
    return str(save_config(tiny_config(), tmp_path / "tiny.json"))


def sample_records():
    return [
        MeasurementRecord("EDC", 2, 0, 153.92, p, 0, 14.0 - (p - 1.0) ** 2, 14.0, 14.0, 1, 0)
        for p in (-1.0, 0.0, 1.0, 2.0, 3.0)
    ]


class TestCreateParser:
    """Test the create_parser function."""

    def test_parser_creation(self):
        """Test that parser is created successfully."""
        parser = create_parser()
        assert parser is not None
        assert 'Split-NLC Lab' in parser.description

    def test_run_arguments(self):
        """Test run subcommand arguments."""
        parser = create_parser()
        args = parser.parse_args(['run', '--spans', '13', '--scheme', '5:8', '--power', '2.5'])
        assert args.command == 'run'
        assert args.spans == 13
        assert args.scheme == '5:8'
        assert args.power == 2.5

    def test_run_defaults(self):
        """Test default scheme and power."""
        parser = create_parser()
        args = parser.parse_args(['run', '--spans', '0'])
        assert args.scheme == 'EDC'
        assert args.power == 0.0
        assert args.realization == 0

    def test_common_flags(self):
        """Test flags shared by every subcommand."""
        parser = create_parser()
        args = parser.parse_args(
            ['sweep', 'power', '--workers', '4', '--seed', '7', '--steps-per-span', '50', '-q']
        )
        assert args.kind == 'power'
        assert args.workers == 4
        assert args.seed == 7
        assert args.steps_per_span == 50
        assert args.quiet

    def test_split_points(self):
        """Test the split sweep arguments."""
        parser = create_parser()
        args = parser.parse_args(['sweep', 'split', '--spans', '8', '--tx-spans', '0', '4', '8'])
        assert args.tx_spans == [0, 4, 8]

    def test_invalid_campaign(self):
        """Test that unknown campaigns are rejected by argparse."""
        parser = create_parser()
        with pytest.raises(SystemExit):
            parser.parse_args(['sweep', 'spectrum'])

    def test_subcommand_required(self):
        """Test that a subcommand must be given."""
        parser = create_parser()
        with pytest.raises(SystemExit):
            parser.parse_args([])


class TestRunCli:
    """Test subcommand execution and exit codes."""

    @quiet_estimates
    def test_run_back_to_back(self, config_file, capsys):
        """Test a single back-to-back point."""
        code = run_cli(['run', '--config', config_file, '--spans', '0', '-q'])
        assert code == 0
        captured = capsys.readouterr()
        assert 'EDC' in captured.out

    @quiet_estimates
    def test_run_writes_results(self, config_file, tmp_path):
        """Test that --out stores the point as a results CSV."""
        out = tmp_path / "point.csv"
        code = run_cli(['run', '--config', config_file, '--spans', '0', '--out', str(out), '-q'])
        assert code == 0
        rows = ResultStore(tmp_path).read_rows("point")
        assert len(rows) == 1
        assert list(rows[0]) == list(CSV_HEADER)

    def test_missing_config(self, tmp_path, capsys):
        """Test exit code 2 for a missing config file."""
        code = run_cli(['run', '--config', str(tmp_path / 'absent.json'), '--spans', '0'])
        assert code == 2
        assert 'Error:' in capsys.readouterr().err

    def test_bad_scheme(self, config_file):
        """Test exit code 2 for an unknown scheme keyword."""
        assert run_cli(['run', '--config', config_file, '--spans', '2', '--scheme', 'Hybrid']) == 2

    def test_split_sweep_needs_spans(self, config_file):
        """Test that the split sweep requires a link length."""
        assert run_cli(['sweep', 'split', '--config', config_file]) == 2

    def test_invalid_worker_count(self, config_file):
        """Test that zero workers is a config error."""
        assert run_cli(['sweep', 'power', '--config', config_file, '--workers', '0']) == 2

    def test_predict_from_coefficients(self, config_file, tmp_path, capsys):
        """Test the analytic budget with explicit coefficients."""
        out = tmp_path / "predict.json"
        code = run_cli(
            ['predict', '--config', config_file, '--eta', '800', '--xi', '40', '--out', str(out)]
        )
        assert code == 0
        with open(out, 'r') as f:
            data = json.load(f)
        assert data["coefficients"]["eta_per_w2"] == 800.0
        assert {optimum["scheme"] for optimum in data["optima"]} == {"EDC", "0:2"}
        assert "crossover" in data
        assert data["label"] in capsys.readouterr().out

    def test_predict_without_calibration(self, config_file):
        """Test exit code 4 when the budget is uncalibrated."""
        assert run_cli(['predict', '--config', config_file]) == 4

    def test_predict_reads_sweep_summary(self, tmp_path, capsys):
        """Test that predict evaluates the link stored with the results."""
        store = ResultStore(tmp_path)
        store.write_rows("sweep", CSV_HEADER, to_rows(sample_records()))
        edc_only = replace(tiny_config(), schemes=(Scheme.edc(),))
        store.save_summary("sweep", {"kind": "power", "config": edc_only.to_dict()})
        out = tmp_path / "predict.json"
        code = run_cli(['predict', '--results', str(tmp_path / 'sweep.csv'), '--out', str(out)])
        assert code == 0
        with open(out, 'r') as f:
            data = json.load(f)
        assert data["coefficients"]["eta_per_w2"] > 0
        assert [(optimum["spans"], optimum["scheme"]) for optimum in data["optima"]] == [
            (2, "EDC")
        ]
        assert "P_opt" in capsys.readouterr().out

    def test_predict_summary_without_spans(self, tmp_path):
        """Test exit code 2 when the stored link has no spans to predict."""
        store = ResultStore(tmp_path)
        store.write_rows("sweep", CSV_HEADER, to_rows(sample_records()))
        no_spans = replace(tiny_config(), span_counts=(0,), schemes=(Scheme.edc(),))
        store.save_summary("sweep", {"config": no_spans.to_dict()})
        assert run_cli(['predict', '--results', str(tmp_path / 'sweep.csv')]) == 2

    def test_plot(self, tmp_path, capsys):
        """Test conversion of a results CSV into figure series."""
        ResultStore(tmp_path).write_rows("sweep", CSV_HEADER, to_rows(sample_records()))
        out_dir = tmp_path / "figures"
        code = run_cli(['plot', '--results', str(tmp_path / 'sweep.csv'), '--out', str(out_dir)])
        assert code == 0
        assert (out_dir / "snr_vs_power.csv").exists()
        assert 'snr_vs_distance' in capsys.readouterr().out

    def test_plot_missing_results(self, tmp_path):
        """Test exit code 2 for a missing results file."""
        assert run_cli(['plot', '--results', str(tmp_path / 'none.csv')]) == 2

    @patch.dict('os.environ', {'SPLITNLC_WORKERS': 'several'})
    def test_invalid_environment(self, config_file):
        """Test that broken settings are reported as a config error."""
        assert run_cli(['run', '--config', config_file, '--spans', '0']) == 2


class TestPrintRecords:
    """Test the print_records function."""

    def test_print_records_normal(self, capsys):
        """Test table output with header."""
        print_records(sample_records())
        captured = capsys.readouterr()
        assert 'SNR_x' in captured.out
        assert '14.00' in captured.out

    def test_print_records_quiet(self, capsys):
        """Test table output without header."""
        print_records(sample_records(), quiet=True)
        captured = capsys.readouterr()
        assert 'SNR_x' not in captured.out
        assert len(captured.out.strip().splitlines()) == 5

    def test_print_records_empty(self, capsys):
        """Test printing with no records."""
        print_records([])
        captured = capsys.readouterr()
        assert 'No records produced.' in captured.out


class TestSaveJsonOutput:
    """Test the save_json_output function."""

    def test_save_json_success(self):
        """Test successful JSON file save."""
        data = {'test': 'data', 'count': 123}

        with tempfile.NamedTemporaryFile(mode='w', delete=False, suffix='.json') as f:
            temp_path = f.name

        try:
            save_json_output(data, temp_path, verbose=False)

            with open(temp_path, 'r') as f:
                loaded_data = json.load(f)

            assert loaded_data == data
        finally:
            if os.path.exists(temp_path):
                os.remove(temp_path)

    def test_save_json_verbose(self, capsys):
        """Test JSON save with verbose output."""
        data = {'test': 'data'}

        with tempfile.NamedTemporaryFile(mode='w', delete=False, suffix='.json') as f:
            temp_path = f.name

        try:
            save_json_output(data, temp_path, verbose=True)

            captured = capsys.readouterr()
            assert 'Results saved to' in captured.out
        finally:
            if os.path.exists(temp_path):
                os.remove(temp_path)
