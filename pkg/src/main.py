#!/usr/bin/env python3
"""
Command-line interface for the split-NLC lab.

Subcommands:
    run        simulate one sweep point
    sweep      power | split | distance campaigns
    calibrate  back-to-back transceiver noise calibration
    predict    analytic budget (optimum power, SNR, crossover distance)
    plot       per-figure CSV series from a results file

Exit codes: 0 success, 2 config error, 3 numerical error, 4 sync or
calibration failure.
"""

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.analytic import (
    BudgetCoefficients,
    ase_per_span,
    budget_optimum,
    calibrate_budget,
    crossover_distance,
)
from src.errors import ConfigError, SplitNlcError
from src.infrastructure.logging import get_logger, track_performance
from src.infrastructure.results_store import ResultStore
from src.labharness import (
    ExperimentConfig,
    LabSettings,
    SweepResult,
    calibrate_b2b,
    desk_scale,
    from_rows,
    load_config,
    load_settings,
    run_point,
    save_config,
    sweep_distance,
    sweep_power,
    sweep_split,
    write_figure_series,
)
from src.labharness.peaks import SchemePeak
from src.labharness.records import MeasurementRecord
from src.nlc import Scheme

logger = logging.getLogger('splitnlc.cli')


def create_parser() -> argparse.ArgumentParser:
    """
    Create argument parser for the CLI.

    Returns:
        Configured ArgumentParser instance
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '--config',
        type=str,
        help='Experiment config JSON (default: desk-scale defaults)'
    )
    common.add_argument(
        '--seed',
        type=int,
        help='Master seed override'
    )
    common.add_argument(
        '--workers',
        type=int,
        help='Worker processes (default: SPLITNLC_WORKERS or 1)'
    )
    common.add_argument(
        '--steps-per-span',
        type=int,
        help='SSFM steps per span override'
    )
    common.add_argument(
        '--out',
        type=str,
        help='Output path (CSV for sweeps, JSON for calibrate/predict, directory for plot)'
    )
    common.add_argument(
        '--verbose', '-v',
        action='store_true',
        help='Debug logging'
    )
    common.add_argument(
        '--quiet', '-q',
        action='store_true',
        help='Only print the final table'
    )

    parser = argparse.ArgumentParser(
        prog='splitnlc',
        description='Split-NLC Lab - coherent WDM transmission with split digital backpropagation',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  splitnlc run --spans 13 --scheme 5:8 --power 2
  splitnlc sweep power --config configs/desk_scale.json --workers 4
  splitnlc sweep split --spans 8 --out results/split8.csv
  splitnlc calibrate --target 22 --tx-share 0.5 --out configs/calibrated.json
  splitnlc predict --results results/distance.csv
  splitnlc plot --results results/sweep.csv --out results/figures
        """
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    run = subparsers.add_parser('run', parents=[common], help='Simulate a single point')
    run.add_argument('--spans', type=int, required=True, help='Span count N (0 = back-to-back)')
    run.add_argument(
        '--scheme',
        type=str,
        default='EDC',
        help='EDC, TxDBP, RxDBP, k:m, Split(k) or Split(ratio) (default: EDC)'
    )
    run.add_argument('--power', type=float, default=0.0, help='Launch power per channel in dBm')
    run.add_argument('--realization', type=int, default=0, help='Realization index')

    sweep = subparsers.add_parser('sweep', parents=[common], help='Run a sweep campaign')
    sweep.add_argument('kind', choices=['power', 'split', 'distance'], help='Campaign')
    sweep.add_argument('--spans', type=int, help='Link length for the split sweep')
    sweep.add_argument(
        '--tx-spans',
        type=int,
        nargs='+',
        help='Split points k for the split sweep (default: 0..N)'
    )

    calibrate = subparsers.add_parser(
        'calibrate', parents=[common], help='Calibrate back-to-back transceiver noise'
    )
    calibrate.add_argument('--target', type=float, required=True, help='Target B2B SNR in dB')
    calibrate.add_argument(
        '--tx-share',
        type=float,
        default=0.5,
        help='Fraction of the noise power from the transmitter (default: 0.5)'
    )

    predict = subparsers.add_parser('predict', parents=[common], help='Analytic SNR budget')
    predict.add_argument('--results', type=str, help='Sweep CSV to calibrate the budget from')
    predict.add_argument('--eta', type=float, help='Signal-signal NLI coefficient in 1/W^2')
    predict.add_argument('--xi', type=float, help='Signal-ASE beating coefficient in 1/W^2')

    plot = subparsers.add_parser('plot', parents=[common], help='Write per-figure CSV series')
    plot.add_argument('--results', type=str, required=True, help='Sweep CSV to convert')
    plot.add_argument('--channel', type=int, help='Channel index (default: center)')

    return parser


def configure_logging(args: argparse.Namespace, settings: LabSettings) -> None:
    """Install the central logger with the level from flags or settings."""
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    else:
        level = getattr(logging, settings.log_level, logging.INFO)
    lab_logger = get_logger(
        project_id=settings.gcp_project,
        enable_cloud_logging=settings.cloud_logging,
        level=level,
    )
    lab_logger.set_level(level)


def load_experiment(args: argparse.Namespace, settings: LabSettings) -> ExperimentConfig:
    """
    Experiment config with CLI overrides applied.

    Flags override settings, settings override config defaults.
    """
    config = load_config(args.config) if args.config else desk_scale()
    return _with_cli_overrides(config, args, settings)


def _with_cli_overrides(
    config: ExperimentConfig, args: argparse.Namespace, settings: LabSettings
) -> ExperimentConfig:
    output_path = args.out
    if output_path is None:
        output_path = str(Path(settings.output_dir) / Path(config.output_path).name)
    return config.with_overrides(
        master_seed=args.seed,
        steps_per_span=args.steps_per_span,
        output_path=output_path,
    )


def open_results(results: str) -> Tuple[ResultStore, str]:
    """Store and result-set name of a results CSV path."""
    path = Path(results)
    if not path.exists():
        raise ConfigError(f"results file not found: {path}")
    return ResultStore(path.parent), path.stem


def load_sweep_config(args: argparse.Namespace, settings: LabSettings) -> ExperimentConfig:
    """
    Experiment config for commands that read a results file.

    Without --config, the config recorded in the sweep summary sidecar is
    used so the budget is evaluated on the link that produced the records.
    """
    if args.results and not args.config:
        store, name = open_results(args.results)
        summary = store.load_summary(name)
        if summary and "config" in summary:
            logger.info(f"Using the experiment config stored with {name}")
            config = ExperimentConfig.from_dict(summary["config"])
            return _with_cli_overrides(config, args, settings)
    return load_experiment(args, settings)


def worker_count(args: argparse.Namespace, settings: LabSettings) -> int:
    workers = args.workers if args.workers is not None else settings.workers
    if workers < 1:
        raise ConfigError(f"--workers must be >= 1, got {workers}")
    return workers


def save_json_output(data: Dict[str, Any], output_file: str, verbose: bool = False) -> None:
    """
    Save a result dictionary as JSON.

    Args:
        data: JSON-ready data
        output_file: Output file path
        verbose: Print the saved path
    """
    path = Path(output_file)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w') as f:
        json.dump(data, f, indent=2)
    if verbose:
        print(f"Results saved to: {path}")


def print_records(records: Sequence[MeasurementRecord], quiet: bool = False) -> None:
    """Print one line per channel of each point."""
    if not records:
        print("No records produced.")
        return
    if not quiet:
        print(
            f"{'N':>4} {'scheme':>8} {'P [dBm]':>8} {'ch':>3} "
            f"{'SNR':>8} {'SNR_x':>8} {'SNR_y':>8}"
        )
    for r in records:
        print(
            f"{r.spans:>4} {r.label:>8} {r.power_dbm:>8.2f} {r.channel:>3} "
            f"{r.snr_db:>8.2f} {r.snr_x_db:>8.2f} {r.snr_y_db:>8.2f}"
        )


def print_peaks(peaks: Sequence[SchemePeak]) -> None:
    """Print the peak-SNR table of a sweep."""
    print(f"\n{'N':>4} {'km':>8} {'scheme':>8} {'P_opt [dBm]':>12} {'peak SNR [dB]':>14}")
    for peak in peaks:
        marker = '' if peak.fitted else ' (grid)'
        print(
            f"{peak.spans:>4} {peak.distance_km:>8.1f} {peak.label:>8} "
            f"{peak.power_dbm:>12.2f} {peak.snr_db:>14.2f}{marker}"
        )


def print_sweep(result: SweepResult, quiet: bool = False) -> None:
    if not quiet:
        print_records(result.records)
    print_peaks(result.peaks)
    for gain in result.gains:
        print(f"  {gain.label:>8}: {gain.gain_db:+.2f} dB over EDC")
    if result.crossover is not None:
        if result.crossover.found:
            print(
                f"\nTRX/ASE crossover: {result.crossover.n_spans} spans "
                f"({result.crossover.distance_km:.0f} km), {result.crossover.label}"
            )
        else:
            print(f"\nNo TRX/ASE crossover within {result.crossover.max_spans} spans")
    if result.failures:
        print(f"\n{len(result.failures)} point(s) failed; see the summary file.")


@track_performance("cli", "run")
def command_run(args: argparse.Namespace, settings: LabSettings) -> None:
    config = load_experiment(args, settings)
    scheme = Scheme.from_label(args.scheme)
    records = run_point(
        config, args.spans, scheme, args.power, config.master_seed, args.realization
    )
    print_records(records, args.quiet)
    if args.out:
        SweepResult("run", records).write(args.out, config)


@track_performance("cli", "sweep")
def command_sweep(args: argparse.Namespace, settings: LabSettings) -> None:
    config = load_experiment(args, settings)
    workers = worker_count(args, settings)
    if args.kind == 'power':
        result = sweep_power(config, workers)
    elif args.kind == 'split':
        if args.spans is None:
            raise ConfigError("sweep split needs --spans")
        result = sweep_split(config, args.spans, args.tx_spans, workers)
    else:
        result = sweep_distance(config, workers)

    path = result.write(config.output_path, config)
    print_sweep(result, args.quiet)
    print(f"\nResults saved to: {path}")


@track_performance("cli", "calibrate")
def command_calibrate(args: argparse.Namespace, settings: LabSettings) -> None:
    config = load_experiment(args, settings)
    trx = calibrate_b2b(config, args.target, args.tx_share)
    print(f"tx_snr_db = {trx.tx_snr_db:.3f}")
    print(f"rx_snr_db = {trx.rx_snr_db:.3f}")
    if args.out:
        path = save_config(replace(config, trx=trx), args.out)
        print(f"Calibrated config saved to: {path}")


def _predict_coefficients(
    args: argparse.Namespace, config: ExperimentConfig
) -> BudgetCoefficients:
    longest = max(config.span_counts)
    if longest == 0:
        raise ConfigError("predict needs at least one span count > 0")
    link = config.link(longest)
    symbol_rate = config.superchannel.symbol_rate
    if args.results:
        store, name = open_results(args.results)
        records = from_rows(store.read_rows(name))
        return calibrate_budget(records, link, config.trx, symbol_rate)
    return BudgetCoefficients(ase_per_span(link, symbol_rate), args.eta, args.xi)


@track_performance("cli", "predict")
def command_predict(args: argparse.Namespace, settings: LabSettings) -> None:
    config = load_sweep_config(args, settings)
    coeffs = _predict_coefficients(args, config)
    optima: List[Dict[str, Any]] = []
    for n_spans in config.span_counts:
        if n_spans == 0:
            continue
        link = config.link(n_spans)
        for scheme in config.schemes:
            if not scheme.applies_to(n_spans):
                continue
            optimum = budget_optimum(link, scheme, config.trx, coeffs)
            optima.append(
                {
                    "spans": n_spans,
                    "distance_km": link.distance_km,
                    "scheme": optimum.scheme,
                    "p_opt_dbm": optimum.p_opt_dbm,
                    "snr_db": optimum.snr_db,
                }
            )
            print(
                f"{n_spans:>4} {optimum.scheme:>8}: P_opt {optimum.p_opt_dbm:6.2f} dBm, "
                f"SNR {optimum.snr_db:6.2f} dB"
            )

    output: Dict[str, Any] = {"label": coeffs.label, "coefficients": coeffs.to_dict()}
    output["optima"] = optima
    if config.trx.b2b_snr_db != float('inf'):
        crossover = crossover_distance(config.trx, coeffs, config.span.fiber.length_km)
        output["crossover"] = {"n_spans": crossover.n_spans, "distance_km": crossover.distance_km}
        if crossover.found:
            print(f"crossover: {crossover.n_spans} spans ({crossover.distance_km:.0f} km)")
        else:
            print(f"no crossover within {crossover.max_spans} spans")
    print(f"({coeffs.label})")
    if args.out:
        save_json_output(output, args.out, verbose=not args.quiet)


@track_performance("cli", "plot")
def command_plot(args: argparse.Namespace, settings: LabSettings) -> None:
    store, name = open_results(args.results)
    records = from_rows(store.read_rows(name))
    out_dir = args.out or str(Path(settings.output_dir) / 'figures')
    written = write_figure_series(records, out_dir, args.channel)
    for name, series in sorted(written.items()):
        print(f"{name}: {series}")


COMMANDS = {
    'run': command_run,
    'sweep': command_sweep,
    'calibrate': command_calibrate,
    'predict': command_predict,
    'plot': command_plot,
}


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments and execute one subcommand.

    Returns:
        Process exit code
    """
    parser = create_parser()
    args = parser.parse_args(argv)

    try:
        settings = load_settings()
        configure_logging(args, settings)
        COMMANDS[args.command](args, settings)
        return 0
    except SplitNlcError as e:
        print(f"Error: {e}", file=sys.stderr)
        return e.exit_code


def main():
    """Main entry point for the splitnlc command."""
    sys.exit(run_cli())


if __name__ == '__main__':
    main()
