"""
Experiment orchestration.

This package contains:
- Config: ExperimentConfig JSON round trip, desk-scale defaults and
  environment settings
- Records: MeasurementRecord and the results CSV layout
- Runner: the end-to-end chain of one sweep point
- Sweeps: launch-power, split-ratio and distance campaigns
- Peaks: realization averaging and quadratic peak extraction
- Calibration: back-to-back transceiver noise calibration
- Figures: per-figure CSV series
"""

from src.labharness.calibration import calibrate_b2b, measure_b2b, split_levels
from src.labharness.config import (
    ExperimentConfig,
    LabSettings,
    PowerSweep,
    desk_scale,
    load_config,
    load_settings,
    save_config,
)
from src.labharness.figures import write_figure_series
from src.labharness.peaks import (
    CurvePoint,
    PeakEstimate,
    SchemePeak,
    average_realizations,
    find_peak,
    scheme_peaks,
)
from src.labharness.records import (
    CSV_HEADER,
    MeasurementRecord,
    from_rows,
    sort_records,
    to_rows,
)
from src.labharness.runner import point_seed, run_point
from src.labharness.sweeps import (
    DISTANCE_SCHEMES,
    PointFailure,
    SplitGain,
    SweepResult,
    build_jobs,
    run_jobs,
    split_gains,
    sweep_distance,
    sweep_power,
    sweep_split,
)

__all__ = [
    # Types
    'ExperimentConfig',
    'PowerSweep',
    'LabSettings',
    'MeasurementRecord',
    'SweepResult',
    'PointFailure',
    'SplitGain',
    'PeakEstimate',
    'CurvePoint',
    'SchemePeak',
    # Operations
    'run_point',
    'sweep_power',
    'sweep_split',
    'sweep_distance',
    'calibrate_b2b',
    'write_figure_series',
    'find_peak',
    # Helpers
    'load_config',
    'save_config',
    'load_settings',
    'desk_scale',
    'point_seed',
    'build_jobs',
    'run_jobs',
    'split_gains',
    'average_realizations',
    'scheme_peaks',
    'measure_b2b',
    'split_levels',
    'sort_records',
    'to_rows',
    'from_rows',
    'CSV_HEADER',
    'DISTANCE_SCHEMES',
]
