"""
Experiment configuration and process settings.

Experiments are described by a JSON file parsed into ExperimentConfig; all
field names carry their unit. Process-level settings (log level, worker
count, output directory, cloud logging) come from the environment, loaded
from a .env file with python-dotenv.
"""

import json
import logging
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np
from dotenv import load_dotenv

from src.errors import ConfigError
from src.fiberchannel import AmpSpec, FiberParams, LinkSpec, SpanSpec, SsfmConfig
from src.nlc import Scheme
from src.rxchain import DEFAULT_HALF_WINDOW, TrxNoiseSpec
from src.txchain import LaserSpec, ModulationSpec, SuperchannelSpec

logger = logging.getLogger('splitnlc.labharness')

INF = float("inf")


def _snr(value: Any) -> float:
    """SNR from JSON: number, Infinity, "inf" or null (= +inf)."""
    if value is None:
        return INF
    try:
        return float(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"invalid SNR value {value!r}") from e


@dataclass(frozen=True)
class PowerSweep:
    """Launch power grid per channel in dBm (inclusive of max_dbm)."""

    min_dbm: float = -2.0
    max_dbm: float = 6.0
    step_db: float = 1.0

    def __post_init__(self):
        if self.step_db <= 0:
            raise ConfigError(f"step_db must be positive, got {self.step_db}")
        if self.max_dbm < self.min_dbm:
            raise ConfigError(f"empty power sweep [{self.min_dbm}, {self.max_dbm}]")

    @property
    def powers(self) -> Tuple[float, ...]:
        count = int(np.floor((self.max_dbm - self.min_dbm) / self.step_db + 1e-9)) + 1
        return tuple(round(self.min_dbm + i * self.step_db, 6) for i in range(count))


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Full description of a sweep campaign.

    Attributes:
        superchannel: WDM grid (uniform modulation)
        span: Span template (fiber + amplifier)
        span_counts: Link lengths in spans
        schemes: Compensation schemes to evaluate
        power_sweep: Launch power grid per channel
        trx: Transceiver noise and LO
        ssfm: Step settings shared by the channel and DBP
        tx_laser: Transmitter laser template (reseeded per channel and point)
        master_seed: Root of every derived seed
        realizations: Independent noise realizations per point
        cpe_half_window: CPE averaging half window in pilots
        compute_ber: Also count bit errors
        min_oversampling: Minimum composite samples per symbol
        guard: Relative guard band of the composite rate
        output_path: Results CSV path
    """

    superchannel: SuperchannelSpec = SuperchannelSpec()
    span: SpanSpec = SpanSpec()
    span_counts: Tuple[int, ...] = (13,)
    schemes: Tuple[Scheme, ...] = (
        Scheme.edc(),
        Scheme.tx_dbp(),
        Scheme.rx_dbp(),
        Scheme.split(),
    )
    power_sweep: PowerSweep = PowerSweep()
    trx: TrxNoiseSpec = TrxNoiseSpec()
    ssfm: SsfmConfig = SsfmConfig()
    tx_laser: LaserSpec = LaserSpec()
    master_seed: int = 0
    realizations: int = 2
    cpe_half_window: int = DEFAULT_HALF_WINDOW
    compute_ber: bool = False
    min_oversampling: int = 4
    guard: float = 0.25
    output_path: str = "results/sweep.csv"

    def __post_init__(self):
        object.__setattr__(self, "span_counts", tuple(int(n) for n in self.span_counts))
        object.__setattr__(self, "schemes", tuple(self.schemes))
        if not self.span_counts or any(n < 0 for n in self.span_counts):
            raise ConfigError(f"span_counts must be non-empty and >= 0, got {self.span_counts}")
        if not self.schemes:
            raise ConfigError("at least one scheme is required")
        if self.realizations < 1:
            raise ConfigError(f"realizations must be >= 1, got {self.realizations}")
        if self.master_seed < 0:
            raise ConfigError("master_seed must be non-negative")
        if len({mod for mod in self.superchannel.per_channel}) > 1:
            raise ConfigError("experiment configs use one modulation for every channel")
        for scheme in self.schemes:
            if not any(scheme.applies_to(n) for n in self.span_counts):
                raise ConfigError(
                    f"scheme {scheme} fits none of the span counts {self.span_counts}"
                )

    @property
    def modulation(self) -> ModulationSpec:
        return self.superchannel.per_channel[0]

    def link(self, n_spans: int) -> LinkSpec:
        """Uniform link of n_spans copies of the span template."""
        return LinkSpec.uniform(n_spans, self.span.fiber, self.span.amp)

    def points(self, n_spans: int):
        """(scheme, power index, power) triples defined for an N-span link."""
        return [
            (scheme, index, power)
            for scheme in self.schemes
            if scheme.applies_to(n_spans)
            for index, power in enumerate(self.power_sweep.powers)
        ]

    def with_overrides(
        self,
        *,
        master_seed: Optional[int] = None,
        steps_per_span: Optional[int] = None,
        output_path: Optional[str] = None,
    ) -> "ExperimentConfig":
        """Copy with CLI overrides applied."""
        changes: Dict[str, Any] = {}
        if master_seed is not None:
            changes["master_seed"] = master_seed
        if steps_per_span is not None:
            changes["ssfm"] = replace(self.ssfm, steps_per_span=steps_per_span)
        if output_path is not None:
            changes["output_path"] = output_path
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        mod = self.modulation
        fiber = self.span.fiber
        return {
            "superchannel": {
                "channel_count": self.superchannel.channel_count,
                "spacing_hz": self.superchannel.spacing,
                "center_wavelength_m": self.superchannel.center_wavelength,
                "modulation": {
                    "qam_order": mod.qam_order,
                    "symbol_rate_hz": mod.symbol_rate,
                    "roll_off": mod.roll_off,
                    "payload_symbols": mod.payload_symbols,
                    "pilot_preamble_len": mod.pilot_preamble_len,
                    "pilot_rate_inverse": mod.pilot_rate_inverse,
                    "rrc_span_symbols": mod.rrc_span_symbols,
                },
            },
            "link": {
                "span_counts": list(self.span_counts),
                "fiber": {
                    "length_km": fiber.length_km,
                    "attenuation_db_per_km": fiber.attenuation_db_per_km,
                    "dispersion_ps_per_nm_km": fiber.dispersion_D,
                    "gamma_per_w_km": fiber.gamma,
                    "manakov_factor": fiber.manakov_factor,
                    "reference_wavelength_m": fiber.reference_wavelength,
                },
                "amplifier": {
                    "gain_db": self.span.amp.gain_db,
                    "noise_figure_db": self.span.amp.noise_figure_db,
                },
            },
            "schemes": [str(scheme) for scheme in self.schemes],
            "power_sweep": {
                "min_dbm": self.power_sweep.min_dbm,
                "max_dbm": self.power_sweep.max_dbm,
                "step_db": self.power_sweep.step_db,
            },
            "trx": {
                "tx_snr_db": self.trx.tx_snr_db,
                "rx_snr_db": self.trx.rx_snr_db,
                "edge_rx_snr_offset_db": self.trx.edge_rx_snr_offset_db,
                "lo_linewidth_hz": self.trx.lo.linewidth,
                "lo_frequency_offset_hz": self.trx.lo.frequency_offset,
            },
            "tx_laser": {
                "linewidth_hz": self.tx_laser.linewidth,
                "frequency_offset_hz": self.tx_laser.frequency_offset,
            },
            "ssfm": {
                "steps_per_span": self.ssfm.steps_per_span,
                "step_distribution": self.ssfm.step_distribution,
                "nonlinear": self.ssfm.nonlinear,
            },
            "seeds": {"master": self.master_seed, "realizations": self.realizations},
            "receiver": {
                "cpe_half_window": self.cpe_half_window,
                "compute_ber": self.compute_ber,
            },
            "simulation": {"min_oversampling": self.min_oversampling, "guard": self.guard},
            "output": {"path": self.output_path},
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        """
        Build a config from its dictionary form; missing sections take defaults.

        Raises:
            ConfigError: On unknown sections or invalid values
        """
        known = {
            "superchannel", "link", "schemes", "power_sweep", "trx", "tx_laser",
            "ssfm", "seeds", "receiver", "simulation", "output",
        }
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config sections: {sorted(unknown)}")

        defaults = cls()
        try:
            sc = data.get("superchannel", {})
            md = sc.get("modulation", {})
            base_mod = defaults.modulation
            modulation = ModulationSpec(
                qam_order=int(md.get("qam_order", base_mod.qam_order)),
                symbol_rate=float(md.get("symbol_rate_hz", base_mod.symbol_rate)),
                roll_off=float(md.get("roll_off", base_mod.roll_off)),
                payload_symbols=int(md.get("payload_symbols", base_mod.payload_symbols)),
                pilot_preamble_len=int(md.get("pilot_preamble_len", base_mod.pilot_preamble_len)),
                pilot_rate_inverse=int(md.get("pilot_rate_inverse", base_mod.pilot_rate_inverse)),
                rrc_span_symbols=int(md.get("rrc_span_symbols", base_mod.rrc_span_symbols)),
            )
            superchannel = SuperchannelSpec.uniform(
                int(sc.get("channel_count", 1)),
                modulation,
                float(sc.get("spacing_hz", defaults.superchannel.spacing)),
                float(sc.get("center_wavelength_m", defaults.superchannel.center_wavelength)),
            )

            ln = data.get("link", {})
            fb = ln.get("fiber", {})
            base_fiber = FiberParams()
            fiber = FiberParams(
                length_km=float(fb.get("length_km", base_fiber.length_km)),
                attenuation_db_per_km=float(
                    fb.get("attenuation_db_per_km", base_fiber.attenuation_db_per_km)
                ),
                dispersion_D=float(fb.get("dispersion_ps_per_nm_km", base_fiber.dispersion_D)),
                gamma=float(fb.get("gamma_per_w_km", base_fiber.gamma)),
                manakov_factor=float(fb.get("manakov_factor", base_fiber.manakov_factor)),
                reference_wavelength=float(
                    fb.get("reference_wavelength_m", base_fiber.reference_wavelength)
                ),
            )
            am = ln.get("amplifier", {})
            gain = am.get("gain_db")
            amp = AmpSpec(
                gain_db=None if gain is None else float(gain),
                noise_figure_db=float(am.get("noise_figure_db", 5.0)),
            )

            sw = data.get("power_sweep", {})
            power_sweep = PowerSweep(
                float(sw.get("min_dbm", defaults.power_sweep.min_dbm)),
                float(sw.get("max_dbm", defaults.power_sweep.max_dbm)),
                float(sw.get("step_db", defaults.power_sweep.step_db)),
            )

            tr = data.get("trx", {})
            trx = TrxNoiseSpec(
                tx_snr_db=_snr(tr.get("tx_snr_db")),
                rx_snr_db=_snr(tr.get("rx_snr_db")),
                lo=LaserSpec(
                    linewidth=float(tr.get("lo_linewidth_hz", defaults.trx.lo.linewidth)),
                    frequency_offset=float(tr.get("lo_frequency_offset_hz", 0.0)),
                ),
                edge_rx_snr_offset_db=float(tr.get("edge_rx_snr_offset_db", -2.0)),
            )

            tl = data.get("tx_laser", {})
            tx_laser = LaserSpec(
                linewidth=float(tl.get("linewidth_hz", defaults.tx_laser.linewidth)),
                frequency_offset=float(tl.get("frequency_offset_hz", 0.0)),
            )

            ss = data.get("ssfm", {})
            ssfm = SsfmConfig(
                steps_per_span=int(ss.get("steps_per_span", defaults.ssfm.steps_per_span)),
                step_distribution=str(ss.get("step_distribution", "uniform")),
                nonlinear=bool(ss.get("nonlinear", True)),
            )

            seeds = data.get("seeds", {})
            receiver = data.get("receiver", {})
            simulation = data.get("simulation", {})
            schemes = data.get("schemes")

            return cls(
                superchannel=superchannel,
                span=SpanSpec(fiber, amp),
                span_counts=tuple(ln.get("span_counts", defaults.span_counts)),
                schemes=(
                    defaults.schemes
                    if schemes is None
                    else tuple(Scheme.from_label(str(s)) for s in schemes)
                ),
                power_sweep=power_sweep,
                trx=trx,
                ssfm=ssfm,
                tx_laser=tx_laser,
                master_seed=int(seeds.get("master", 0)),
                realizations=int(seeds.get("realizations", defaults.realizations)),
                cpe_half_window=int(receiver.get("cpe_half_window", DEFAULT_HALF_WINDOW)),
                compute_ber=bool(receiver.get("compute_ber", False)),
                min_oversampling=int(simulation.get("min_oversampling", 4)),
                guard=float(simulation.get("guard", 0.25)),
                output_path=str(data.get("output", {}).get("path", defaults.output_path)),
            )
        except ConfigError:
            raise
        except (TypeError, ValueError, AttributeError) as e:
            raise ConfigError(f"invalid experiment config: {e}") from e


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """
    Read an experiment config from a JSON file.

    Raises:
        ConfigError: If the file is missing, not JSON, or invalid
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        with open(path, 'r') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file {path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    config = ExperimentConfig.from_dict(data)
    logger.info(f"Loaded config {path} ({len(config.schemes)} schemes)")
    return config


def save_config(config: ExperimentConfig, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w') as f:
        json.dump(config.to_dict(), f, indent=2)
    return path


def desk_scale(
    channel_count: int = 1,
    span_counts: Tuple[int, ...] = (4, 8, 13, 16),
    steps_per_span: int = 100,
) -> ExperimentConfig:
    """
    Desk-scale defaults: 2^15 payload symbols, 2 realizations, 100 steps/span.

    Lasers are ideal so every scheme sees the same receiver DSP conditions;
    transceiver noise is off (set trx for the crossover studies).
    """
    return ExperimentConfig(
        superchannel=SuperchannelSpec.uniform(channel_count, ModulationSpec(payload_symbols=32768)),
        span=SpanSpec(),
        span_counts=span_counts,
        power_sweep=PowerSweep(-2.0, 6.0, 1.0),
        trx=TrxNoiseSpec(lo=LaserSpec(linewidth=0.0)),
        ssfm=SsfmConfig(steps_per_span=steps_per_span),
        tx_laser=LaserSpec(linewidth=0.0),
        master_seed=0,
        realizations=2,
    )


@dataclass(frozen=True)
class LabSettings:
    """Process settings from the environment."""

    log_level: str = "INFO"
    workers: int = 1
    output_dir: str = "results"
    cloud_logging: bool = False
    gcp_project: Optional[str] = None


def _flag(value: Optional[str]) -> bool:
    return (value or "").strip().lower() in ("1", "true", "yes", "on")


def load_settings(env_file: Optional[Union[str, Path]] = None) -> LabSettings:
    """
    Load process settings from a .env file and the environment.

    Keys: SPLITNLC_LOG_LEVEL, SPLITNLC_WORKERS, SPLITNLC_OUTPUT_DIR,
    SPLITNLC_CLOUD_LOGGING, SPLITNLC_GCP_PROJECT.
    """
    load_dotenv(env_file)

    workers = os.getenv('SPLITNLC_WORKERS', '1')
    try:
        worker_count = max(1, int(workers))
    except ValueError as e:
        raise ConfigError(f"SPLITNLC_WORKERS must be an integer, got {workers!r}") from e

    return LabSettings(
        log_level=os.getenv('SPLITNLC_LOG_LEVEL', 'INFO').upper(),
        workers=worker_count,
        output_dir=os.getenv('SPLITNLC_OUTPUT_DIR', 'results'),
        cloud_logging=_flag(os.getenv('SPLITNLC_CLOUD_LOGGING')),
        gcp_project=os.getenv('SPLITNLC_GCP_PROJECT') or os.getenv('GOOGLE_CLOUD_PROJECT'),
    )


__all__ = [
    "ExperimentConfig",
    "PowerSweep",
    "LabSettings",
    "load_config",
    "save_config",
    "load_settings",
    "desk_scale",
]
