"""
Physical description of the transmission line.
"""

from dataclasses import dataclass, replace
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import constants

from src.errors import ParameterError

REFERENCE_WAVELENGTH = 1553e-9
ULL_SPAN_KM = 76.96
ULL_SPAN_LOSS_DB = 12.2

STEP_DISTRIBUTIONS = ("uniform", "logarithmic")


@dataclass(frozen=True)
class FiberParams:
    """
    Single-mode fiber span.

    Attributes:
        length_km: Span length in km
        attenuation_db_per_km: Power attenuation in dB/km
        dispersion_D: Dispersion parameter in ps/(nm km)
        gamma: Nonlinear coefficient in 1/(W km)
        manakov_factor: Polarization-averaged nonlinearity factor
        reference_wavelength: Wavelength in m at which D is specified
    """

    length_km: float = ULL_SPAN_KM
    attenuation_db_per_km: float = ULL_SPAN_LOSS_DB / ULL_SPAN_KM
    dispersion_D: float = 16.7
    gamma: float = 1.1
    manakov_factor: float = 8.0 / 9.0
    reference_wavelength: float = REFERENCE_WAVELENGTH

    def __post_init__(self):
        if self.length_km <= 0:
            raise ParameterError(f"length_km must be positive, got {self.length_km}")
        if self.attenuation_db_per_km < 0:
            raise ParameterError("attenuation must be >= 0")
        if self.gamma < 0:
            raise ParameterError("gamma must be >= 0")
        if self.reference_wavelength <= 0:
            raise ParameterError("reference_wavelength must be positive")

    @property
    def beta2_s2_per_km(self) -> float:
        """Group-velocity dispersion -D*lambda^2/(2*pi*c) in s^2/km."""
        d_si = self.dispersion_D * 1e-6  # ps/(nm km) -> s/m^2
        beta2_per_m = -d_si * self.reference_wavelength ** 2 / (2.0 * np.pi * constants.c)
        return beta2_per_m * 1e3

    @property
    def alpha_per_km(self) -> float:
        """Linear power attenuation coefficient in 1/km."""
        return self.attenuation_db_per_km * np.log(10.0) / 10.0

    @property
    def span_loss_db(self) -> float:
        return self.attenuation_db_per_km * self.length_km

    @property
    def nonlinear_coefficient(self) -> float:
        """gamma times the Manakov factor, in 1/(W km)."""
        return self.gamma * self.manakov_factor

    def effective_length(self, h_km: float) -> float:
        """Loss-weighted length (1 - exp(-alpha h)) / alpha of a step in km."""
        alpha = self.alpha_per_km
        if alpha == 0:
            return h_km
        return -np.expm1(-alpha * h_km) / alpha


@dataclass(frozen=True)
class AmpSpec:
    """
    EDFA.

    Attributes:
        gain_db: Gain in dB; None means "compensate the preceding span loss"
        noise_figure_db: Noise figure in dB; -inf disables ASE
        prng_seed: ASE seed when used standalone
    """

    gain_db: Optional[float] = None
    noise_figure_db: float = 5.0
    prng_seed: int = 0

    def __post_init__(self):
        if self.gain_db is not None and self.gain_db < 0:
            raise ParameterError(f"gain_db must be >= 0, got {self.gain_db}")
        if np.isnan(self.noise_figure_db):
            raise ParameterError("noise_figure_db must not be NaN")

    @property
    def gain_linear(self) -> float:
        return 10.0 ** ((self.gain_db or 0.0) / 10.0)

    @property
    def adds_noise(self) -> bool:
        return bool(self.gain_db) and np.isfinite(self.noise_figure_db)


@dataclass(frozen=True)
class SpanSpec:
    """Fiber span followed by its amplifier."""

    fiber: FiberParams = FiberParams()
    amp: AmpSpec = AmpSpec()

    def __post_init__(self):
        if self.amp.gain_db is None:
            object.__setattr__(self, "amp", replace(self.amp, gain_db=self.fiber.span_loss_db))

    @property
    def is_transparent(self) -> bool:
        return bool(np.isclose(self.amp.gain_db, self.fiber.span_loss_db, atol=1e-9))


@dataclass(frozen=True)
class LinkSpec:
    """
    Ordered cascade of spans.

    Attributes:
        spans: Spans in physical order
        center_frequency: Optical carrier frequency in Hz
    """

    spans: Tuple[SpanSpec, ...]
    center_frequency: float = constants.c / REFERENCE_WAVELENGTH

    def __post_init__(self):
        object.__setattr__(self, "spans", tuple(self.spans))
        if not self.spans:
            raise ParameterError("a link needs at least one span")
        wavelengths = {span.fiber.reference_wavelength for span in self.spans}
        if len(wavelengths) > 1:
            raise ParameterError("all spans must share the reference wavelength")

    @classmethod
    def uniform(
        cls,
        n_spans: int,
        fiber: FiberParams = FiberParams(),
        amp: AmpSpec = AmpSpec(),
    ) -> "LinkSpec":
        """N identical spans, carrier at the fiber's reference wavelength."""
        if n_spans < 1:
            raise ParameterError(f"n_spans must be >= 1, got {n_spans}")
        span = SpanSpec(fiber, amp)
        return cls((span,) * n_spans, constants.c / fiber.reference_wavelength)

    @property
    def n_spans(self) -> int:
        return len(self.spans)

    @property
    def distance_km(self) -> float:
        return float(sum(span.fiber.length_km for span in self.spans))

    @property
    def total_dispersion(self) -> float:
        """Accumulated beta2 * L in s^2."""
        return float(sum(span.fiber.beta2_s2_per_km * span.fiber.length_km for span in self.spans))

    @property
    def is_transparent(self) -> bool:
        return all(span.is_transparent for span in self.spans)


@dataclass(frozen=True)
class SsfmConfig:
    """
    Split-step integration settings.

    Attributes:
        steps_per_span: Number of steps per span
        scheme: Step scheme; only "symmetric" is supported
        step_distribution: "uniform" or "logarithmic" (constant nonlinear phase per step)
        nonlinear: Include the Kerr step (False gives linear-only propagation)
    """

    steps_per_span: int = 1000
    scheme: str = "symmetric"
    step_distribution: str = "uniform"
    nonlinear: bool = True

    def __post_init__(self):
        if self.steps_per_span < 1:
            raise ParameterError(f"steps_per_span must be >= 1, got {self.steps_per_span}")
        if self.scheme != "symmetric":
            raise ParameterError(f"unsupported SSFM scheme {self.scheme!r}")
        if self.step_distribution not in STEP_DISTRIBUTIONS:
            raise ParameterError(
                f"step_distribution must be one of {STEP_DISTRIBUTIONS}, "
                f"got {self.step_distribution!r}"
            )


def spans_of(link_or_spans) -> Sequence[SpanSpec]:
    """Span sequence of a LinkSpec or of an explicit span list."""
    if isinstance(link_or_spans, LinkSpec):
        return link_or_spans.spans
    return tuple(link_or_spans)


__all__ = [
    "FiberParams",
    "AmpSpec",
    "SpanSpec",
    "LinkSpec",
    "SsfmConfig",
    "spans_of",
    "REFERENCE_WAVELENGTH",
    "STEP_DISTRIBUTIONS",
]
