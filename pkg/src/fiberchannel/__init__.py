"""
Forward fiber channel.

This package contains:
- Params: fiber, amplifier, span, link and SSFM settings
- SSFM: symmetric split-step Manakov integration (forward and inverted)
- Amplifier: EDFA gain with ASE loading and analytic OSNR
- Link: span cascade propagation and closed-form linear response
"""

from src.fiberchannel.amplifier import (
    OSNR_REFERENCE_BANDWIDTH,
    amplify,
    ase_noise_power,
    ase_psd_per_pol,
    predicted_osnr_db,
    spontaneous_emission_factor,
)
from src.fiberchannel.link import apply_linear_link, linear_response, propagate_link
from src.fiberchannel.params import (
    REFERENCE_WAVELENGTH,
    STEP_DISTRIBUTIONS,
    AmpSpec,
    FiberParams,
    LinkSpec,
    SpanSpec,
    SsfmConfig,
    spans_of,
)
from src.fiberchannel.ssfm import linear_exponent, propagate_fiber, ssfm_step, step_sizes

__all__ = [
    # Types
    'FiberParams',
    'AmpSpec',
    'SpanSpec',
    'LinkSpec',
    'SsfmConfig',
    # Operations
    'ssfm_step',
    'propagate_fiber',
    'amplify',
    'propagate_link',
    # Analytic helpers
    'step_sizes',
    'linear_exponent',
    'linear_response',
    'apply_linear_link',
    'ase_psd_per_pol',
    'ase_noise_power',
    'spontaneous_emission_factor',
    'predicted_osnr_db',
    'spans_of',
    'REFERENCE_WAVELENGTH',
    'STEP_DISTRIBUTIONS',
    'OSNR_REFERENCE_BANDWIDTH',
]
