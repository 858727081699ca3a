"""
Signal representation and DSP primitives shared by all modules.

This package contains:
- DualPolSignal: sqrt-watt dual-polarization baseband waveform
- Power helpers: set_mean_power, dBm conversions, NMSE, PAPR
- Spectral operations: FFT filtering, band limiting, frequency shifting, resampling
- RRC pulse shaping and matched filtering
- Seed derivation for reproducible random stages
"""

from src.sigkit.filters import (
    RrcSpec,
    matched_filter,
    pulse_shape,
    raised_cosine_spectrum,
    rrc_response,
    rrc_taps,
)
from src.sigkit.seeding import complex_gaussian, derive_seed, rng_for
from src.sigkit.signal import (
    DualPolSignal,
    as_array,
    dbm_to_watt,
    nmse_db,
    papr_db,
    set_mean_power,
    watt_to_dbm,
)
from src.sigkit.spectral import (
    OCCUPIED_FRACTION,
    bandlimit,
    fft_filter,
    frequency_grid,
    frequency_shift,
    occupied_band,
    occupied_bandwidth,
    resample,
)

__all__ = [
    'DualPolSignal',
    'RrcSpec',
    'rrc_taps',
    'rrc_response',
    'raised_cosine_spectrum',
    'pulse_shape',
    'matched_filter',
    'frequency_grid',
    'fft_filter',
    'bandlimit',
    'occupied_band',
    'occupied_bandwidth',
    'frequency_shift',
    'resample',
    'set_mean_power',
    'nmse_db',
    'papr_db',
    'as_array',
    'dbm_to_watt',
    'watt_to_dbm',
    'derive_seed',
    'rng_for',
    'complex_gaussian',
    'OCCUPIED_FRACTION',
]
