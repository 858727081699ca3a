"""
Shared fixtures for the split-NLC lab tests.
"""

import numpy as np
import pytest

from src.sigkit import DualPolSignal, bandlimit, complex_gaussian, set_mean_power
from src.txchain import ModulationSpec


@pytest.fixture
def small_mod():
    """16-QAM frame short enough for fast unit tests."""
    return ModulationSpec(qam_order=16, payload_symbols=4096, pilot_preamble_len=256)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def random_field():
    """
    Factory for band-limited Gaussian dual-pol fields.

    The field occupies +/- sample_rate * occupancy / 2, so it survives
    resampling and dispersion without touching the Nyquist edge.
    """

    def make(
        n_samples: int = 4096,
        sample_rate: float = 100e9,
        power_dbm: float = 0.0,
        occupancy: float = 0.5,
        seed: int = 7,
    ) -> DualPolSignal:
        rng = np.random.default_rng(seed)
        white = DualPolSignal.from_array(
            complex_gaussian(rng, (2, n_samples), 1.0), sample_rate
        )
        half = occupancy * sample_rate / 2.0
        return set_mean_power(bandlimit(white, -half, half), power_dbm)

    return make
