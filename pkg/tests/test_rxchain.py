"""
Tests for the coherent receiver: front end, demux, synchronization,
pilot CPE, SNR estimation and the composed receive chain.
"""

import numpy as np
import pytest

from src.errors import (
    AliasingError,
    ParameterError,
    StatisticalAccuracyWarning,
    SyncError,
    UndefinedScalingError,
)
from src.rxchain import (
    SNR_CAP_DB,
    TrxNoiseSpec,
    bit_error_ratio,
    coherent_front_end,
    demux_channel,
    edge_noise_snr_db,
    estimate_snr,
    pilot_cpe,
    receive_channel,
    synchronize,
)
from src.sigkit import complex_gaussian, nmse_db
from src.txchain import (
    LaserSpec,
    ModulationSpec,
    apply_awgn,
    build_frame,
    laser_phase,
    modulate_channel,
)


@pytest.fixture
def small_frame(small_mod):
    return build_frame(small_mod)


@pytest.fixture
def matched(small_mod, small_frame):
    """Matched-filter output of a clean single channel."""
    waveform = modulate_channel(small_frame, small_mod, 4 * small_mod.symbol_rate)
    return demux_channel(waveform, 0.0, small_mod)


@pytest.fixture(scope="module")
def long_frame():
    """Frame with enough data symbols for 0.05 dB SNR accuracy."""
    return build_frame(ModulationSpec(payload_symbols=106496))


def noisy(frame, snr_db, seed=3):
    """Frame symbols plus AWGN at a given per-symbol SNR."""
    rng = np.random.default_rng(seed)
    power = np.mean(np.abs(frame.symbols[:, frame.data_indices]) ** 2)
    return frame.symbols + complex_gaussian(rng, frame.symbols.shape, power / 10 ** (snr_db / 10))


class TestDemuxAndSync:
    """Test channel extraction and frame synchronization."""

    def test_recovers_symbols(self, matched, small_frame):
        """Test that demux then sync returns the transmitted frame."""
        result = synchronize(matched, small_frame)
        assert result.sync_index == 0
        assert not result.swapped
        assert result.peak > 0.95
        assert nmse_db(small_frame.symbols, result.symbols) <= -40

    def test_finds_shifted_frame(self, matched, small_frame):
        """Test sync on a stream rotated by an odd sample count."""
        rolled = matched.with_samples(np.roll(matched.samples, 75, axis=1))
        result = synchronize(rolled, small_frame)
        assert result.sync_index == 75
        assert nmse_db(small_frame.symbols, result.symbols) <= -40

    def test_resolves_polarization_swap(self, matched, small_frame):
        """Test that exchanged polarizations are detected and undone."""
        result = synchronize(matched.samples[::-1], small_frame)
        assert result.swapped
        assert nmse_db(small_frame.symbols, result.symbols) <= -40

    def test_invariant_to_phase_and_scale(self, matched, small_frame):
        """Test that a common complex factor does not move the sync point."""
        result = synchronize(matched.samples * (0.2 - 0.5j), small_frame)
        assert result.sync_index == 0
        assert result.peak > 0.95

    def test_noise_has_no_preamble(self, small_frame):
        """Test that pure noise fails to synchronize."""
        rng = np.random.default_rng(0)
        with pytest.raises(SyncError):
            synchronize(complex_gaussian(rng, (2, 2 * small_frame.n_symbols), 1.0), small_frame)

    def test_wrong_length(self, matched, small_frame):
        """Test that the stream must be one frame at 2 samples per symbol."""
        with pytest.raises(ParameterError):
            synchronize(matched.samples[:, :-2], small_frame)

    def test_channel_outside_band(self, small_mod, small_frame):
        """Test that demux refuses a channel beyond Nyquist."""
        waveform = modulate_channel(small_frame, small_mod, 4 * small_mod.symbol_rate)
        with pytest.raises(AliasingError):
            demux_channel(waveform, 2 * small_mod.symbol_rate, small_mod)


class TestPilotCpe:
    """Test pilot-aided phase correction."""

    def test_constant_phase(self, small_frame):
        """Test removal of a static carrier phase."""
        rotated = small_frame.symbols * np.exp(0.7j)
        result = pilot_cpe(rotated, small_frame)
        np.testing.assert_allclose(result.symbols, small_frame.symbols, atol=1e-9)
        assert result.frequency_offset_rad_per_symbol == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("joint", [True, False])
    def test_frequency_offset(self, small_frame, joint):
        """Test removal of a linear phase ramp."""
        ramp = 0.3 + 0.001 * np.arange(small_frame.n_symbols)
        rotated = small_frame.symbols * np.exp(1j * ramp)
        result = pilot_cpe(rotated, small_frame, joint_polarization=joint)
        assert result.frequency_offset_rad_per_symbol == pytest.approx(0.001, rel=1e-6)
        np.testing.assert_allclose(result.symbols, small_frame.symbols, atol=1e-9)

    def test_validation(self, small_frame):
        """Test shape and window checks."""
        with pytest.raises(ParameterError):
            pilot_cpe(small_frame.symbols[:, 1:], small_frame)
        with pytest.raises(ParameterError):
            pilot_cpe(small_frame.symbols, small_frame, averaging_half_window=-1)

    def test_static_rotation_costs_nothing(self, long_frame):
        """Test that a 30 degree carrier rotation leaves the SNR unchanged."""
        received = noisy(long_frame, 20.0)
        plain = estimate_snr(pilot_cpe(received, long_frame).symbols, long_frame)
        rotated = received * np.exp(1j * np.pi / 6)
        turned = estimate_snr(pilot_cpe(rotated, long_frame).symbols, long_frame)
        assert turned.snr_db == pytest.approx(plain.snr_db, abs=0.05)

    def test_phase_noise_penalty(self, long_frame):
        """Test the SNR lost to 100 kHz laser phase noise against genie phase removal."""
        laser = LaserSpec(linewidth=100e3, prng_seed=21)
        phase = laser_phase(long_frame.n_symbols, 49.5e9, laser)
        received = noisy(long_frame, 20.0) * np.exp(1j * phase)
        genie = estimate_snr(received * np.exp(-1j * phase), long_frame)
        tracked = estimate_snr(pilot_cpe(received, long_frame).symbols, long_frame)
        assert genie.snr_db - tracked.snr_db <= 0.3


class TestSnrEstimation:
    """Test data-aided SNR and BER."""

    @pytest.mark.parametrize("snr_db", [5.0, 10.0, 20.0, 30.0])
    def test_accuracy(self, long_frame, snr_db):
        """Test the estimate against a known AWGN level."""
        estimate = estimate_snr(noisy(long_frame, snr_db), long_frame)
        assert estimate.snr_db == pytest.approx(snr_db, abs=0.05)
        assert estimate.snr_x_db == pytest.approx(snr_db, abs=0.1)
        assert estimate.snr_y_db == pytest.approx(snr_db, abs=0.1)

    def test_invariant_to_complex_scaling(self, long_frame):
        """Test that a complex gain does not change the estimate."""
        received = noisy(long_frame, 15.0)
        plain = estimate_snr(received, long_frame)
        scaled = estimate_snr(received * (0.3 - 2j), long_frame)
        assert scaled.snr_db == pytest.approx(plain.snr_db, abs=1e-9)
        assert scaled.gains[0] == pytest.approx((0.3 - 2j) * plain.gains[0])

    def test_capped_when_noiseless(self, long_frame):
        """Test the SNR cap for a perfect copy."""
        estimate = estimate_snr(long_frame.symbols, long_frame)
        assert estimate.snr_db == SNR_CAP_DB
        assert bit_error_ratio(estimate.equalized, long_frame) == 0.0

    def test_short_frame_warns(self, small_frame):
        """Test the statistical accuracy warning for short payloads."""
        with pytest.warns(StatisticalAccuracyWarning):
            estimate_snr(small_frame.symbols, small_frame)

    def test_dead_polarization(self, long_frame):
        """Test that a polarization with no signal cannot be scaled."""
        received = long_frame.symbols.copy()
        received[1] = 0
        with pytest.raises(UndefinedScalingError):
            estimate_snr(received, long_frame)

    def test_ber_counts_flipped_decisions(self, long_frame):
        """Test BER on symbols pushed to a neighbouring point."""
        estimate = estimate_snr(long_frame.symbols, long_frame)
        corrupted = estimate.equalized.copy()
        corrupted[0, 0] = -corrupted[0, 0]
        assert 0 < bit_error_ratio(corrupted, long_frame) < 1e-4


class TestFrontEnd:
    """Test transceiver noise settings and the coherent front end."""

    def test_b2b_snr(self):
        """Test combination of Tx and Rx SNR."""
        assert TrxNoiseSpec(25.0, 25.0).b2b_snr_db == pytest.approx(21.99, abs=0.01)
        assert TrxNoiseSpec().b2b_snr_db == float("inf")
        assert TrxNoiseSpec(tx_snr_db=30.0).b2b_snr_db == pytest.approx(30.0)

    def test_edge_noise_level(self):
        """Test that the extra edge noise lowers the rx SNR by the offset."""
        extra = edge_noise_snr_db(20.0, -2.0)
        combined = -10 * np.log10(10 ** -2.0 + 10 ** (-extra / 10))
        assert combined == pytest.approx(18.0)
        assert edge_noise_snr_db(20.0, 0.0) == float("inf")
        assert edge_noise_snr_db(float("inf"), -2.0) == float("inf")

    def test_validation(self):
        """Test SNR and offset domain checks."""
        with pytest.raises(ParameterError):
            TrxNoiseSpec(rx_snr_db=float("nan"))
        with pytest.raises(ParameterError):
            TrxNoiseSpec(edge_rx_snr_offset_db=1.0)

    def test_ideal_front_end_is_identity(self, random_field):
        """Test that a noiseless receiver with an ideal LO does nothing."""
        field = random_field()
        assert coherent_front_end(field, TrxNoiseSpec(), seed=0) is field

    def test_finite_snr_needs_grid(self, random_field):
        """Test that receiver noise needs the grid it is referenced to."""
        with pytest.raises(ParameterError):
            coherent_front_end(random_field(), TrxNoiseSpec(rx_snr_db=20.0), seed=0)


class TestReceiveChannel:
    """Test the composed receive chain."""

    @pytest.mark.filterwarnings("ignore::src.errors.StatisticalAccuracyWarning")
    def test_noiseless_channel(self, small_mod, small_frame):
        """Test error-free recovery of a clean channel."""
        waveform = modulate_channel(small_frame, small_mod, 4 * small_mod.symbol_rate)
        result = receive_channel(waveform, small_frame, small_mod, 0.0, compute_ber=True)
        assert result.ber == 0.0
        assert result.snr_db > 30
        assert result.n_symbols == small_mod.data_symbols
        assert result.sync_index == 0

    @pytest.mark.filterwarnings("ignore::src.errors.StatisticalAccuracyWarning")
    def test_awgn_channel(self, small_mod, small_frame):
        """Test that the measured SNR follows the loaded AWGN."""
        waveform = modulate_channel(small_frame, small_mod, 4 * small_mod.symbol_rate)
        loaded = apply_awgn(waveform, 20.0, small_mod.symbol_rate, seed=11)
        result = receive_channel(
            loaded, small_frame, small_mod, 0.0, averaging_half_window=32
        )
        assert result.snr_db == pytest.approx(20.0, abs=0.3)
        assert result.residual_frequency_offset == pytest.approx(0.0, abs=50e6)
