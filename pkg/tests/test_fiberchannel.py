"""
Tests for the fiber channel: parameters, SSFM integration, amplifiers and
multi-span links, including the closed-form dispersion, self-phase
modulation and ASE accounting oracles.
"""

import numpy as np
import pytest
from scipy import constants

from src.errors import ParameterError
from src.fiberchannel import (
    AmpSpec,
    FiberParams,
    LinkSpec,
    SpanSpec,
    SsfmConfig,
    amplify,
    apply_linear_link,
    ase_noise_power,
    ase_psd_per_pol,
    predicted_osnr_db,
    propagate_fiber,
    propagate_link,
    spontaneous_emission_factor,
    ssfm_step,
    step_sizes,
)
from src.sigkit import DualPolSignal, dbm_to_watt, nmse_db

NOISELESS = AmpSpec(noise_figure_db=float("-inf"))


class TestFiberParams:
    """Test derived fiber quantities."""

    def test_default_span(self):
        """Test the default span length and loss."""
        fiber = FiberParams()
        assert fiber.length_km == pytest.approx(76.96)
        assert fiber.span_loss_db == pytest.approx(12.2)

    def test_beta2_from_dispersion(self):
        """Test beta2 = -D lambda^2 / (2 pi c) in s^2/km."""
        fiber = FiberParams(dispersion_D=16.7, reference_wavelength=1553e-9)
        expected = -16.7e-6 * 1553e-9 ** 2 / (2 * np.pi * constants.c) * 1e3
        assert fiber.beta2_s2_per_km == pytest.approx(expected)
        assert fiber.beta2_s2_per_km == pytest.approx(-21.38e-24, rel=1e-3)

    def test_effective_length(self):
        """Test the loss-weighted length of a step."""
        fiber = FiberParams(attenuation_db_per_km=0.2)
        alpha = 0.2 * np.log(10) / 10
        assert fiber.effective_length(10.0) == pytest.approx((1 - np.exp(-alpha * 10)) / alpha)
        lossless = FiberParams(attenuation_db_per_km=0.0)
        assert lossless.effective_length(10.0) == pytest.approx(10.0)

    def test_manakov_factor(self):
        """Test the polarization-averaged nonlinear coefficient."""
        assert FiberParams(gamma=1.3).nonlinear_coefficient == pytest.approx(1.3 * 8 / 9)

    def test_invalid_parameters(self):
        """Test parameter domain checks."""
        with pytest.raises(ParameterError):
            FiberParams(length_km=0.0)
        with pytest.raises(ParameterError):
            FiberParams(gamma=-1.0)
        with pytest.raises(ParameterError):
            SsfmConfig(steps_per_span=0)
        with pytest.raises(ParameterError):
            SsfmConfig(step_distribution="random")
        with pytest.raises(ParameterError):
            SsfmConfig(scheme="asymmetric")


class TestLinkSpec:
    """Test span and link descriptions."""

    def test_default_gain_compensates_loss(self):
        """Test that an unset gain equals the span loss."""
        span = SpanSpec()
        assert span.amp.gain_db == pytest.approx(span.fiber.span_loss_db)
        assert span.is_transparent

    def test_uniform_link(self):
        """Test a uniform link's totals."""
        link = LinkSpec.uniform(13)
        assert link.n_spans == 13
        assert link.distance_km == pytest.approx(13 * 76.96)
        assert link.total_dispersion == pytest.approx(13 * 76.96 * FiberParams().beta2_s2_per_km)
        assert link.is_transparent
        assert link.center_frequency == pytest.approx(constants.c / 1553e-9)

    def test_empty_link(self):
        """Test that a link needs at least one span."""
        with pytest.raises(ParameterError):
            LinkSpec.uniform(0)
        with pytest.raises(ParameterError):
            LinkSpec(())

    def test_non_transparent_link(self):
        """Test that a short-gain amplifier breaks transparency."""
        link = LinkSpec.uniform(2, amp=AmpSpec(gain_db=10.0))
        assert not link.is_transparent


class TestStepSizes:
    """Test SSFM step distributions."""

    @pytest.mark.parametrize("distribution", ["uniform", "logarithmic"])
    def test_steps_cover_span(self, distribution):
        """Test that steps add up to the span length."""
        fiber = FiberParams()
        steps = step_sizes(fiber, SsfmConfig(steps_per_span=50, step_distribution=distribution))
        assert steps.size == 50
        assert steps.sum() == pytest.approx(fiber.length_km)
        assert np.all(steps > 0)

    def test_logarithmic_equal_effective_length(self):
        """Test that logarithmic steps carry equal nonlinear phase."""
        fiber = FiberParams()
        steps = step_sizes(fiber, SsfmConfig(steps_per_span=20, step_distribution="logarithmic"))
        boundaries = np.concatenate([[0.0], np.cumsum(steps)])
        weighted = [
            np.exp(-fiber.alpha_per_km * start) * fiber.effective_length(h)
            for start, h in zip(boundaries[:-1], steps)
        ]
        np.testing.assert_allclose(weighted, weighted[0], rtol=1e-9)
        assert steps[-1] > steps[0]


class TestSsfm:
    """Test split-step propagation."""

    def test_dispersion_oracle(self, random_field):
        """Test SSFM at negligible nonlinearity against closed-form dispersion."""
        field = random_field(n_samples=8192, sample_rate=200e9, power_dbm=0.0)
        fiber = FiberParams(gamma=1e-12)
        cfg = SsfmConfig(steps_per_span=100)
        numeric = propagate_fiber(field, fiber, cfg)
        analytic = apply_linear_link(field, [SpanSpec(fiber, NOISELESS)], include_gain=False)
        assert nmse_db(analytic, numeric) <= -90

    def test_linear_propagation_matches_closed_form(self, random_field):
        """Test the linear-only path against the analytic response."""
        field = random_field()
        fiber = FiberParams()
        numeric = propagate_fiber(field, fiber, SsfmConfig(nonlinear=False))
        analytic = apply_linear_link(field, [SpanSpec(fiber, NOISELESS)], include_gain=False)
        assert nmse_db(analytic, numeric) <= -200

    def test_spm_oracle(self):
        """Test pure self-phase modulation against its closed form."""
        rng = np.random.default_rng(2)
        x = rng.standard_normal(4096) + 1j * rng.standard_normal(4096)
        field = DualPolSignal(x, np.zeros_like(x), 100e9)
        field = field.with_samples(field.samples * np.sqrt(dbm_to_watt(10.0) / field.mean_power))
        fiber = FiberParams(
            length_km=10.0, attenuation_db_per_km=0.0, dispersion_D=0.0, gamma=1.3
        )
        numeric = propagate_fiber(field, fiber, SsfmConfig(steps_per_span=1000))
        phase = fiber.nonlinear_coefficient * np.abs(field.samples_x) ** 2 * 10.0
        rotated = field.samples_x * np.exp(1j * phase)
        expected = field.with_samples(np.stack([rotated, np.zeros(4096)]))
        assert nmse_db(expected, numeric) <= -90

    def test_fused_steps_match_single_steps(self, random_field):
        """Test that propagate_fiber equals a sequence of ssfm_step calls."""
        field = random_field(power_dbm=8.0)
        fiber = FiberParams(length_km=20.0)
        cfg = SsfmConfig(steps_per_span=8)
        stepped = field
        for h in step_sizes(fiber, cfg):
            stepped = ssfm_step(stepped, fiber, h)
        assert nmse_db(stepped, propagate_fiber(field, fiber, cfg)) <= -150

    @pytest.mark.parametrize("distribution", ["uniform", "logarithmic"])
    def test_inverse_retraces_forward(self, random_field, distribution):
        """Test that sign=-1 on the same grid undoes a nonlinear span."""
        field = random_field(power_dbm=10.0)
        fiber = FiberParams()
        cfg = SsfmConfig(steps_per_span=40, step_distribution=distribution)
        forward = propagate_fiber(field, fiber, cfg, sign=1)
        back = propagate_fiber(forward, fiber, cfg, sign=-1)
        assert nmse_db(field, back) <= -100

    def test_step_refinement_converges(self, random_field):
        """Test that the error against a fine grid falls each time the steps double."""
        field = random_field(power_dbm=0.0)
        fiber = FiberParams()
        reference = propagate_fiber(field, fiber, SsfmConfig(steps_per_span=1600))
        errors = [
            nmse_db(reference, propagate_fiber(field, fiber, SsfmConfig(steps_per_span=steps)))
            for steps in (25, 50, 100, 200)
        ]
        assert all(fine < coarse for coarse, fine in zip(errors, errors[1:]))
        coarse = propagate_fiber(field, fiber, SsfmConfig(steps_per_span=1000))
        fine = propagate_fiber(field, fiber, SsfmConfig(steps_per_span=2000))
        assert nmse_db(fine, coarse) <= -50

    def test_loss_without_gain(self, random_field):
        """Test that an unamplified span attenuates by its loss."""
        field = random_field()
        out = propagate_fiber(field, FiberParams(gamma=0.0), SsfmConfig())
        assert out.power_dbm == pytest.approx(field.power_dbm - 12.2, abs=1e-9)

    def test_invalid_sign(self, random_field):
        """Test that sign must be +1 or -1."""
        with pytest.raises(ParameterError):
            propagate_fiber(random_field(), FiberParams(), SsfmConfig(), sign=0)
        with pytest.raises(ParameterError):
            ssfm_step(random_field(), FiberParams(), 1.0, sign=2)


class TestAmplifier:
    """Test EDFA gain and ASE."""

    def test_spontaneous_emission_factor(self):
        """Test n_sp = NF G / (2 (G - 1))."""
        amp = AmpSpec(gain_db=20.0, noise_figure_db=5.0)
        expected = 10 ** 0.5 * 100 / (2 * 99)
        assert spontaneous_emission_factor(amp) == pytest.approx(expected)

    def test_ase_psd(self):
        """Test S_ASE = n_sp h nu (G - 1)."""
        amp = AmpSpec(gain_db=20.0, noise_figure_db=5.0)
        nu = 193.4e12
        expected = spontaneous_emission_factor(amp) * constants.h * nu * 99
        assert ase_psd_per_pol(amp, nu) == pytest.approx(expected)
        assert ase_noise_power(amp, nu, 50e9) == pytest.approx(2 * expected * 50e9)

    def test_noiseless_amplifier(self, random_field):
        """Test pure gain when the noise figure is -inf."""
        field = random_field()
        out = amplify(field, AmpSpec(gain_db=12.2, noise_figure_db=float("-inf")), 193e12)
        assert out.power_dbm == pytest.approx(field.power_dbm + 12.2, abs=1e-9)
        assert ase_psd_per_pol(AmpSpec(gain_db=12.2, noise_figure_db=float("-inf")), 193e12) == 0

    def test_zero_gain_is_identity(self, random_field):
        """Test that a 0 dB amplifier does nothing."""
        field = random_field()
        assert amplify(field, AmpSpec(gain_db=0.0), 193e12) is field

    def test_negative_gain(self):
        """Test that gain cannot be negative."""
        with pytest.raises(ParameterError):
            AmpSpec(gain_db=-1.0)

    def test_predicted_osnr(self):
        """Test OSNR from launch power and accumulated ASE."""
        link = LinkSpec.uniform(10)
        noise = 10 * ase_noise_power(link.spans[0].amp, link.center_frequency, 12.5e9)
        assert predicted_osnr_db(1e-3, link) == pytest.approx(10 * np.log10(1e-3 / noise))
        noiseless = LinkSpec.uniform(3, amp=NOISELESS)
        assert predicted_osnr_db(1e-3, noiseless) == float("inf")


class TestLink:
    """Test multi-span propagation."""

    @pytest.mark.parametrize("n_spans", [1, 4, 13])
    def test_ase_accounting(self, n_spans):
        """Test that accumulated ASE matches N amplifiers of white noise."""
        n_samples, rate = 2 ** 16, 198e9
        silent = DualPolSignal(np.zeros(n_samples), np.zeros(n_samples), rate)
        link = LinkSpec.uniform(n_spans)
        out = propagate_link(silent, link, SsfmConfig(steps_per_span=4), seed=21)
        per_amp = ase_noise_power(link.spans[0].amp, link.center_frequency, rate)
        assert out.mean_power == pytest.approx(n_spans * per_amp, rel=0.02)

    def test_transparent_noiseless_link_keeps_power(self, random_field):
        """Test that a transparent link returns the launch power."""
        field = random_field(power_dbm=3.0)
        link = LinkSpec.uniform(3, amp=NOISELESS)
        out = propagate_link(field, link, SsfmConfig(steps_per_span=20), seed=0)
        assert out.power_dbm == pytest.approx(3.0, abs=1e-9)

    def test_seeded_noise(self, random_field):
        """Test that ASE is deterministic in the seed."""
        field = random_field()
        link = LinkSpec.uniform(2)
        cfg = SsfmConfig(steps_per_span=5)
        a = propagate_link(field, link, cfg, seed=1)
        b = propagate_link(field, link, cfg, seed=1)
        c = propagate_link(field, link, cfg, seed=2)
        np.testing.assert_array_equal(a.samples, b.samples)
        assert not np.array_equal(a.samples, c.samples)

    def test_linear_link_response(self, random_field):
        """Test that a noiseless linear link equals the closed-form response."""
        field = random_field()
        link = LinkSpec.uniform(3, amp=NOISELESS)
        numeric = propagate_link(field, link, SsfmConfig(nonlinear=False), seed=0)
        assert nmse_db(apply_linear_link(field, link), numeric) <= -200

    @pytest.mark.slow
    def test_nonlinear_link_is_reversible(self, random_field):
        """Test that inverting 13 noiseless spans span by span recovers the launch field."""
        field = random_field(power_dbm=0.0)
        link = LinkSpec.uniform(13, amp=NOISELESS)
        cfg = SsfmConfig(steps_per_span=1000)
        received = propagate_link(field, link, cfg, seed=0)
        recovered = received
        for span in reversed(link.spans):
            recovered = recovered.with_samples(recovered.samples / np.sqrt(span.amp.gain_linear))
            recovered = propagate_fiber(recovered, span.fiber, cfg, sign=-1)
        assert nmse_db(field, recovered) <= -35
