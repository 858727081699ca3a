"""
Tests for nonlinearity compensation: split plans, scheme keywords,
backpropagation, Tx pre-compensation and the EDC baseline.
"""

from dataclasses import replace

import pytest

from src.errors import AliasingError, ConfigError, PlanError
from src.fiberchannel import AmpSpec, LinkSpec, SsfmConfig, apply_linear_link, propagate_link
from src.nlc import (
    NlcPlan,
    Scheme,
    dbp,
    edc,
    plan_split,
    plan_split_ratio,
    postcompensate,
    precompensate,
    round_half_up,
)
from src.sigkit import nmse_db, papr_db, set_mean_power
from src.txchain import build_frame, modulate_channel

NOISELESS = AmpSpec(noise_figure_db=float("-inf"))


class TestPlans:
    """Test k:(N-k) plans."""

    def test_plan_label(self):
        """Test span bookkeeping of a plan."""
        plan = plan_split(13, 5)
        assert plan.tx_spans == 5
        assert plan.rx_spans == 8
        assert plan.label == "5:8"

    @pytest.mark.parametrize("k", [-1, 14])
    def test_out_of_range(self, k):
        """Test that k must lie in 0..N."""
        with pytest.raises(PlanError):
            plan_split(13, k)

    def test_ratio_rounds_half_up(self):
        """Test ratio planning with half-up rounding."""
        assert plan_split_ratio(13, 0.5).tx_spans == 7
        assert plan_split_ratio(4, 0.5).tx_spans == 2
        assert plan_split_ratio(13, 0.0).tx_spans == 0
        assert plan_split_ratio(13, 1.0).tx_spans == 13
        assert round_half_up(2.5) == 3
        assert round_half_up(2.49) == 2
        with pytest.raises(PlanError):
            plan_split_ratio(13, 1.5)

    def test_endpoints(self):
        """Test that 0:N and N:0 are valid plans."""
        assert NlcPlan(4, 0).rx_spans == 4
        assert NlcPlan(4, 4).rx_spans == 0


class TestScheme:
    """Test scheme keywords and their resolution on a link."""

    @pytest.mark.parametrize(
        "text,kind",
        [
            ("EDC", "EDC"),
            ("edc", "EDC"),
            ("TxDBP", "TxDBP"),
            ("rxdbp", "RxDBP"),
            ("Split", "Split"),
        ],
    )
    def test_keywords(self, text, kind):
        """Test case-insensitive scheme keywords."""
        assert Scheme.from_label(text).kind == kind

    def test_split_forms(self):
        """Test explicit k, percentage, fraction and k:m labels."""
        assert Scheme.from_label("Split(5)").tx_spans_for(13) == 5
        assert Scheme.from_label("Split(25%)").tx_spans_for(8) == 2
        assert Scheme.from_label("Split(0.25)").tx_spans_for(8) == 2
        assert Scheme.from_label("Split").tx_spans_for(13) == 7
        scheme = Scheme.from_label("5:8")
        assert scheme.applies_to(13)
        assert not scheme.applies_to(12)
        assert scheme.tx_spans_for(13) == 5

    @pytest.mark.parametrize("text", ["DBP", "Split(x)", "5-8", ""])
    def test_bad_labels(self, text):
        """Test that unknown keywords are rejected."""
        with pytest.raises(ConfigError):
            Scheme.from_label(text)

    @pytest.mark.parametrize(
        "scheme",
        [
            Scheme.edc(),
            Scheme.tx_dbp(),
            Scheme.rx_dbp(),
            Scheme.split(),
            Scheme.split(3),
            Scheme.at(2, 6),
        ],
    )
    def test_str_round_trip(self, scheme):
        """Test that printed schemes parse back to themselves."""
        assert Scheme.from_label(str(scheme)) == scheme

    def test_resolution_on_link(self):
        """Test names, labels and seed codes for a 13-span link."""
        assert Scheme.edc().plan(13) is None
        assert Scheme.edc().label(13) == "EDC"
        assert Scheme.edc().code(13) == 0
        assert Scheme.rx_dbp().label(13) == "0:13"
        assert Scheme.rx_dbp().code(13) == 1
        assert Scheme.tx_dbp().label(13) == "13:0"
        assert Scheme.tx_dbp().name_for(13) == "TxDBP"
        assert Scheme.at(0, 13).name_for(13) == "RxDBP"
        assert Scheme.at(13, 13).name_for(13) == "TxDBP"
        assert Scheme.split().name_for(13) == "Split"
        assert Scheme.split().plan(13).label == "7:6"

    def test_inapplicable_split(self):
        """Test that an explicit k beyond the link is rejected."""
        scheme = Scheme.split(5)
        assert not scheme.applies_to(4)
        with pytest.raises(PlanError):
            scheme.tx_spans_for(4)

    def test_invalid_scheme(self):
        """Test constructor validation."""
        with pytest.raises(ConfigError):
            Scheme("Hybrid")
        with pytest.raises(PlanError):
            Scheme.split(ratio=2.0)


class TestBackprop:
    """Test DBP, pre/post-compensation and EDC."""

    def test_empty_subset(self, random_field):
        """Test that DBP over no spans returns the input."""
        field = random_field()
        assert dbp(field, [], SsfmConfig()) is field

    @pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
    def test_split_reverses_noiseless_link(self, random_field, k):
        """Test precompensate -> link -> postcompensate recovers the launch field."""
        field = random_field(power_dbm=6.0)
        link = LinkSpec.uniform(4, amp=NOISELESS)
        cfg = SsfmConfig(steps_per_span=20)
        plan = plan_split(4, k, cfg)
        launched = precompensate(field, link, plan, target_power_dbm=6.0)
        received = propagate_link(launched, link, cfg, seed=0)
        recovered = postcompensate(received, link, plan)
        assert nmse_db(field, recovered) <= -30

    def test_dbp_converges_with_steps(self, random_field):
        """Test that more DBP steps track a fine forward grid more closely."""
        field = random_field(power_dbm=10.0)
        link = LinkSpec.uniform(2, amp=NOISELESS)
        received = propagate_link(field, link, SsfmConfig(steps_per_span=800), seed=0)
        errors = [
            nmse_db(field, dbp(received, link, SsfmConfig(steps_per_span=steps)))
            for steps in (25, 50, 100, 200)
        ]
        assert all(later < earlier for earlier, later in zip(errors, errors[1:]))

    def test_precompensation_raises_papr(self, small_mod):
        """Test that dispersion pre-distortion spreads a low-PAPR waveform."""
        mod = replace(small_mod, qam_order=4, roll_off=1.0)
        waveform = set_mean_power(modulate_channel(build_frame(mod), mod, 4 * mod.symbol_rate), 0.0)
        link = LinkSpec.uniform(4, amp=NOISELESS)
        distorted = precompensate(waveform, link, plan_split(4, 4, SsfmConfig(steps_per_span=10)))
        assert papr_db(distorted) > papr_db(waveform) + 2.0
        assert distorted.power_dbm == pytest.approx(0.0, abs=1e-9)

    def test_precompensate_identity_without_tx_spans(self, random_field):
        """Test that a 0:N plan leaves the launch waveform alone."""
        field = random_field()
        link = LinkSpec.uniform(2)
        assert precompensate(field, link, plan_split(2, 0)) is field
        assert postcompensate(field, link, plan_split(2, 2)) is field

    def test_plan_link_mismatch(self, random_field):
        """Test that a plan must match the link span count."""
        link = LinkSpec.uniform(3)
        with pytest.raises(PlanError):
            precompensate(random_field(), link, plan_split(4, 1))
        with pytest.raises(PlanError):
            postcompensate(random_field(), link, plan_split(4, 1))

    def test_aliasing_guard(self, random_field):
        """Test that DBP refuses a band wider than the sample rate."""
        field = random_field()
        with pytest.raises(AliasingError):
            dbp(field, LinkSpec.uniform(1), SsfmConfig(), signal_bandwidth=field.sample_rate)

    def test_edc_inverts_linear_link(self, random_field):
        """Test that EDC undoes closed-form dispersion of a transparent link."""
        field = random_field()
        link = LinkSpec.uniform(13)
        assert nmse_db(field, edc(apply_linear_link(field, link), link)) <= -150

    def test_edc_equals_linear_dbp(self, random_field):
        """Test that linear-only DBP reduces to EDC on a transparent link."""
        field = random_field()
        link = LinkSpec.uniform(5)
        linear = dbp(field, link, SsfmConfig(nonlinear=False))
        assert nmse_db(edc(field, link), linear) <= -150
