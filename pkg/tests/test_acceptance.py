"""
Desk-scale trend checks for the split-NLC regime.

These run full power sweeps and take from minutes to hours; they are
deselected by default. Run with `pytest -m slow`.
"""

import os
from dataclasses import replace

import pytest

from src.labharness import average_realizations, desk_scale, sweep_distance, sweep_power
from src.nlc import Scheme
from src.rxchain import TrxNoiseSpec
from src.txchain import LaserSpec

pytestmark = [
    pytest.mark.slow,
    pytest.mark.filterwarnings("ignore::src.errors.StatisticalAccuracyWarning"),
]

WORKERS = int(os.getenv("SPLITNLC_WORKERS", "1"))
ALL_SCHEMES = (Scheme.edc(), Scheme.tx_dbp(), Scheme.rx_dbp(), Scheme.split(ratio=0.5))


@pytest.fixture(scope="module")
def power_sweeps():
    """Zero-TRX power sweeps at N = 4, 8 and 16."""
    config = replace(desk_scale(span_counts=(4, 8, 16)), schemes=ALL_SCHEMES)
    return sweep_power(config, WORKERS)


class TestSplitRegime:
    """Zero transceiver noise: signal-ASE beating decides the ranking."""

    def test_split_beats_single_ended(self, power_sweeps):
        """Test Split(8:8) > TxDBP(16:0) > RxDBP(0:16) at N = 16."""
        split = power_sweeps.peak_for(16, "8:8")
        tx = power_sweeps.peak_for(16, "16:0")
        rx = power_sweeps.peak_for(16, "0:16")
        assert split.snr_db > tx.snr_db > rx.snr_db
        assert 0.5 <= split.snr_db - rx.snr_db <= 1.5

    @pytest.mark.parametrize("n_spans", [4, 8, 16])
    def test_dbp_beats_edc(self, power_sweeps, n_spans):
        """Test that every DBP scheme improves on EDC."""
        edc = power_sweeps.peak_for(n_spans, "EDC")
        for scheme in ALL_SCHEMES[1:]:
            peak = power_sweeps.peak_for(n_spans, scheme.label(n_spans))
            assert peak.snr_db > edc.snr_db

    def test_gain_grows_above_edc_optimum(self, power_sweeps):
        """Test that the DBP gain over EDC rises with power beyond P_opt(EDC)."""
        edc_peak = power_sweeps.peak_for(16, "EDC")
        curves = average_realizations(power_sweeps.records)
        edc = {p.power_dbm: p.snr_db for p in curves if p.spans == 16 and p.label == "EDC"}
        rx = {p.power_dbm: p.snr_db for p in curves if p.spans == 16 and p.label == "0:16"}
        powers = sorted(p for p in edc if p >= edc_peak.power_dbm)
        gains = [rx[p] - edc[p] for p in powers]
        assert len(gains) >= 2
        assert all(later > earlier for earlier, later in zip(gains, gains[1:]))


class TestTransceiverCrossover:
    """Receiver-heavy transceiver noise near 22 dB back-to-back."""

    @pytest.fixture(scope="class")
    def distance(self):
        config = desk_scale(span_counts=(2, 4, 8, 13, 20, 30))
        config = replace(config, trx=TrxNoiseSpec(28.0, 23.0, lo=LaserSpec(linewidth=0.0)))
        return sweep_distance(config, WORKERS)

    def test_rx_dbp_best_at_short_distance(self, distance):
        """Test Rx-DBP >= Split >= Tx-DBP on the shortest link."""
        rx = distance.peak_for(2, "0:2")
        split = distance.peak_for(2, "1:1")
        tx = distance.peak_for(2, "2:0")
        assert rx.snr_db >= split.snr_db - 0.1
        assert split.snr_db >= tx.snr_db - 0.1

    def test_split_best_at_long_distance(self, distance):
        """Test that the 50% split leads on the longest link."""
        split = distance.peak_for(30, "15:15")
        assert split.snr_db > distance.peak_for(30, "0:30").snr_db
        assert split.snr_db > distance.peak_for(30, "30:0").snr_db

    def test_inversion_near_analytic_crossover(self, distance):
        """Test that the observed ranking flip lies within 50% of the budget crossover."""
        assert distance.crossover is not None and distance.crossover.found
        flipped = [
            n
            for n in (2, 4, 8, 13, 20, 30)
            if distance.peak_for(n, Scheme.split(ratio=0.5).label(n)).snr_db
            > distance.peak_for(n, f"0:{n}").snr_db
        ]
        assert flipped
        expected = distance.crossover.n_spans
        assert 0.5 * expected <= flipped[0] <= 1.5 * expected
