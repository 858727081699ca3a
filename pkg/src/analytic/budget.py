"""
Calibrated first-order SNR budget.

    1/SNR = iota + (sigma2_ase + sigma2_nl) / P

iota = 1/SNR_tx + 1/SNR_rx is the transceiver floor and sigma2_ase = N times
the per-span ASE power in the symbol-rate bandwidth. The cubic term depends
on the scheme:

    EDC:    eta * N^(1+eps) * P^3
    DBP:    xi * M * P^3 + 3 * eta * P^3 * (k^(1+eps)/SNR_tx + (N-k)^(1+eps)/SNR_rx)

where M = N (Rx-DBP), N - 1 (Tx-DBP) or max(k, N - k) (split) counts the
spans whose ASE beats with the signal, and the second DBP term (signal-TRX
noise beating) is only included once eta is calibrated.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.errors import CalibrationRequiredError, ParameterError, UnboundedPowerError
from src.fiberchannel import LinkSpec, ase_noise_power
from src.nlc import Scheme
from src.rxchain import TrxNoiseSpec
from src.sigkit import dbm_to_watt, watt_to_dbm

logger = logging.getLogger('splitnlc.analytic')

BUDGET_LABEL = "calibrated first-order budget"
MAX_CROSSOVER_SPANS = 200


@dataclass(frozen=True)
class BudgetCoefficients:
    """
    Noise coefficients of the budget.

    Attributes:
        ase_per_span: ASE power of one span in the symbol-rate bandwidth (W, both pols)
        eta: Signal-signal NLI coefficient per span in 1/W^2 (None until calibrated)
        xi: Residual signal-ASE beating coefficient per span in 1/W^2
        epsilon: Coherent NLI accumulation exponent
    """

    ase_per_span: float
    eta: Optional[float] = None
    xi: Optional[float] = None
    epsilon: float = 0.0

    def __post_init__(self):
        if self.ase_per_span < 0:
            raise ParameterError(f"ase_per_span must be >= 0, got {self.ase_per_span}")
        for name in ("eta", "xi"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ParameterError(f"{name} must be >= 0, got {value}")

    @property
    def label(self) -> str:
        return BUDGET_LABEL

    def to_dict(self) -> dict:
        return {
            "label": BUDGET_LABEL,
            "ase_per_span_w": self.ase_per_span,
            "eta_per_w2": self.eta,
            "xi_per_w2": self.xi,
            "epsilon": self.epsilon,
        }


@dataclass(frozen=True)
class NoiseBudget:
    """
    Evaluated budget at one launch power.

    Attributes:
        p_launch: Launch power per channel in W
        sigma2_ase: Accumulated ASE power in W
        eta_nli: Signal-signal NLI coefficient (0 for DBP schemes)
        xi_beat: Residual beating coefficient (0 for EDC)
        snr_trx_lin: Transceiver floor 1/SNR_tx + 1/SNR_rx
        sigma2_nl: Scheme nonlinear noise power in W (without TRX beating)
        sigma2_trx_beat: Signal-TRX noise beating power in W
    """

    p_launch: float
    sigma2_ase: float
    eta_nli: float
    xi_beat: float
    snr_trx_lin: float
    sigma2_nl: float = 0.0
    sigma2_trx_beat: float = 0.0

    @property
    def inverse_snr(self) -> float:
        noise = self.sigma2_ase + self.sigma2_nl + self.sigma2_trx_beat
        return self.snr_trx_lin + noise / self.p_launch

    @property
    def snr_db(self) -> float:
        return float(-10.0 * np.log10(self.inverse_snr))

    @property
    def label(self) -> str:
        return BUDGET_LABEL


@dataclass(frozen=True)
class BudgetOptimum:
    scheme: str
    n_spans: int
    p_opt_dbm: float
    snr_db: float
    label: str = BUDGET_LABEL


@dataclass(frozen=True)
class CrossoverResult:
    """
    Span count where ASE-related noise first reaches the transceiver noise.

    n_spans and distance_km are None when no crossover exists up to max_spans.
    """

    n_spans: Optional[int]
    distance_km: Optional[float]
    max_spans: int = MAX_CROSSOVER_SPANS
    label: str = BUDGET_LABEL

    @property
    def found(self) -> bool:
        return self.n_spans is not None


def inverse_snr(snr_db: float) -> float:
    """Linear 1/SNR (0 for +inf)."""
    return 0.0 if snr_db == float("inf") else 10.0 ** (-snr_db / 10.0)


def trx_floor(tx_snr_db: float, rx_snr_db: float) -> float:
    return inverse_snr(tx_snr_db) + inverse_snr(rx_snr_db)


def ase_per_span(link: LinkSpec, symbol_rate: float) -> float:
    """Mean per-span ASE power in the symbol-rate bandwidth over the link."""
    total = sum(
        ase_noise_power(span.amp, link.center_frequency, symbol_rate) for span in link.spans
    )
    return total / link.n_spans


def beating_span_count(scheme: Scheme, n_spans: int) -> int:
    """Spans whose ASE beats with the signal after compensation (M)."""
    k = scheme.tx_spans_for(n_spans)
    if k == 0:
        return n_spans
    if k == n_spans:
        return n_spans - 1
    return max(k, n_spans - k)


def _require(value: Optional[float], name: str, scheme: Scheme) -> float:
    if value is None:
        raise CalibrationRequiredError(
            f"{name} is not calibrated", {"scheme": str(scheme), "label": BUDGET_LABEL}
        )
    return value


def nonlinear_coefficients(
    coeffs: BudgetCoefficients,
    scheme: Scheme,
    n_spans: int,
    trx: TrxNoiseSpec = TrxNoiseSpec(),
):
    """
    Cubic coefficients of the scheme.

    Returns:
        (scheme coefficient, TRX-beating coefficient), both in 1/W^2,
        so sigma2 = coefficient * P^3
    """
    exponent = 1.0 + coeffs.epsilon
    if not scheme.is_dbp:
        return _require(coeffs.eta, "eta", scheme) * n_spans ** exponent, 0.0

    xi = _require(coeffs.xi, "xi", scheme)
    scheme_term = xi * beating_span_count(scheme, n_spans)
    if coeffs.eta is None:
        return scheme_term, 0.0
    k = scheme.tx_spans_for(n_spans)
    trx_term = 3.0 * coeffs.eta * (
        k ** exponent * inverse_snr(trx.tx_snr_db)
        + (n_spans - k) ** exponent * inverse_snr(trx.rx_snr_db)
    )
    return scheme_term, trx_term


def noise_budget(
    link: LinkSpec,
    scheme: Scheme,
    p_dbm: float,
    trx: TrxNoiseSpec,
    coeffs: BudgetCoefficients,
) -> NoiseBudget:
    """
    Evaluate every budget term at one launch power.

    Raises:
        ParameterError: If the link is not transparent
        CalibrationRequiredError: If the scheme's coefficient is missing
    """
    if not link.is_transparent:
        raise ParameterError("the budget assumes a transparent link (gain = span loss)")
    n = link.n_spans
    power = dbm_to_watt(p_dbm)
    scheme_term, trx_term = nonlinear_coefficients(coeffs, scheme, n, trx)
    return NoiseBudget(
        p_launch=power,
        sigma2_ase=coeffs.ase_per_span * n,
        eta_nli=0.0 if scheme.is_dbp else float(coeffs.eta),
        xi_beat=float(coeffs.xi) if scheme.is_dbp else 0.0,
        snr_trx_lin=trx_floor(trx.tx_snr_db, trx.rx_snr_db),
        sigma2_nl=scheme_term * power ** 3,
        sigma2_trx_beat=trx_term * power ** 3,
    )


def budget_snr(
    link: LinkSpec,
    scheme: Scheme,
    p_dbm: float,
    trx: TrxNoiseSpec,
    coeffs: BudgetCoefficients,
) -> float:
    """Predicted SNR in dB of a scheme at one launch power."""
    return noise_budget(link, scheme, p_dbm, trx, coeffs).snr_db


def optimal_power(sigma2_ase: float, cubic_coefficient: float) -> float:
    """
    Launch power maximizing P / (sigma2_ase + c * P^3).

    Returns:
        P_opt = (sigma2_ase / (2c))^(1/3) in dBm

    Raises:
        UnboundedPowerError: If the cubic coefficient is zero
    """
    if cubic_coefficient <= 0:
        raise UnboundedPowerError(
            "no nonlinear term: SNR grows without bound with power",
            {"label": BUDGET_LABEL},
        )
    if sigma2_ase <= 0:
        raise ParameterError(f"sigma2_ase must be positive, got {sigma2_ase}")
    return watt_to_dbm((sigma2_ase / (2.0 * cubic_coefficient)) ** (1.0 / 3.0))


def budget_optimum(
    link: LinkSpec,
    scheme: Scheme,
    trx: TrxNoiseSpec,
    coeffs: BudgetCoefficients,
) -> BudgetOptimum:
    """Optimum launch power and the SNR reached there."""
    n = link.n_spans
    scheme_term, trx_term = nonlinear_coefficients(coeffs, scheme, n, trx)
    p_opt = optimal_power(coeffs.ase_per_span * n, scheme_term + trx_term)
    snr = budget_snr(link, scheme, p_opt, trx, coeffs)
    return BudgetOptimum(scheme.label(n), n, p_opt, snr)


def crossover_distance(
    trx: TrxNoiseSpec,
    coeffs: BudgetCoefficients,
    span_length_km: float,
    scheme: Scheme = Scheme.rx_dbp(),
    max_spans: int = MAX_CROSSOVER_SPANS,
) -> CrossoverResult:
    """
    Smallest span count where ASE noise plus ASE beating at the optimum power
    reaches the transceiver noise P_opt * iota.

    Span counts with no cubic term are skipped. N = 0 qualifies only for an
    ideal transceiver (iota = 0).
    """
    iota = trx_floor(trx.tx_snr_db, trx.rx_snr_db)
    if iota == 0:
        return CrossoverResult(0, 0.0, max_spans)

    for n in range(1, max_spans + 1):
        scheme_term, trx_term = nonlinear_coefficients(coeffs, scheme, n, trx)
        if scheme_term + trx_term == 0:
            continue
        ase = coeffs.ase_per_span * n
        power = (ase / (2.0 * (scheme_term + trx_term))) ** (1.0 / 3.0)
        if ase + scheme_term * power ** 3 >= power * iota:
            logger.debug(f"crossover at {n} spans (P_opt {watt_to_dbm(power):.2f} dBm)")
            return CrossoverResult(n, n * span_length_km, max_spans)
    return CrossoverResult(None, None, max_spans)


__all__ = [
    "BudgetCoefficients",
    "NoiseBudget",
    "BudgetOptimum",
    "CrossoverResult",
    "budget_snr",
    "noise_budget",
    "optimal_power",
    "budget_optimum",
    "crossover_distance",
    "nonlinear_coefficients",
    "beating_span_count",
    "ase_per_span",
    "trx_floor",
    "inverse_snr",
    "BUDGET_LABEL",
    "MAX_CROSSOVER_SPANS",
]
