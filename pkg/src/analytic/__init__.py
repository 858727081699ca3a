"""
Analytic SNR budget.

This package contains:
- Budget: calibrated first-order SNR budget for EDC, Tx-DBP, Rx-DBP and
  split NLC, optimum launch power and the TRX/ASE crossover distance
- Calibration: least-squares fit of the budget coefficients to sweeps
"""

from src.analytic.budget import (
    BUDGET_LABEL,
    MAX_CROSSOVER_SPANS,
    BudgetCoefficients,
    BudgetOptimum,
    CrossoverResult,
    NoiseBudget,
    ase_per_span,
    beating_span_count,
    budget_optimum,
    budget_snr,
    crossover_distance,
    inverse_snr,
    noise_budget,
    nonlinear_coefficients,
    optimal_power,
    trx_floor,
)
from src.analytic.calibration import BudgetRecord, calibrate_budget

__all__ = [
    # Types
    'BudgetCoefficients',
    'NoiseBudget',
    'BudgetOptimum',
    'CrossoverResult',
    'BudgetRecord',
    # Operations
    'budget_snr',
    'noise_budget',
    'optimal_power',
    'budget_optimum',
    'crossover_distance',
    'calibrate_budget',
    # Helpers
    'ase_per_span',
    'beating_span_count',
    'nonlinear_coefficients',
    'inverse_snr',
    'trx_floor',
    'BUDGET_LABEL',
    'MAX_CROSSOVER_SPANS',
]
