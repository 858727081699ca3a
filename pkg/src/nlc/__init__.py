"""
Nonlinearity compensation.

This package contains:
- Plan: k:(N-k) split plans and the EDC / Tx-DBP / Rx-DBP / Split schemes
- Backprop: full-field DBP over span subsets, Tx pre-compensation,
  Rx post-compensation and the EDC baseline
"""

from src.nlc.backprop import dbp, edc, postcompensate, precompensate
from src.nlc.plan import (
    SCHEME_KINDS,
    NlcPlan,
    Scheme,
    plan_split,
    plan_split_ratio,
    round_half_up,
)

__all__ = [
    'NlcPlan',
    'Scheme',
    'plan_split',
    'plan_split_ratio',
    'dbp',
    'precompensate',
    'postcompensate',
    'edc',
    'round_half_up',
    'SCHEME_KINDS',
]
