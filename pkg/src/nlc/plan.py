"""
Split-NLC planning.

A plan assigns the first k spans of an N-span link to transmitter
pre-compensation and the last N - k spans to receiver backpropagation.
Schemes name the compensation strategies compared in the sweeps.
"""

import math
import re
from dataclasses import dataclass
from typing import Optional

from src.errors import ConfigError, PlanError
from src.fiberchannel import SsfmConfig

SCHEME_KINDS = ("EDC", "TxDBP", "RxDBP", "Split")


@dataclass(frozen=True)
class NlcPlan:
    """
    k:(N-k) assignment of backpropagated spans.

    Attributes:
        total_spans: Link span count N
        tx_spans: Spans pre-compensated at the transmitter (k)
        ssfm: Step settings of the backpropagation
    """

    total_spans: int
    tx_spans: int
    ssfm: SsfmConfig = SsfmConfig()

    def __post_init__(self):
        if self.total_spans < 0:
            raise PlanError(f"total_spans must be >= 0, got {self.total_spans}")
        if not 0 <= self.tx_spans <= self.total_spans:
            raise PlanError(
                f"tx_spans must lie in 0..{self.total_spans}, got {self.tx_spans}"
            )

    @property
    def rx_spans(self) -> int:
        return self.total_spans - self.tx_spans

    @property
    def label(self) -> str:
        return f"{self.tx_spans}:{self.rx_spans}"


def round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def plan_split(n_spans: int, k: int, ssfm: SsfmConfig = SsfmConfig()) -> NlcPlan:
    """
    Build a k:(N-k) plan.

    Raises:
        PlanError: If k is outside 0..N
    """
    return NlcPlan(n_spans, k, ssfm)


def plan_split_ratio(n_spans: int, ratio: float, ssfm: SsfmConfig = SsfmConfig()) -> NlcPlan:
    """Plan with k = round_half_up(ratio * N) spans at the transmitter (0.5 gives 7 of 13)."""
    if not 0.0 <= ratio <= 1.0:
        raise PlanError(f"split ratio must be in [0, 1], got {ratio}")
    return NlcPlan(n_spans, round_half_up(ratio * n_spans), ssfm)


_LABEL = re.compile(r"^(\d+):(\d+)$")
_SPLIT = re.compile(r"^split(?:\((\d+(?:\.\d+)?)(%?)\))?$", re.IGNORECASE)


@dataclass(frozen=True)
class Scheme:
    """
    Compensation scheme.

    Attributes:
        kind: "EDC", "TxDBP", "RxDBP" or "Split"
        tx_spans: Explicit k for Split, None to use `ratio`
        rx_spans: Explicit N - k of a "k:m" label, pinning the plan to N = k + m
        ratio: Transmitter share of the spans when tx_spans is None
    """

    kind: str
    tx_spans: Optional[int] = None
    rx_spans: Optional[int] = None
    ratio: float = 0.5

    def __post_init__(self):
        if self.kind not in SCHEME_KINDS:
            raise ConfigError(f"unknown scheme {self.kind!r}; expected one of {SCHEME_KINDS}")
        if self.tx_spans is not None and self.tx_spans < 0:
            raise PlanError(f"tx_spans must be >= 0, got {self.tx_spans}")
        if self.rx_spans is not None and self.rx_spans < 0:
            raise PlanError(f"rx_spans must be >= 0, got {self.rx_spans}")
        if not 0.0 <= self.ratio <= 1.0:
            raise PlanError(f"split ratio must be in [0, 1], got {self.ratio}")

    @classmethod
    def edc(cls) -> "Scheme":
        return cls("EDC")

    @classmethod
    def tx_dbp(cls) -> "Scheme":
        return cls("TxDBP")

    @classmethod
    def rx_dbp(cls) -> "Scheme":
        return cls("RxDBP")

    @classmethod
    def split(cls, tx_spans: Optional[int] = None, ratio: float = 0.5) -> "Scheme":
        return cls("Split", tx_spans=tx_spans, ratio=ratio)

    @classmethod
    def at(cls, tx_spans: int, total_spans: int) -> "Scheme":
        """The k:(N-k) scheme for a given link."""
        return cls("Split", tx_spans=tx_spans, rx_spans=total_spans - tx_spans)

    @classmethod
    def from_label(cls, text: str) -> "Scheme":
        """
        Parse a scheme keyword.

        Accepts "EDC", "TxDBP", "RxDBP", "Split" (50 %), "Split(5)" (k = 5),
        "Split(25%)" or "Split(0.25)" (ratio), and "k:m" labels such as "5:8".
        """
        token = text.strip()
        for kind in ("EDC", "TxDBP", "RxDBP"):
            if token.lower() == kind.lower():
                return cls(kind)
        label = _LABEL.match(token)
        if label:
            return cls("Split", tx_spans=int(label.group(1)), rx_spans=int(label.group(2)))
        split = _SPLIT.match(token)
        if split:
            value, percent = split.group(1), split.group(2)
            if value is None:
                return cls.split()
            if percent:
                return cls.split(ratio=float(value) / 100.0)
            if "." in value:
                return cls.split(ratio=float(value))
            return cls.split(tx_spans=int(value))
        raise ConfigError(f"cannot parse scheme {text!r}")

    @property
    def is_dbp(self) -> bool:
        return self.kind != "EDC"

    def applies_to(self, n_spans: int) -> bool:
        """Whether the scheme is defined for an N-span link."""
        if self.rx_spans is not None:
            return self.tx_spans + self.rx_spans == n_spans
        if self.tx_spans is not None:
            return self.tx_spans <= n_spans
        return True

    def tx_spans_for(self, n_spans: int) -> int:
        """Number of pre-compensated spans on an N-span link (0 for EDC)."""
        if not self.applies_to(n_spans):
            raise PlanError(f"scheme {self} does not apply to a {n_spans}-span link")
        if self.kind in ("EDC", "RxDBP"):
            return 0
        if self.kind == "TxDBP":
            return n_spans
        if self.tx_spans is not None:
            return self.tx_spans
        return round_half_up(self.ratio * n_spans)

    def plan(self, n_spans: int, ssfm: SsfmConfig = SsfmConfig()) -> Optional[NlcPlan]:
        """NlcPlan for DBP schemes, None for EDC."""
        if not self.is_dbp:
            return None
        return NlcPlan(n_spans, self.tx_spans_for(n_spans), ssfm)

    def name_for(self, n_spans: int) -> str:
        """Scheme family on an N-span link: EDC, TxDBP, RxDBP or Split."""
        if not self.is_dbp:
            return "EDC"
        k = self.tx_spans_for(n_spans)
        if k == n_spans and n_spans > 0:
            return "TxDBP"
        if k == 0:
            return "RxDBP"
        return "Split"

    def label(self, n_spans: int) -> str:
        """Return "EDC" or the k:(N-k) label."""
        if not self.is_dbp:
            return "EDC"
        k = self.tx_spans_for(n_spans)
        return f"{k}:{n_spans - k}"

    def code(self, n_spans: int) -> int:
        """Integer key for seed derivation: 0 for EDC, k + 1 for DBP."""
        if not self.is_dbp:
            return 0
        return self.tx_spans_for(n_spans) + 1

    def __str__(self) -> str:
        if self.kind != "Split":
            return self.kind
        if self.rx_spans is not None:
            return f"{self.tx_spans}:{self.rx_spans}"
        if self.tx_spans is not None:
            return f"Split({self.tx_spans})"
        return f"Split({self.ratio!r})"


__all__ = [
    "NlcPlan",
    "Scheme",
    "plan_split",
    "plan_split_ratio",
    "round_half_up",
    "SCHEME_KINDS",
]
