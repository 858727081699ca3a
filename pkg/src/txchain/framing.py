"""
Pilot-framed transmit symbol frames.

A frame is a known QPSK preamble followed by a payload in which every
`pilot_rate_inverse`-th symbol (starting with the first) is a known QPSK
pilot and the rest carry QAM data.
"""

import logging
from dataclasses import dataclass

import numpy as np

from src.errors import ParameterError
from src.sigkit import rng_for
from src.txchain.qam import bits_per_symbol, constellation, index_bits

logger = logging.getLogger('splitnlc.txchain')

QPSK_POINTS = np.array([1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j]) / np.sqrt(2.0)


@dataclass(frozen=True)
class ModulationSpec:
    """
    Per-channel modulation and framing parameters.

    Attributes:
        qam_order: Square QAM order (4/16/64/256)
        symbol_rate: Symbol rate in Hz
        roll_off: RRC roll-off factor
        payload_symbols: Payload length including payload pilots
        pilot_preamble_len: Known preamble length in symbols
        pilot_rate_inverse: One pilot every this many payload symbols
        prng_seed: Seed for pilot and data generation
        rrc_span_symbols: Pulse-shaping filter length in symbols
    """

    qam_order: int = 64
    symbol_rate: float = 49.5e9
    roll_off: float = 0.01
    payload_symbols: int = 32768
    pilot_preamble_len: int = 1024
    pilot_rate_inverse: int = 32
    prng_seed: int = 0
    rrc_span_symbols: int = 128

    def __post_init__(self):
        bits_per_symbol(self.qam_order)
        if self.symbol_rate <= 0:
            raise ParameterError(f"symbol_rate must be positive, got {self.symbol_rate}")
        if not 0.0 <= self.roll_off <= 1.0:
            raise ParameterError(f"roll_off must be in [0, 1], got {self.roll_off}")
        if self.pilot_preamble_len <= 0 or self.pilot_rate_inverse <= 0:
            raise ParameterError("pilot_preamble_len and pilot_rate_inverse must be positive")
        if self.payload_symbols <= 0 or self.payload_symbols % self.pilot_rate_inverse:
            raise ParameterError(
                f"payload_symbols ({self.payload_symbols}) must be a positive multiple "
                f"of pilot_rate_inverse ({self.pilot_rate_inverse})"
            )
        if self.prng_seed < 0:
            raise ParameterError("prng_seed must be non-negative")

    @property
    def frame_symbols(self) -> int:
        return self.pilot_preamble_len + self.payload_symbols

    @property
    def payload_pilots(self) -> int:
        return self.payload_symbols // self.pilot_rate_inverse

    @property
    def data_symbols(self) -> int:
        return self.payload_symbols - self.payload_pilots

    @property
    def pilot_overhead(self) -> float:
        """(preamble + payload pilots) / frame length."""
        return (self.pilot_preamble_len + self.payload_pilots) / self.frame_symbols

    @property
    def occupied_bandwidth(self) -> float:
        return (1.0 + self.roll_off) * self.symbol_rate


@dataclass(frozen=True, eq=False)
class TxFrame:
    """
    Transmitted symbol frame for one channel.

    Attributes:
        symbols_x: X-polarization symbols (unit mean energy)
        symbols_y: Y-polarization symbols (unit mean energy)
        pilot_mask: True at preamble and payload pilot positions
        source_bits: (2, n_data * log2(M)) data bits per polarization
        qam_order: Data constellation order
        preamble_len: Number of leading preamble symbols
    """

    symbols_x: np.ndarray
    symbols_y: np.ndarray
    pilot_mask: np.ndarray
    source_bits: np.ndarray
    qam_order: int
    preamble_len: int

    def __post_init__(self):
        for name in ("symbols_x", "symbols_y", "pilot_mask", "source_bits"):
            getattr(self, name).setflags(write=False)

    @property
    def symbols(self) -> np.ndarray:
        """(2, n) symbol array."""
        return np.stack([self.symbols_x, self.symbols_y])

    @property
    def n_symbols(self) -> int:
        return int(self.symbols_x.size)

    @property
    def pilot_indices(self) -> np.ndarray:
        return np.flatnonzero(self.pilot_mask)

    @property
    def data_indices(self) -> np.ndarray:
        return np.flatnonzero(~self.pilot_mask)

    @property
    def preamble(self) -> np.ndarray:
        """(2, preamble_len) known preamble."""
        return self.symbols[:, : self.preamble_len]


def _balanced_indices(rng: np.random.Generator, count: int, qam_order: int) -> np.ndarray:
    """Random constellation indices using every point equally often (up to the remainder)."""
    repeats = -(-count // qam_order)
    pool = np.tile(np.arange(qam_order), repeats)
    remainder_start = (repeats - 1) * qam_order
    tail = rng.permutation(pool[remainder_start:])
    pool = np.concatenate([pool[:remainder_start], tail])[:count]
    return rng.permutation(pool)


def build_frame(mod: ModulationSpec) -> TxFrame:
    """
    Generate the pilot-framed symbol frame of one channel.

    Args:
        mod: Modulation and framing parameters

    Returns:
        TxFrame, deterministic in mod.prng_seed
    """
    rng = rng_for(mod.prng_seed)
    n = mod.frame_symbols

    pilot_mask = np.zeros(n, dtype=bool)
    pilot_mask[: mod.pilot_preamble_len] = True
    pilot_mask[mod.pilot_preamble_len::mod.pilot_rate_inverse] = True
    n_known = int(pilot_mask.sum())

    points = constellation(mod.qam_order)
    symbols = np.empty((2, n), dtype=np.complex128)
    bits = []
    for pol in range(2):
        symbols[pol, pilot_mask] = QPSK_POINTS[rng.integers(0, 4, n_known)]
        data = _balanced_indices(rng, mod.data_symbols, mod.qam_order)
        symbols[pol, ~pilot_mask] = points[data]
        bits.append(index_bits(data, mod.qam_order))

    logger.debug(
        f"built frame: {n} symbols, {n_known} known, overhead {mod.pilot_overhead:.4f}"
    )
    return TxFrame(
        symbols_x=symbols[0],
        symbols_y=symbols[1],
        pilot_mask=pilot_mask,
        source_bits=np.stack(bits),
        qam_order=mod.qam_order,
        preamble_len=mod.pilot_preamble_len,
    )


__all__ = ["ModulationSpec", "TxFrame", "build_frame", "QPSK_POINTS"]
