"""
Gray-coded square QAM mapping.

Each symbol carries log2(M) bits; the first half select the in-phase level and
the second half the quadrature level, both Gray coded so horizontal and
vertical neighbours differ in exactly one bit.
"""

from functools import lru_cache

import numpy as np

from src.errors import ParameterError

SUPPORTED_ORDERS = (4, 16, 64, 256)


def bits_per_symbol(qam_order: int) -> int:
    if qam_order not in SUPPORTED_ORDERS:
        raise ParameterError(
            f"qam_order must be one of {SUPPORTED_ORDERS}, got {qam_order}"
        )
    return int(np.log2(qam_order))


def normalization(qam_order: int) -> float:
    """sqrt of the mean energy 2(M-1)/3 of the unnormalized odd-integer grid."""
    return float(np.sqrt(2.0 * (qam_order - 1) / 3.0))


@lru_cache(maxsize=None)
def _gray_levels(side: int) -> np.ndarray:
    """Amplitude level (odd integer) for each Gray code word of one axis."""
    levels = np.empty(side, dtype=float)
    for index in range(side):
        levels[index ^ (index >> 1)] = 2 * index - (side - 1)
    levels.setflags(write=False)
    return levels


def _bits_to_ints(bits: np.ndarray) -> np.ndarray:
    weights = 1 << np.arange(bits.shape[-1] - 1, -1, -1)
    return bits.astype(np.int64) @ weights


def _ints_to_bits(values: np.ndarray, width: int) -> np.ndarray:
    shifts = np.arange(width - 1, -1, -1)
    return ((values[:, None] >> shifts) & 1).astype(np.uint8)


def map_qam(bits: np.ndarray, qam_order: int) -> np.ndarray:
    """
    Map bits to unit-average-energy Gray square-QAM symbols.

    Args:
        bits: 0/1 array whose length is a multiple of log2(qam_order)
        qam_order: Constellation size (4, 16, 64 or 256)

    Returns:
        Complex symbol array

    Raises:
        ParameterError: If the bit count is not a whole number of symbols
    """
    k = bits_per_symbol(qam_order)
    bits = np.asarray(bits).ravel()
    if bits.size % k:
        raise ParameterError(f"{bits.size} bits is not a multiple of {k} bits per symbol")
    groups = bits.reshape(-1, k)
    side = int(np.sqrt(qam_order))
    levels = _gray_levels(side)
    in_phase = levels[_bits_to_ints(groups[:, : k // 2])]
    quadrature = levels[_bits_to_ints(groups[:, k // 2:])]
    return (in_phase + 1j * quadrature) / normalization(qam_order)


def demap_qam(symbols: np.ndarray, qam_order: int) -> np.ndarray:
    """
    Hard-decision demapping, the inverse of map_qam.

    Returns:
        Flat 0/1 uint8 array with log2(qam_order) bits per symbol
    """
    k = bits_per_symbol(qam_order)
    side = int(np.sqrt(qam_order))
    scaled = np.asarray(symbols).ravel() * normalization(qam_order)

    def axis_bits(values: np.ndarray) -> np.ndarray:
        index = np.clip(np.rint((values + (side - 1)) / 2.0), 0, side - 1).astype(np.int64)
        return _ints_to_bits(index ^ (index >> 1), k // 2)

    return np.hstack([axis_bits(scaled.real), axis_bits(scaled.imag)]).ravel()


def constellation(qam_order: int) -> np.ndarray:
    """All M points, point i carrying the bits of integer i."""
    k = bits_per_symbol(qam_order)
    indices = np.arange(qam_order)
    return map_qam(_ints_to_bits(indices, k).ravel(), qam_order)


def index_bits(indices: np.ndarray, qam_order: int) -> np.ndarray:
    """Flat bit sequence of constellation indices."""
    return _ints_to_bits(np.asarray(indices, dtype=np.int64), bits_per_symbol(qam_order)).ravel()
