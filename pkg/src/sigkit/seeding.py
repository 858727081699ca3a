"""Deterministic seed derivation shared by every random stage."""

import numpy as np

from src.errors import ParameterError


def derive_seed(master: int, *keys: int) -> int:
    """
    Derive an independent 64-bit seed from a master seed and integer keys.

    Changing any key gives an unrelated stream; the same keys always give the
    same seed, regardless of call order or process.
    """
    entropy = [int(master), *(int(key) for key in keys)]
    if any(value < 0 for value in entropy):
        raise ParameterError(f"seed keys must be non-negative, got {entropy}")
    # SeedSequence pads short entropy with zeros; the key count keeps
    # (master, k) and (master, k, 0) apart
    entropy.append(len(keys))
    state = np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)
    return int(state[0])


def rng_for(seed: int) -> np.random.Generator:
    """PCG64 generator for a derived seed."""
    return np.random.default_rng(seed)


def complex_gaussian(rng: np.random.Generator, shape, variance: float) -> np.ndarray:
    """Circular complex Gaussian samples with E|n|^2 = variance."""
    scale = np.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
