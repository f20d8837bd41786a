"""Deterministic RNG streams keyed by a user seed and a purpose tag."""

import hashlib

import numpy as np

__all__ = ["rng_for"]

_MAX_SEED = 2**64


def rng_for(seed: int, tag: str) -> np.random.Generator:
    """Return a PCG64 generator for one purpose, decoupled from all others.

    The tag is hashed into four 32-bit words that extend the seed material,
    so streams for different purposes ("erdos_renyi", "initial_phases", ...)
    never overlap and adding a new purpose does not perturb existing draws.
    Identical (seed, tag) pairs give identical streams on any platform.
    """
    seed = int(seed)
    if not 0 <= seed < _MAX_SEED:
        raise ValueError(f"seed must be in [0, 2**64), got {seed}")
    digest = hashlib.sha256(tag.encode("utf-8")).digest()
    words = [int.from_bytes(digest[i:i + 4], "little") for i in range(0, 16, 4)]
    return np.random.default_rng(np.random.SeedSequence([seed, *words]))
