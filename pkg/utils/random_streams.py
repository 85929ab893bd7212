"""Named, reproducible random sub-streams derived from a single seed"""
import zlib

import numpy as np


def stream(seed: int, name: str, *indices: int) -> np.random.Generator:
    """
    Build a generator for the sub-stream ``name`` at ``indices``.

    The same (seed, name, indices) always yields the same draws, and
    draws do not depend on the order in which streams are requested.
    """
    key = zlib.crc32(name.encode("utf-8"))
    seq = np.random.SeedSequence(entropy=[int(seed), key], spawn_key=tuple(int(i) for i in indices))
    return np.random.default_rng(seq)
