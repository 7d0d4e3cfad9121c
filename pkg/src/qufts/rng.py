"""Counter-based random streams for reproducible photon-noise simulation.

Each detector sample owns a private Philox stream keyed by the run seed
with the counter set to sample_index * 2^64.  A Poisson draw consumes
counter blocks only inside its own 2^64-block window, so the result for a
sample depends on (seed, index) alone: regenerating any subset of samples,
in any order or chunking, is bit-identical to a full sequential pass.
"""

from __future__ import annotations

import numpy as np

_COUNTER_STRIDE = 1 << 64
_KEY_MASK = (1 << 128) - 1


def sample_generator(seed: int, sample_index: int) -> np.random.Generator:
    """Generator for one sample's private stream."""
    bitgen = np.random.Philox(
        key=int(seed) & _KEY_MASK, counter=int(sample_index) * _COUNTER_STRIDE
    )
    return np.random.Generator(bitgen)


def poisson_per_sample(seed: int, means, index_offset: int = 0) -> np.ndarray:
    """Independent Poisson draw for every entry of `means`.

    Entry i uses the stream for sample index `index_offset + i`, so a
    caller may generate disjoint chunks with matching offsets and obtain
    exactly the full-array result.
    """
    means = np.asarray(means, dtype=float)
    if np.any(means < 0.0):
        raise ValueError("Poisson means must be nonnegative")
    flat = means.ravel()
    out = np.empty(flat.shape, dtype=float)
    for i, mu in enumerate(flat):
        out[i] = sample_generator(seed, index_offset + i).poisson(mu)
    return out.reshape(means.shape)
