"""Reproducible random streams.

All stochastic routines draw from Philox (a counter-based generator), with
one substream per simulation replicate. The substream key is::

    key = (seed, context * 2**32 + replicate_index)

where ``context`` distinguishes independent draws within one run (e.g. the
points of a power curve) and defaults to 0. Because a replicate's stream
depends only on (seed, context, index), results are identical however the
replicates are scheduled across threads, and paired comparisons (same seed,
different method or level) reuse exactly the same draws.

Reproducibility holds bit-for-bit for a given generator; other
implementations of the same procedures will agree in distribution, not in
individual replicate values.
"""

import numpy as np

GENERATOR_NAME = "philox4x64"

_CONTEXT_STRIDE = 2**32


def substream(seed: int, replicate: int, context: int = 0) -> np.random.Generator:
    """Generator for one replicate, independent of all other replicates."""
    if seed < 0:
        raise ValueError("seed must be a nonnegative integer")
    if not 0 <= replicate < _CONTEXT_STRIDE:
        raise ValueError("replicate index out of range")
    key = np.array([seed, context * _CONTEXT_STRIDE + replicate], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
