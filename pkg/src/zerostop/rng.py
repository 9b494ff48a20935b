"""Deterministic, platform-independent randomness.

The bit source is Philox4x64-10 (a counter-based generator) as exposed
by ``numpy.random.Philox`` with ``key=seed`` and the default zero counter;
numpy increments the counter before the first block, so the first four
outputs are the Philox block at counter 1.  Only ``random_raw`` is used:
bounded draws and shuffling are defined here, so the seed -> permutation
map depends on nothing but the Philox stream.

Per-replication seeds come from :func:`mix64`, the SplitMix64 output
function applied to ``seed + (r + 1) * 0x9E3779B97F4A7C15``.
"""

from __future__ import annotations

import numpy as np

GENERATOR_NAME = "Philox4x64-10"
MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(z: int) -> int:
    """SplitMix64 finalizer (Steele, Lea, Flood 2014)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix64(seed: int, counter: int) -> int:
    """Seed for replication ``counter``: the counter-th SplitMix64 output."""
    return splitmix64(seed + (counter + 1) * GOLDEN_GAMMA)


def _check_seed(seed: int) -> int:
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


class PhiloxStream:
    """Unsigned 64-bit outputs of Philox4x64-10 keyed by ``seed``."""

    def __init__(self, seed: int, batch: int = 16):
        self._bits = np.random.Philox(key=_check_seed(seed))
        self._batch = batch
        self._buffer: list[int] = []

    def next_u64(self) -> int:
        if not self._buffer:
            self._buffer = self._bits.random_raw(self._batch).tolist()
            self._buffer.reverse()
        return self._buffer.pop()

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection (no modulo bias)."""
        if bound < 1:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound


def shuffle(items, seed: int) -> list:
    """Fisher-Yates shuffle of ``items`` driven by ``PhiloxStream(seed)``.

    Position i (from n-1 down to 1) swaps with ``below(i + 1)``.
    """
    out = list(items)
    stream = PhiloxStream(seed, batch=max(len(out), 1))
    for i in range(len(out) - 1, 0, -1):
        j = stream.below(i + 1)
        out[i], out[j] = out[j], out[i]
    return out
