"""Seeded, splittable 64-bit random number generator.

SplitMix64 is used everywhere randomness is needed so that results are
bit-reproducible across platforms and Python/numpy versions.  The generator
is counter-based: output i of a stream seeded with s is mix(s + (i+1)*GAMMA),
which lets us draw single values in pure Python and whole blocks with numpy
while consuming exactly the same underlying sequence.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1

# Weyl increment and mixing multipliers of SplitMix64 (Steele, Lea, Flood).
GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

# Distinct increment used only to derive independent child streams.
STREAM_SALT = 0xD1B54A32D192ED03


def mix64(z: int) -> int:
    """Finalizing mix of SplitMix64 on a 64-bit integer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def derive_stream(seed: int, index: int) -> int:
    """Seed for the index-th child stream of a master seed.

    Used by batch runners and rejection loops so that run i is independent
    of run j and of whether earlier runs were kept or discarded.
    """
    return mix64(mix64(seed ^ STREAM_SALT) + (index + 1) * GAMMA)


class SplitMix64:
    """Deterministic 64-bit generator with scalar and block output.

    ``next_u64`` and ``block`` draw from one shared sequence: calling
    ``block(k)`` is equivalent to k calls of ``next_u64``.
    """

    __slots__ = ("seed", "_count")

    def __init__(self, seed: int):
        self.seed = seed & MASK64
        self._count = 0

    def next_u64(self) -> int:
        self._count += 1
        return mix64(self.seed + self._count * GAMMA)

    def block(self, count: int) -> np.ndarray:
        """Next ``count`` outputs as a uint64 array."""
        idx = np.arange(self._count + 1, self._count + count + 1, dtype=np.uint64)
        self._count += count
        z = self.seed + idx * np.uint64(GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
        return z ^ (z >> np.uint64(31))

    def randbelow(self, bound: int) -> int:
        """Uniform integer in [0, bound), free of modulo bias."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % bound

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in the inclusive range [lo, hi]."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        return lo + self.randbelow(hi - lo + 1)

    def spawn(self, index: int) -> "SplitMix64":
        """Independent child stream; see ``derive_stream``."""
        return SplitMix64(derive_stream(self.seed, index))
