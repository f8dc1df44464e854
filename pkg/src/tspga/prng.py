"""Counter-seeded random source with a reseed-per-call discipline.

Every draw increments the seed counter by one and feeds it through the
SplitMix64 mixer, so the whole random stream is a pure function of the
initial seed.  Any implementation with 64-bit unsigned arithmetic can
reproduce it exactly, which is what makes cross-implementation trace
equality possible.
"""

from typing import MutableSequence

from .backend import mix64

_SEED_LIMIT = 1 << 64
_FLOAT_SCALE = 1.0 / (1 << 53)


class PrngState:
    """Single-owner draw counter.  Not safe to share across threads."""

    __slots__ = ("seed", "initial_seed")

    def __init__(self, seed: int = 0):
        if not 0 <= seed < _SEED_LIMIT:
            raise ValueError("initial seed must be an unsigned 64-bit integer")
        self.seed = seed
        self.initial_seed = seed

    @property
    def calls(self) -> int:
        return self.seed - self.initial_seed

    def _next(self) -> int:
        if self.seed + 1 >= _SEED_LIMIT:
            raise OverflowError("seed counter exhausted")
        self.seed += 1
        return mix64(self.seed)

    def rand_float(self) -> float:
        """Uniform in [0, 1) with 53-bit resolution."""
        return (self._next() >> 11) * _FLOAT_SCALE

    def rand_int(self, max: int) -> int:
        """Uniform-ish integer in [0, max); max must be >= 2.

        Plain modulo reduction; bias is negligible for the tiny ranges
        used here.  max == 1 is forbidden: a one-element choice must be
        taken without a draw.
        """
        if max < 2:
            raise ValueError(f"rand_int requires max >= 2, got {max}")
        return self._next() % max

    def shuffle(self, seq: MutableSequence) -> MutableSequence:
        """In-place Fisher-Yates; consumes len(seq)-1 draws (0 for len <= 1)."""
        for i in range(len(seq) - 1, 0, -1):
            j = self.rand_int(i + 1)
            seq[i], seq[j] = seq[j], seq[i]
        return seq

    def last_seed(self) -> int:
        return self.seed
