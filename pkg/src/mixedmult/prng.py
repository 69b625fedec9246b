"""Deterministic 64-bit PRNG for genericity sampling.

The generator is splitmix64 (Steele-Lea-Vigna), fixed constants, so that
seeded runs are bit-reproducible across platforms and Python versions.
Uniform draws below a bound use rejection sampling, never modulo bias.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _mix64(z: int) -> int:
    z = (z ^ (z >> 30)) * _MIX1 & _MASK64
    z = (z ^ (z >> 27)) * _MIX2 & _MASK64
    return z ^ (z >> 31)


class Prng:
    """splitmix64 stream; ``fork(k)`` derives independent child streams."""

    __slots__ = ("seed", "_state")

    def __init__(self, seed: int):
        self.seed = seed & _MASK64
        self._state = self.seed

    def u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return _mix64(self._state)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            z = self.u64()
            if z < limit:
                return z % n

    def field(self, p: int) -> int:
        return self.below(p)

    def fork(self, index: int) -> "Prng":
        """Child stream number ``index``, derived from the original seed only.

        Children depend on (seed, index), not on how much of the parent
        stream was consumed, so trials can run in any order.
        """
        if index < 0:
            raise ValueError("fork index must be nonnegative")
        return Prng(_mix64((self.seed + (index + 1) * _GAMMA) & _MASK64))
