"""Deterministic 64-bit pseudo-random generator (splitmix64).

Every seeded computation in this package draws from :class:`SplitMix64`, so
identical seeds reproduce identical results bit for bit, independent of
platform or interpreter randomization.

Algorithm: 64-bit state advanced by the odd constant 0x9E3779B97F4A7C15,
output mixed with the murmur-style finalizer (constants 0xBF58476D1CE4E5B9
and 0x94D049BB133111EB, shifts 30/27/31).
"""

from __future__ import annotations

from math import log

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """splitmix64 stream seeded with an unsigned 64-bit integer."""

    __slots__ = ("_state",)

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return (z ^ (z >> 31)) & _MASK

    def next_float(self) -> float:
        """Uniform draw in [0, 1) using the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform(self, low: float, high: float) -> float:
        """Uniform draw in [low, high)."""
        return low + (high - low) * self.next_float()

    def randrange(self, n: int) -> int:
        """Unbiased uniform integer in [0, n), by rejection sampling."""
        if n <= 0:
            raise ValueError(f"randrange bound must be positive (got {n})")
        limit = ((1 << 64) // n) * n
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def interior_weights(self, size: int) -> tuple[float, ...]:
        """Random strictly-interior point of the probability simplex.

        Exponential draws normalized (flat Dirichlet), then blended 10%
        toward the barycenter so no coordinate can start at zero.
        """
        draws = [-log(1.0 - self.next_float()) for _ in range(size)]
        total = sum(draws)
        if total <= 0.0:
            return tuple(1.0 / size for _ in range(size))
        floor = 0.1 / size
        return tuple(floor + 0.9 * (d / total) for d in draws)
