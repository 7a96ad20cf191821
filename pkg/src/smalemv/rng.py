"""Deterministic 64-bit random streams.

Campaigns and searches must replay bit-for-bit from a single 64-bit seed,
independently of platform and library versions, so randomness comes from a
small splitmix64 generator instead of the stdlib or numpy generators.
Parallel streams are derived by folding a stream index into the parent seed
through the splitmix finalizer.
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15

_TWO_PI = 2.0 * math.pi


def mix64(x: int) -> int:
    """splitmix64 finalizer; a bijection on 64-bit words."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(seed: int, *indices: int) -> int:
    """Child seed for a sub-stream: one mixing round per folded index."""
    s = seed & _MASK64
    for k in indices:
        s = mix64(s ^ (k & _MASK64))
    return s


class SplitMix64:
    """splitmix64 sequence generator (Steele, Lea, Flood)."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return mix64(self._state)

    def uniform(self) -> float:
        """Uniform double in [0, 1), 53 significant bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def gaussian_complex(self) -> complex:
        """Complex value with independent N(0, 1) real and imaginary parts."""
        # Box-Muller; shift the first uniform into (0, 1] to keep log finite.
        u1 = ((self.next_u64() >> 11) + 1) * 2.0**-53
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        return complex(r * math.cos(_TWO_PI * u2), r * math.sin(_TWO_PI * u2))

    def disk_point(self) -> complex:
        """Area-uniform point of the closed unit disk."""
        r = math.sqrt(self.uniform())
        theta = _TWO_PI * self.uniform()
        return complex(r * math.cos(theta), r * math.sin(theta))

    def annulus_point(self, r_min: float, r_max: float) -> complex:
        """Area-uniform point of the annulus r_min <= |z| <= r_max."""
        if not 0.0 <= r_min <= r_max:
            raise ValueError(f"invalid annulus radii ({r_min}, {r_max})")
        r = math.sqrt(r_min * r_min + self.uniform() * (r_max * r_max - r_min * r_min))
        theta = _TWO_PI * self.uniform()
        return complex(r * math.cos(theta), r * math.sin(theta))
