"""Deterministic 64-bit PRNG with a pinned algorithm identity.

SplitMix64 (Steele, Lea, Flood 2014), the exact variant used as the seeding
generator of the xoshiro family. The algorithm is pinned so that reports
citing ``splitmix64`` are reproducible by any other implementation:

    state += 0x9E3779B97F4A7C15                 (mod 2**64)
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9    (mod 2**64)
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB    (mod 2**64)
    output = z ^ (z >> 31)

Reference outputs from seed 0: 0xe220a8397b1dcdaf, 0x6e789e6aa1b965f4,
0x06c45d188009454f, 0xf88bb8a8724c81ec, 0x1b39896a51a8749b.

Residues mod q are drawn by rejection sampling (reject draws >= the largest
multiple of q below 2**64), so they are exactly uniform.
"""

from __future__ import annotations

PRNG_ID = "splitmix64"

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Sequential SplitMix64 stream over 64-bit outputs."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def randbelow(self, q: int) -> int:
        """Uniform residue in [0, q) via rejection sampling."""
        if q <= 0:
            raise ValueError("q must be positive")
        bound = (1 << 64) - ((1 << 64) % q)
        while True:
            v = self.next64()
            if v < bound:
                return v % q

    def derive(self, salt: int) -> "SplitMix64":
        """An independent deterministic substream (for per-trial seeding)."""
        child = SplitMix64((self.state ^ (salt * _GAMMA)) & _MASK)
        child.next64()
        return child
