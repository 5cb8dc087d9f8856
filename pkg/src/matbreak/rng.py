"""Seedable xoshiro256** generator.

The stream is fully specified (Blackman & Vigna's xoshiro256**, state
expanded from a 64-bit seed with splitmix64), so campaigns replay bit for bit
on any platform and in any language that implements the same two functions.
"""

from __future__ import annotations

NAME = "xoshiro256**/splitmix64"

_MASK = (1 << 64) - 1


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state; return ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


class Xoshiro256:
    __slots__ = ("seed", "_s")

    def __init__(self, seed: int):
        self.seed = seed & _MASK
        st = self.seed
        s = []
        for _ in range(4):
            st, out = splitmix64(st)
            s.append(out)
        self._s = s

    def next_u64(self) -> int:
        s = self._s
        result = (_rotl((s[1] * 5) & _MASK, 7) * 9) & _MASK
        t = (s[1] << 17) & _MASK
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection sampling."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        if bound == 1:
            return 0
        bits = (bound - 1).bit_length()
        if bits > 64:
            raise ValueError("bound exceeds 64 bits")
        mask = (1 << bits) - 1
        while True:
            r = self.next_u64() & mask
            if r < bound:
                return r

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in the closed range ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def residues(self, count: int, modulus: int) -> list[int]:
        return [self.below(modulus) for _ in range(count)]

    def spawn(self, index: int) -> "Xoshiro256":
        """Independent child stream keyed on ``(seed, index)``."""
        _, child = splitmix64(self.seed ^ ((index * 0xD1342543DE82EF95) & _MASK))
        return Xoshiro256(child)


def as_rng(rng: "Xoshiro256 | int") -> Xoshiro256:
    return rng if isinstance(rng, Xoshiro256) else Xoshiro256(rng)
