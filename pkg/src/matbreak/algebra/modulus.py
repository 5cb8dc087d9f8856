"""Moduli, residues and scalar modular arithmetic."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from ..errors import ModulusMismatch, NonUnit, NotPrime

MAX_MODULUS = 1 << 63

# Deterministic Miller-Rabin witnesses for every n < 3.3e24, which covers 2**63.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Modulus:
    """A modulus ``2 <= value < 2**63`` with its primality recorded."""

    value: int
    is_prime: bool = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        v = self.value
        if not isinstance(v, int) or isinstance(v, bool):
            raise TypeError(f"modulus must be an int, got {type(v).__name__}")
        if not 2 <= v < MAX_MODULUS:
            raise ValueError(f"modulus {v} outside [2, 2**63)")
        object.__setattr__(self, "is_prime", is_prime(v))

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)

    def require_prime(self) -> "Modulus":
        if not self.is_prime:
            raise NotPrime(f"operation needs a prime modulus, got {self.value}")
        return self


def as_modulus(m: "Modulus | int") -> Modulus:
    return m if isinstance(m, Modulus) else Modulus(m)


def inverse_mod(a: int, m: int) -> int:
    """Inverse of ``a`` modulo ``m`` as a plain int; raises :class:`NonUnit`."""
    a %= m
    g = gcd(a, m)
    if g != 1:
        raise NonUnit(a, m, g)
    return pow(a, -1, m)


@dataclass(frozen=True)
class ModInt:
    residue: int
    modulus: Modulus

    def __post_init__(self):
        m = as_modulus(self.modulus)
        object.__setattr__(self, "modulus", m)
        object.__setattr__(self, "residue", self.residue % m.value)

    def _coerce(self, other) -> int:
        if isinstance(other, ModInt):
            if other.modulus != self.modulus:
                raise ModulusMismatch(f"{self.modulus} != {other.modulus}")
            return other.residue
        if isinstance(other, int):
            return other
        return NotImplemented

    def _new(self, r: int) -> "ModInt":
        return ModInt(r, self.modulus)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.residue + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.residue - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(o - self.residue)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.residue * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.residue)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * inverse_mod(o, self.modulus.value)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** -e
        return self._new(pow(self.residue, e, self.modulus.value))

    def __eq__(self, other):
        if isinstance(other, ModInt):
            return self.modulus == other.modulus and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.modulus.value
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.modulus.value))

    def __int__(self) -> int:
        return self.residue

    def __bool__(self) -> bool:
        return self.residue != 0

    def __repr__(self) -> str:
        return f"ModInt({self.residue}, {self.modulus.value})"

    def inverse(self) -> "ModInt":
        return self._new(inverse_mod(self.residue, self.modulus.value))


def mod_inverse(a: ModInt) -> ModInt:
    """Multiplicative inverse; :class:`NonUnit` carries ``gcd(a, m)`` on failure."""
    return a.inverse()


def random_prime(bits: int, rng, exclude: tuple[int, ...] = ()) -> int:
    """Uniform-ish random prime with exactly ``bits`` bits."""
    if not 2 <= bits <= 63:
        raise ValueError("bits must be in [2, 63]")
    lo, hi = 1 << (bits - 1), (1 << bits) - 1
    while True:
        c = rng.randint(lo, hi)
        if is_prime(c) and c not in exclude:
            return c
