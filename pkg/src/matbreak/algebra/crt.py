"""Chinese Remainder recombination of residue matrices."""

from __future__ import annotations

from math import gcd

from ..errors import DimensionMismatch, ModuliNotCoprime
from .matrix import ModMatrix
from .modulus import Modulus, as_modulus


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """The unique ``x mod m1*m2`` with ``x = r1 (m1)`` and ``x = r2 (m2)``."""
    if gcd(m1, m2) != 1:
        raise ModuliNotCoprime(f"gcd({m1}, {m2}) = {gcd(m1, m2)}")
    h = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * h


def crt_recombine(
    mp: ModMatrix,
    mq: ModMatrix,
    p: "Modulus | int | None" = None,
    q: "Modulus | int | None" = None,
) -> ModMatrix:
    """Entrywise CRT lift of ``(mp mod p, mq mod q)`` to a matrix mod ``p*q``."""
    p = mp.mod if p is None else as_modulus(p).value
    q = mq.mod if q is None else as_modulus(q).value
    if mp.dim != mq.dim:
        raise DimensionMismatch(f"dims {mp.dim} and {mq.dim}")
    if p == q or gcd(p, q) != 1:
        raise ModuliNotCoprime(f"{p} and {q} are not coprime")
    mp, mq = mp.reduce(p), mq.reduce(q)
    inv = pow(p, -1, q)
    entries = tuple(a + p * ((b - a) * inv % q) for a, b in zip(mp.entries, mq.entries))
    return ModMatrix(mp.dim, Modulus(p * q), entries)
