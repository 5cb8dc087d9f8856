"""The patented matrix public-key scheme over Z/n, n = p*q.

Private: an invertible C. Public: A, B = C A C, and G = g(C).
Encrypt: pick D = d(G) invertible, K = D B D, E = D A D, send (K M, E).
Decrypt: K = C E C (D commutes with C), then M = K^-1 (K M).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..algebra import ModMatrix, Modulus, is_prime, lincomb, mat_inverse, mat_mul
from ..errors import BadFactors, DimensionMismatch, ModulusMismatch, NotInvertible
from ..rng import Xoshiro256, as_rng


@dataclass(frozen=True)
class PatentPublicKey:
    n: Modulus
    A: ModMatrix
    B: ModMatrix
    G: ModMatrix

    @property
    def k(self) -> int:
        return self.A.dim


@dataclass(frozen=True)
class PatentPrivateKey:
    C: ModMatrix
    p: int
    q: int


@dataclass(frozen=True)
class PatentCiphertext:
    KM: ModMatrix
    E: ModMatrix


def powers(m: ModMatrix, count: int) -> list[ModMatrix]:
    out = [ModMatrix.identity(m.dim, m.modulus)]
    for _ in range(count - 1):
        out.append(mat_mul(out[-1], m))
    return out


def poly_of(coeffs: Sequence[int], m: ModMatrix) -> ModMatrix:
    """``sum(coeffs[i] * m**i)``."""
    return lincomb(coeffs, powers(m, max(len(coeffs), 1)))


def _check_factors(p: int, q: int) -> Modulus:
    if p == q:
        raise BadFactors("p and q must be distinct")
    for f in (p, q):
        if not is_prime(f):
            raise BadFactors(f"{f} is not prime")
    return Modulus(p * q)


def _random_coeffs(rng: Xoshiro256, degree: int, mod: int) -> list[int]:
    return [rng.below(mod) for _ in range(degree + 1)]


def _invertible(m: ModMatrix) -> bool:
    try:
        mat_inverse(m)
    except NotInvertible:
        return False
    return True


def make_keys(p: int, q: int, A: ModMatrix, C: ModMatrix, g_coeffs: Sequence[int]) -> tuple[PatentPublicKey, PatentPrivateKey]:
    """Deterministic key construction from explicit A, C and ``G = g(C)``."""
    n = _check_factors(p, q)
    A, C = A.reduce(n), C.reduce(n)
    B = mat_mul(mat_mul(C, A), C)
    G = poly_of(g_coeffs, C)
    return PatentPublicKey(n, A, B, G), PatentPrivateKey(C, p, q)


def patent_keygen(
    p: int,
    q: int,
    k: int,
    rng: "Xoshiro256 | int",
    g_degree: int | None = None,
) -> tuple[PatentPublicKey, PatentPrivateKey]:
    """Random keys. ``g_degree`` defaults to k-1, the full range allowed by
    Cayley-Hamilton."""
    n = _check_factors(p, q)
    if k < 2:
        raise ValueError("k must be at least 2")
    rng = as_rng(rng)
    degree = k - 1 if g_degree is None else g_degree
    while True:
        A = ModMatrix.random(k, n, rng)
        if _invertible(A):
            break
    while True:
        C = ModMatrix.random(k, n, rng)
        if _invertible(C):
            break
    return make_keys(p, q, A, C, _random_coeffs(rng, degree, n.value))


def encrypt_with(pk: PatentPublicKey, M: ModMatrix, D: ModMatrix) -> tuple[PatentCiphertext, ModMatrix]:
    """Encrypt under an explicit session matrix ``D`` (a polynomial in G).
    Returns the ciphertext and the session key K."""
    if M.dim != pk.k or D.dim != pk.k:
        raise DimensionMismatch("message/session matrix has the wrong size")
    if M.modulus != pk.n or D.modulus != pk.n:
        raise ModulusMismatch("message/session matrix has the wrong modulus")
    K = mat_mul(mat_mul(D, pk.B), D)
    E = mat_mul(mat_mul(D, pk.A), D)
    return PatentCiphertext(mat_mul(K, M), E), K


def patent_encrypt(
    pk: PatentPublicKey,
    M: ModMatrix,
    rng: "Xoshiro256 | int",
    d_degree: int | None = None,
) -> tuple[PatentCiphertext, ModMatrix]:
    """Random ``D = d(G)``, resampled until invertible.

    The returned K is ground truth for tests and the harness; it is never
    written into a ciphertext file.
    """
    rng = as_rng(rng)
    degree = pk.k - 1 if d_degree is None else d_degree
    gp = powers(pk.G, degree + 1)
    while True:
        D = lincomb(_random_coeffs(rng, degree, pk.n.value), gp)
        if _invertible(D):
            break
    return encrypt_with(pk, M, D)


def patent_decrypt(sk: PatentPrivateKey, pk: PatentPublicKey, ct: PatentCiphertext) -> ModMatrix:
    K = mat_mul(mat_mul(sk.C, ct.E), sk.C)
    return mat_mul(mat_inverse(K), ct.KM)
