"""The two-matrix non-commutative key exchange over GL(n, F_p).

Public: a prime p and two non-commuting invertible matrices M1, M2.
Alice sends ``C1 = M1^a1 M2^a2``; Bob replies ``C2 = M1^b1 C1 M2^b2`` and
keeps ``K = M1^b1 M2^b2``; Alice recovers ``K = M1^-a1 C2 M2^-a2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra import ModMatrix, Modulus, as_modulus, mat_inverse, mat_mul, mat_pow
from ..errors import DegenerateDim, DimensionMismatch, ModulusMismatch, NotInvertible
from ..rng import Xoshiro256, as_rng

DEFAULT_EXPONENT_RANGE = (2, 1 << 20)


@dataclass(frozen=True)
class KexParams:
    modulus: Modulus
    M1: ModMatrix
    M2: ModMatrix

    def __post_init__(self):
        m = as_modulus(self.modulus).require_prime()
        object.__setattr__(self, "modulus", m)
        for mat in (self.M1, self.M2):
            if mat.modulus != m:
                raise ModulusMismatch(f"matrix mod {mat.mod} in params mod {m}")
        if self.M1.dim != self.M2.dim:
            raise DimensionMismatch("M1 and M2 differ in size")
        if self.M1.commutes_with(self.M2):
            raise ValueError("M1 and M2 commute")
        for name, mat in (("M1", self.M1), ("M2", self.M2)):
            try:
                mat_inverse(mat)
            except NotInvertible:
                raise NotInvertible(f"{name} is singular") from None

    @property
    def dim(self) -> int:
        return self.M1.dim


@dataclass(frozen=True)
class KexSecret:
    e1: int
    e2: int


@dataclass(frozen=True)
class KexTranscript:
    """Everything a passive eavesdropper sees."""

    params: KexParams
    C1: ModMatrix
    C2: ModMatrix
    seed: int | None = field(default=None, compare=False)

    def __post_init__(self):
        for mat in (self.C1, self.C2):
            if mat.dim != self.params.dim:
                raise DimensionMismatch("transcript matrix has the wrong size")
            if mat.modulus != self.params.modulus:
                raise ModulusMismatch("transcript matrix has the wrong modulus")


def _random_invertible(dim: int, modulus: Modulus, rng: Xoshiro256) -> ModMatrix:
    while True:
        m = ModMatrix.random(dim, modulus, rng)
        try:
            mat_inverse(m)
        except NotInvertible:
            continue
        return m


def kex_keygen(modulus: "Modulus | int", dim: int, rng: "Xoshiro256 | int") -> KexParams:
    """Random public parameters; resamples until both matrices are invertible
    and they do not commute."""
    if dim < 2:
        raise DegenerateDim("1x1 matrices always commute; need dim >= 2")
    mod = as_modulus(modulus).require_prime()
    rng = as_rng(rng)
    while True:
        m1 = _random_invertible(dim, mod, rng)
        m2 = _random_invertible(dim, mod, rng)
        if not m1.commutes_with(m2):
            return KexParams(mod, m1, m2)


def sample_secret(rng: "Xoshiro256 | int", lo: int = DEFAULT_EXPONENT_RANGE[0], hi: int = DEFAULT_EXPONENT_RANGE[1]) -> KexSecret:
    rng = as_rng(rng)
    return KexSecret(rng.randint(lo, hi), rng.randint(lo, hi))


def alice_init(params: KexParams, secret: KexSecret) -> ModMatrix:
    return mat_mul(mat_pow(params.M1, secret.e1), mat_pow(params.M2, secret.e2))


def bob_respond(params: KexParams, C1: ModMatrix, secret: KexSecret) -> tuple[ModMatrix, ModMatrix]:
    """Return ``(C2, K)``."""
    left = mat_pow(params.M1, secret.e1)
    right = mat_pow(params.M2, secret.e2)
    return mat_mul(mat_mul(left, C1), right), mat_mul(left, right)


def alice_finalize(params: KexParams, secret: KexSecret, C2: ModMatrix) -> ModMatrix:
    return mat_mul(mat_mul(mat_pow(params.M1, -secret.e1), C2), mat_pow(params.M2, -secret.e2))


@dataclass(frozen=True)
class KexRun:
    """An honest exchange with its secrets; only ``transcript`` is public."""

    transcript: KexTranscript
    alice: KexSecret
    bob: KexSecret
    key_alice: ModMatrix
    key_bob: ModMatrix


def run_exchange(params: KexParams, alice: KexSecret, bob: KexSecret, seed: int | None = None) -> KexRun:
    C1 = alice_init(params, alice)
    C2, k_bob = bob_respond(params, C1, bob)
    k_alice = alice_finalize(params, alice, C2)
    return KexRun(KexTranscript(params, C1, C2, seed), alice, bob, k_alice, k_bob)


def random_run(modulus: "Modulus | int", dim: int, seed: int, exponent_range=DEFAULT_EXPONENT_RANGE) -> KexRun:
    """Keygen plus one exchange, all drawn from a single seeded stream."""
    rng = Xoshiro256(seed)
    params = kex_keygen(modulus, dim, rng)
    alice = sample_secret(rng, *exponent_range)
    bob = sample_secret(rng, *exponent_range)
    return run_exchange(params, alice, bob, seed)
