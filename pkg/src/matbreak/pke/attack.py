"""Key and message recovery for the patented scheme, given the factors of n.

Mod a prime factor p the session matrix is ``D_p = sum x_i G_p^i``, so
``E_p = D_p A_p D_p`` is quadratic in x. Relinearizing ``u_ij = x_i x_j``
(i <= j) makes it linear in k(k+1)/2 unknowns. No factoring of u back into x
is needed: for any solution,

    sum u_ij S^B_ij = C_p (sum u_ij S^A_ij) C_p = C_p E_p C_p = K_p

because every G^i commutes with C. The two partial keys are then lifted to
K mod n by CRT, and ``M = K^-1 (K M)``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import cached_property

from ..algebra import (
    LinearSolveResult,
    ModMatrix,
    Modulus,
    as_modulus,
    crt_recombine,
    lincomb,
    mat_inverse,
    mat_mul,
    solve_linear,
)
from ..errors import DimensionMismatch, ModulusMismatch, NotADivisor, NotRankOne, ZeroMatrix
from ..report import AttackReport
from .patent import PatentCiphertext, PatentPublicKey, powers


def reduce_mod(x: ModMatrix, prime: "Modulus | int") -> ModMatrix:
    prime = as_modulus(prime)
    if x.mod % prime.value:
        raise NotADivisor(f"{prime.value} does not divide {x.mod}")
    return x.reduce(prime)


def sym_index(k: int) -> list[tuple[int, int]]:
    """Unknown ordering: ``(i, j)`` with ``i <= j``, lexicographic."""
    return [(i, j) for i in range(k) for j in range(i, k)]


def _sym_basis(gp: list[ModMatrix], X: ModMatrix) -> tuple[ModMatrix, ...]:
    out = []
    for i, j in sym_index(len(gp)):
        t = mat_mul(mat_mul(gp[i], X), gp[j])
        if i != j:
            t = t + mat_mul(mat_mul(gp[j], X), gp[i])
        out.append(t)
    return tuple(out)


@dataclass(frozen=True)
class QuadraticSystem:
    """``sum_{i<=j} u_ij S^A_ij = E_p`` plus the matching ``S^B_ij``."""

    prime: Modulus
    k: int
    sym_basis_a: tuple[ModMatrix, ...]
    sym_basis_b: tuple[ModMatrix, ...] | None
    rhs: tuple[int, ...]

    @property
    def unknowns(self) -> list[tuple[int, int]]:
        return sym_index(self.k)

    @property
    def coeff(self) -> list[list[int]]:
        return [[s.entries[r] for s in self.sym_basis_a] for r in range(self.k * self.k)]

    @cached_property
    def solution(self) -> LinearSolveResult:
        return solve_linear(self.coeff, self.rhs, self.prime)

    def key_from(self, u) -> ModMatrix:
        """``sum u_ij S^B_ij``."""
        if self.sym_basis_b is None:
            raise ValueError("system was built without B")
        return lincomb(u, self.sym_basis_b)


def build_quadratic_system(Gp: ModMatrix, Ap: ModMatrix, Ep: ModMatrix, Bp: ModMatrix | None = None) -> QuadraticSystem:
    mats = [Gp, Ap, Ep] + ([Bp] if Bp is not None else [])
    if len({m.dim for m in mats}) != 1:
        raise DimensionMismatch("G, A, E, B must share a size")
    if len({m.modulus for m in mats}) != 1:
        raise ModulusMismatch("G, A, E, B must share a modulus")
    prime = Gp.modulus.require_prime()
    gp = powers(Gp, Gp.dim)
    sa = _sym_basis(gp, Ap)
    sb = _sym_basis(gp, Bp) if Bp is not None else None
    return QuadraticSystem(prime, Gp.dim, sa, sb, Ep.entries)


@dataclass(frozen=True)
class PartialKey:
    prime: Modulus
    Kp: ModMatrix
    system: QuadraticSystem


def recover_partial_key(pk: PatentPublicKey, E: ModMatrix, prime: "Modulus | int") -> PartialKey:
    """K mod ``prime`` from public data; free unknowns are set to zero."""
    prime = as_modulus(prime).require_prime()
    system = build_quadratic_system(
        reduce_mod(pk.G, prime),
        reduce_mod(pk.A, prime),
        reduce_mod(E, prime),
        reduce_mod(pk.B, prime),
    )
    return PartialKey(prime, system.key_from(system.solution.particular), system)


def recover_key_and_message(
    pk: PatentPublicKey,
    ct: PatentCiphertext,
    p: int,
    q: int,
    truth: ModMatrix | None = None,
) -> tuple[ModMatrix, ModMatrix, AttackReport]:
    if p * q != pk.n.value:
        raise NotADivisor(f"{p} * {q} != {pk.n.value}")
    t0 = time.perf_counter()
    kp = recover_partial_key(pk, ct.E, p)
    kq = recover_partial_key(pk, ct.E, q)
    t1 = time.perf_counter()
    K = crt_recombine(kp.Kp, kq.Kp, p, q)
    M = mat_mul(mat_inverse(K), ct.KM)
    elapsed = time.perf_counter() - t0
    report = AttackReport(
        recovered_k=K,
        attempts=1,
        elapsed=elapsed,
        verified=None if truth is None else K == truth,
        solve_seconds=t1 - t0,
        nullity=max(kp.system.solution.nullity, kq.system.solution.nullity),
    )
    return K, M, report


def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of ``a`` mod an odd prime (Tonelli-Shanks), the smaller
    of the two; ``None`` for non-residues."""
    a %= p
    if a == 0 or p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return min(r, p - r)


def extract_coefficients(system: QuadraticSystem, u) -> tuple[int, ...]:
    """Diagnostic only: recover x from a symmetric rank-one ``u_ij = x_i x_j``.

    The result is defined up to sign; the root chosen for the first nonzero
    diagonal entry is the smaller one. Key recovery never needs this.
    """
    p = system.prime.value
    idx = {ij: n for n, ij in enumerate(system.unknowns)}
    val = lambda i, j: u[idx[(min(i, j), max(i, j))]] % p  # noqa: E731
    k = system.k
    lead = next((i for i in range(k) if val(i, i)), None)
    if lead is None:
        if any(v % p for v in u):
            raise NotRankOne("zero diagonal with nonzero off-diagonal")
        raise ZeroMatrix("u is zero")
    root = sqrt_mod(val(lead, lead), p)
    if root is None:
        raise NotRankOne("leading diagonal entry is not a square")
    inv = pow(root, -1, p)
    x = tuple(val(lead, j) * inv % p for j in range(k))
    for i in range(k):
        for j in range(i, k):
            if x[i] * x[j] % p != val(i, j):
                raise NotRankOne(f"u is not x x^T at ({i},{j})")
    return x
