"""Passive key recovery for the two-matrix key exchange.

By Cayley-Hamilton, ``M1^a1 = p(M1)`` and ``M2^a2 = q(M2)`` for polynomials of
degree < n, so ``C1 = sum_{i,j} x_i y_j M1^i M2^j``. Replacing each product
``x_i y_j`` with a fresh unknown ``u_ij`` gives n^2 linear equations in n^2
unknowns. A solution that factors as an outer product ``u = x y^T`` yields
``p(M1) q(M2) = C1``, and because p(M1)^-1 commutes with M1 (and q(M2)^-1 with
M2) the shared key falls out as ``p(M1)^-1 C2 q(M2)^-1``.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass
from functools import cached_property

from ..algebra import LinearSolveResult, ModMatrix, Modulus, inverse_mod, lincomb, mat_inverse, mat_mul, solve_linear
from ..errors import NotInvertible, NotRankOne, RetriesExhausted, ZeroMatrix
from ..report import AttackReport
from ..rng import Xoshiro256, as_rng
from .protocol import KexParams, KexTranscript

DEFAULT_RETRY_BUDGET = 64


@dataclass(frozen=True)
class RelinSystem:
    """Linearized system ``sum u_ij M1^i M2^j = C1``; column ``i*n + j`` is u_ij."""

    dim: int
    modulus: Modulus
    powers1: tuple[ModMatrix, ...]
    powers2: tuple[ModMatrix, ...]
    basis: tuple[ModMatrix, ...]
    rhs: tuple[int, ...]

    @property
    def coeff(self) -> list[list[int]]:
        size = self.dim * self.dim
        return [[b.entries[r] for b in self.basis] for r in range(size)]

    @cached_property
    def solution(self) -> LinearSolveResult:
        return solve_linear(self.coeff, self.rhs, self.modulus)


@dataclass(frozen=True)
class RankOneFactor:
    x: tuple[int, ...]
    y: tuple[int, ...]


def _powers(m: ModMatrix, count: int) -> tuple[ModMatrix, ...]:
    out = [ModMatrix.identity(m.dim, m.modulus)]
    for _ in range(count - 1):
        out.append(mat_mul(out[-1], m))
    return tuple(out)


def build_relin_system(params: KexParams, C1: ModMatrix) -> RelinSystem:
    n = params.dim
    p1 = _powers(params.M1, n)
    p2 = _powers(params.M2, n)
    basis = tuple(mat_mul(a, b) for a in p1 for b in p2)
    return RelinSystem(n, params.modulus, p1, p2, basis, C1.entries)


def sample_solution(system: RelinSystem, rng: "Xoshiro256 | int", *, particular: bool = False) -> ModMatrix:
    """Particular solution plus a uniformly random kernel element, as an n x n
    matrix ``u[i, j] = u_ij``. Raises :class:`Inconsistent` on a doctored rhs.

    ``particular=True`` returns the particular solution alone and draws
    nothing from ``rng``.
    """
    sol = system.solution
    if sol.nullity and not particular:
        rng = as_rng(rng)
        weights = [rng.below(system.modulus.value) for _ in range(sol.nullity)]
        vec = sol.point(weights)
    else:
        vec = sol.particular
    return ModMatrix(system.dim, system.modulus, vec)


def rank_one_factor(u: ModMatrix) -> RankOneFactor:
    """Split ``u = x y^T``.

    Normalization: with ``u[r, c]`` the first nonzero entry in row-major
    order, ``y`` is row r and ``x_i = u[i, c] / u[r, c]`` (so ``x_r = 1``).
    Every other factorization is ``(l*x, y/l)``.
    """
    n, p = u.dim, u.mod
    first = next((k for k, v in enumerate(u.entries) if v), None)
    if first is None:
        raise ZeroMatrix("u is zero")
    r, c = divmod(first, n)
    y = tuple(u.entries[r * n:(r + 1) * n])
    inv = inverse_mod(u.entries[first], p)
    x = tuple(u[i, c] * inv % p for i in range(n))
    for i in range(n):
        for j in range(n):
            if x[i] * y[j] % p != u[i, j]:
                raise NotRankOne(f"u has rank > 1 (entry {i},{j})")
    return RankOneFactor(x, y)


def key_from_factor(system: RelinSystem, factor: RankOneFactor, C2: ModMatrix) -> ModMatrix:
    """``p(M1)^-1 C2 q(M2)^-1`` with p, q read off the factor."""
    pm = lincomb(factor.x, system.powers1)
    qm = lincomb(factor.y, system.powers2)
    return mat_mul(mat_mul(mat_inverse(pm), C2), mat_inverse(qm))


def recover_key(
    transcript: KexTranscript,
    rng: "Xoshiro256 | int" = 0,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
    truth: ModMatrix | None = None,
) -> AttackReport:
    """Recover Bob's key from a public transcript.

    Each attempt samples a solution of the linear system and accepts it only
    if it factors as ``x y^T``, both ``p(M1)`` and ``q(M2)`` invert, and
    ``p(M1) q(M2) == C1`` holds exactly. The product check certifies the
    output, so retries can only cost time, never produce a wrong key.

    The first attempt uses the particular solution. Its free unknowns (the
    highest powers, since pivots are taken left to right) are zero, so when
    M1 or M2 has a minimal polynomial of degree < n it is already the
    lowest-degree factorization and succeeds without sampling.
    """
    rng = as_rng(rng)
    t0 = time.perf_counter()
    system = build_relin_system(transcript.params, transcript.C1)
    t1 = time.perf_counter()
    sol = system.solution
    t2 = time.perf_counter()

    failures: Counter = Counter()
    for attempt in range(1, retry_budget + 1):
        u = sample_solution(system, rng, particular=attempt == 1)
        try:
            factor = rank_one_factor(u)
        except ZeroMatrix:
            failures["zero"] += 1
            continue
        except NotRankOne:
            failures["not_rank_one"] += 1
            continue
        pm = lincomb(factor.x, system.powers1)
        qm = lincomb(factor.y, system.powers2)
        try:
            pm_inv = mat_inverse(pm)
        except NotInvertible:
            failures["p_singular"] += 1
            continue
        try:
            qm_inv = mat_inverse(qm)
        except NotInvertible:
            failures["q_singular"] += 1
            continue
        if mat_mul(pm, qm) != transcript.C1:
            failures["product_mismatch"] += 1
            continue
        key = mat_mul(mat_mul(pm_inv, transcript.C2), qm_inv)
        elapsed = time.perf_counter() - t0
        return AttackReport(
            recovered_k=key,
            attempts=attempt,
            elapsed=elapsed,
            verified=None if truth is None else key == truth,
            build_seconds=t1 - t0,
            solve_seconds=t2 - t1,
            nullity=sol.nullity,
            failures=dict(failures),
        )
    raise RetriesExhausted(retry_budget, sol.nullity, failures)
