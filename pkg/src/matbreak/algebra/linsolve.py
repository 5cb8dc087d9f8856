"""Exact linear systems over a prime field."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

from .. import kernels
from ..errors import DimensionMismatch, Inconsistent
from .modulus import Modulus, as_modulus

# Re-verify every solution against the input system (enabled by the test suite).
CHECK_SOLUTIONS = os.environ.get("MATBREAK_CHECK", "") in ("1", "true", "yes")


@dataclass(frozen=True)
class LinearSolveResult:
    particular: tuple[int, ...]
    nullspace: tuple[tuple[int, ...], ...]
    rank: int
    pivots: tuple[int, ...]
    modulus: Modulus

    @property
    def nullity(self) -> int:
        return len(self.nullspace)

    def point(self, weights: Sequence[int]) -> tuple[int, ...]:
        """``particular + sum(w_k * nullspace[k])``."""
        p = self.modulus.value
        acc = list(self.particular)
        for w, v in zip(weights, self.nullspace):
            if w:
                acc = [a + w * b for a, b in zip(acc, v)]
        return tuple(a % p for a in acc)


def mat_vec(coeff: Sequence[Sequence[int]], x: Sequence[int], p: int) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) % p for row in coeff]


def solve_linear(
    coeff: Sequence[Sequence[int]],
    rhs: Sequence[int],
    modulus: "Modulus | int",
    *,
    check: bool | None = None,
) -> LinearSolveResult:
    """Solve ``coeff @ x = rhs`` over GF(p) by reduction to RREF.

    Pivots are the first nonzero entry scanning down each column. The
    particular solution sets free variables to zero; the nullspace has one
    basis vector per free column, with a 1 in that column.
    """
    mod = as_modulus(modulus).require_prime()
    p = mod.value
    rows = len(coeff)
    if len(rhs) != rows:
        raise DimensionMismatch(f"{rows} equations but {len(rhs)} right-hand sides")
    cols = len(coeff[0]) if rows else 0
    if any(len(r) != cols for r in coeff):
        raise DimensionMismatch("ragged coefficient matrix")
    w = cols + 1
    aug = []
    for row, b in zip(coeff, rhs):
        aug.extend(x % p for x in row)
        aug.append(b % p)
    red, pivots = kernels.rref(aug, rows, w, p, cols)
    rank = len(pivots)
    for r in range(rank, rows):
        if red[r * w + cols]:
            raise Inconsistent(f"system of rank {rank} is inconsistent")

    particular = [0] * cols
    for r, c in enumerate(pivots):
        particular[c] = red[r * w + cols]
    pivot_set = set(pivots)
    nullspace = []
    for f in range(cols):
        if f in pivot_set:
            continue
        v = [0] * cols
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = -red[r * w + f] % p
        nullspace.append(tuple(v))

    result = LinearSolveResult(tuple(particular), tuple(nullspace), rank, tuple(pivots), mod)
    if CHECK_SOLUTIONS if check is None else check:
        _verify(coeff, rhs, result, p)
    return result


def _verify(coeff, rhs, result: LinearSolveResult, p: int) -> None:
    if mat_vec(coeff, result.particular, p) != [b % p for b in rhs]:
        raise AssertionError("particular solution does not satisfy the system")
    for v in result.nullspace:
        if any(mat_vec(coeff, v, p)):
            raise AssertionError("nullspace vector is not in the kernel")
