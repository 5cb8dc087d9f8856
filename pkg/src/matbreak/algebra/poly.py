"""Univariate polynomials over Z/m and the characteristic polynomial."""

from __future__ import annotations

from dataclasses import dataclass

from .matrix import ModMatrix, mat_mul
from .modulus import ModInt, Modulus, as_modulus


@dataclass(frozen=True)
class Polynomial:
    """Coefficients low degree first: ``coeffs[i]`` multiplies ``X**i``."""

    coeffs: tuple[int, ...]
    modulus: Modulus

    def __post_init__(self):
        m = as_modulus(self.modulus)
        object.__setattr__(self, "modulus", m)
        object.__setattr__(self, "coeffs", tuple(int(c) % m.value for c in self.coeffs))

    @property
    def coefficients(self) -> tuple[ModInt, ...]:
        return tuple(ModInt(c, self.modulus) for c in self.coeffs)

    def trimmed(self) -> "Polynomial":
        cs = list(self.coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        return Polynomial(tuple(cs), self.modulus)

    @property
    def degree(self) -> int:
        """Degree of the trimmed polynomial; -1 for zero."""
        return len(self.trimmed().coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        m = self.modulus.value
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % m
        return acc

    def at_matrix(self, mat: ModMatrix) -> ModMatrix:
        """Evaluate at a square matrix by Horner's rule."""
        if mat.modulus != self.modulus:
            mat = mat.reduce(self.modulus)
        acc = ModMatrix.zero(mat.dim, self.modulus)
        for c in reversed(self.coeffs):
            acc = mat_mul(acc, mat) + ModMatrix.scalar(c, mat.dim, self.modulus)
        return acc


def charpoly(m: ModMatrix) -> Polynomial:
    """Monic ``det(X*I - m)`` by Berkowitz's division-free algorithm.

    Uses only ring operations, so composite moduli are fine.
    """
    n, mod = m.dim, m.mod
    a = m.rows()
    # coefficients of the leading r x r block's charpoly, highest degree first
    cur = [1]
    for r in range(n):
        row = a[r][:r]
        col = [a[i][r] for i in range(r)]
        # first column of the Toeplitz factor: 1, -a_rr, -R S, -R A S, ..., -R A^(r-1) S
        t = [1, -a[r][r] % mod]
        v = col
        for _ in range(r):
            t.append(-sum(x * y for x, y in zip(row, v)) % mod)
            v = [sum(a[i][j] * v[j] for j in range(r)) % mod for i in range(r)]
        cur = [
            sum(t[i - j] * cur[j] for j in range(min(i, r) + 1)) % mod
            for i in range(r + 2)
        ]
    return Polynomial(tuple(reversed(cur)), m.modulus)
