"""Dense square matrices over Z/m."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .. import kernels
from ..errors import DimensionMismatch, ModulusMismatch, NotInvertible, ParseError
from .modulus import Modulus, as_modulus


@dataclass(frozen=True)
class ModMatrix:
    """Immutable ``dim x dim`` matrix, entries stored row-major and reduced."""

    dim: int
    modulus: Modulus
    entries: tuple[int, ...]

    def __post_init__(self):
        m = as_modulus(self.modulus)
        object.__setattr__(self, "modulus", m)
        if self.dim < 1:
            raise ValueError("dim must be positive")
        ents = tuple(int(x) % m.value for x in self.entries)
        if len(ents) != self.dim * self.dim:
            raise DimensionMismatch(f"expected {self.dim * self.dim} entries, got {len(ents)}")
        object.__setattr__(self, "entries", ents)

    # construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], modulus: "Modulus | int") -> "ModMatrix":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix must be square")
        return cls(n, as_modulus(modulus), tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, dim: int, modulus: "Modulus | int") -> "ModMatrix":
        return cls.scalar(1, dim, modulus)

    @classmethod
    def scalar(cls, c: int, dim: int, modulus: "Modulus | int") -> "ModMatrix":
        ents = [0] * (dim * dim)
        for i in range(dim):
            ents[i * dim + i] = c
        return cls(dim, as_modulus(modulus), tuple(ents))

    @classmethod
    def zero(cls, dim: int, modulus: "Modulus | int") -> "ModMatrix":
        return cls(dim, as_modulus(modulus), (0,) * (dim * dim))

    @classmethod
    def random(cls, dim: int, modulus: "Modulus | int", rng) -> "ModMatrix":
        m = as_modulus(modulus)
        return cls(dim, m, tuple(rng.residues(dim * dim, m.value)))

    # views

    @property
    def mod(self) -> int:
        return self.modulus.value

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.dim + j]

    def rows(self) -> list[list[int]]:
        n = self.dim
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]

    def transpose(self) -> "ModMatrix":
        n = self.dim
        return ModMatrix(n, self.modulus, tuple(self.entries[j * n + i] for i in range(n) for j in range(n)))

    def is_identity(self) -> bool:
        n = self.dim
        return all(x == (1 if k % (n + 1) == 0 else 0) for k, x in enumerate(self.entries))

    def __repr__(self) -> str:
        return f"ModMatrix({self.rows()}, mod={self.mod})"

    # arithmetic

    def _check(self, other: "ModMatrix") -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"dims {self.dim} and {other.dim}")
        if self.modulus != other.modulus:
            raise ModulusMismatch(f"moduli {self.mod} and {other.mod}")

    def __add__(self, other: "ModMatrix") -> "ModMatrix":
        if not isinstance(other, ModMatrix):
            return NotImplemented
        self._check(other)
        return ModMatrix(self.dim, self.modulus, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "ModMatrix") -> "ModMatrix":
        if not isinstance(other, ModMatrix):
            return NotImplemented
        self._check(other)
        return ModMatrix(self.dim, self.modulus, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "ModMatrix":
        return ModMatrix(self.dim, self.modulus, tuple(-a for a in self.entries))

    def __mul__(self, c) -> "ModMatrix":
        if not isinstance(c, int):
            return NotImplemented
        return ModMatrix(self.dim, self.modulus, tuple(a * c for a in self.entries))

    __rmul__ = __mul__

    def __matmul__(self, other: "ModMatrix") -> "ModMatrix":
        if not isinstance(other, ModMatrix):
            return NotImplemented
        return mat_mul(self, other)

    def __pow__(self, e: int) -> "ModMatrix":
        return mat_pow(self, e)

    def inverse(self) -> "ModMatrix":
        return mat_inverse(self)

    def commutes_with(self, other: "ModMatrix") -> bool:
        return mat_mul(self, other) == mat_mul(other, self)

    def reduce(self, modulus: "Modulus | int") -> "ModMatrix":
        """Entrywise reduction to a (divisor) modulus."""
        return ModMatrix(self.dim, as_modulus(modulus), self.entries)

    # canonical text form

    def to_text(self) -> str:
        n = self.dim
        lines = [f"dim={n} mod={self.mod}"]
        for i in range(n):
            lines.append(" ".join(str(x) for x in self.entries[i * n:(i + 1) * n]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ModMatrix":
        lines = text.strip("\n").split("\n")
        mat, rest = parse_matrix_lines(lines)
        if rest:
            raise ParseError(f"trailing content after matrix: {rest[0]!r}")
        return mat


def parse_matrix_lines(lines: Sequence[str]) -> tuple[ModMatrix, list[str]]:
    """Parse one canonical matrix block from the head of ``lines``."""
    if not lines:
        raise ParseError("expected matrix header, got end of input")
    header = lines[0].split(" ")
    try:
        if len(header) != 2 or not header[0].startswith("dim=") or not header[1].startswith("mod="):
            raise ValueError
        n = int(header[0][4:])
        m = int(header[1][4:])
    except ValueError:
        raise ParseError(f"bad matrix header {lines[0]!r}") from None
    if n < 1 or len(lines) < n + 1:
        raise ParseError(f"matrix block needs {n} rows")
    entries = []
    for line in lines[1:n + 1]:
        try:
            row = [int(tok) for tok in line.split(" ")]
        except ValueError:
            raise ParseError(f"bad matrix row {line!r}") from None
        if len(row) != n:
            raise ParseError(f"row {line!r} has {len(row)} entries, expected {n}")
        if any(not 0 <= x < m for x in row):
            raise ParseError(f"row {line!r} is not reduced mod {m}")
        entries.extend(row)
    try:
        mat = ModMatrix(n, Modulus(m), tuple(entries))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return mat, list(lines[n + 1:])


def mat_mul(a: ModMatrix, b: ModMatrix) -> ModMatrix:
    a._check(b)
    out = kernels.matmul(a.entries, b.entries, a.dim, a.mod)
    return ModMatrix(a.dim, a.modulus, tuple(out))


def mat_pow(m: ModMatrix, e: int) -> ModMatrix:
    """Square-and-multiply; negative exponents invert first."""
    if e < 0:
        m = mat_inverse(m)
        e = -e
    result = ModMatrix.identity(m.dim, m.modulus)
    base = m
    while e:
        if e & 1:
            result = mat_mul(result, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    return result


def mat_inverse(m: ModMatrix) -> ModMatrix:
    """Gauss-Jordan inverse.

    Over a prime modulus this is plain elimination. Over a composite modulus
    each column is first reduced by Euclidean row operations so the pivot is
    the gcd of the column; if that gcd shares a factor ``f`` with the modulus
    the matrix is singular mod ``f`` and :class:`NotInvertible` reports it.
    """
    n, mod = m.dim, m.mod
    aug = []
    for i in range(n):
        aug.extend(m.entries[i * n:(i + 1) * n])
        aug.extend(1 if j == i else 0 for j in range(n))
    if m.modulus.is_prime:
        red, pivots = kernels.rref(aug, n, 2 * n, mod, n)
        if len(pivots) < n:
            raise NotInvertible()
        w = 2 * n
        return ModMatrix(n, m.modulus, tuple(x for i in range(n) for x in red[i * w + n:(i + 1) * w]))
    return _inverse_composite(m)


def _inverse_composite(m: ModMatrix) -> ModMatrix:
    n, mod = m.dim, m.mod
    a = [row + [1 if j == i else 0 for j in range(n)] for i, row in enumerate(m.rows())]
    for c in range(n):
        while True:
            nz = [r for r in range(c, n) if a[r][c]]
            if not nz:
                raise NotInvertible()
            r0 = min(nz, key=lambda r: a[r][c])
            if len(nz) == 1:
                break
            prow, pv = a[r0], a[r0][c]
            for r in nz:
                if r != r0:
                    q = a[r][c] // pv
                    a[r] = [(x - q * y) % mod for x, y in zip(a[r], prow)]
        a[c], a[r0] = a[r0], a[c]
        g = gcd(a[c][c], mod)
        if g != 1:
            raise NotInvertible(factor=g)
        inv = pow(a[c][c], -1, mod)
        prow = a[c] = [x * inv % mod for x in a[c]]
        for r in range(n):
            f = a[r][c]
            if r != c and f:
                a[r] = [(x - f * y) % mod for x, y in zip(a[r], prow)]
    return ModMatrix(n, m.modulus, tuple(x for row in a for x in row[n:]))


def lincomb(coeffs: Iterable[int], mats: Sequence[ModMatrix]) -> ModMatrix:
    """``sum(c_i * mats[i])``; the empty sum is not allowed."""
    mats = list(mats)
    if not mats:
        raise ValueError("need at least one matrix")
    mod = mats[0].mod
    acc = [0] * len(mats[0].entries)
    for c, mat in zip(coeffs, mats):
        if c:
            acc = [x + c * y for x, y in zip(acc, mat.entries)]
    return ModMatrix(mats[0].dim, mats[0].modulus, tuple(x % mod for x in acc))
