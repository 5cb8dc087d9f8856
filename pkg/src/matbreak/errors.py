"""Exception types shared across the package."""

from __future__ import annotations


class MatbreakError(Exception):
    """Base class for every error raised by matbreak."""


class NonUnit(MatbreakError, ArithmeticError):
    """A residue has no multiplicative inverse.

    ``gcd`` is the common factor with the modulus; over ``n = p*q`` it is a
    nontrivial divisor of ``n``.
    """

    def __init__(self, value: int, modulus: int, gcd: int):
        self.value = value
        self.modulus = modulus
        self.gcd = gcd
        super().__init__(f"{value} is not a unit mod {modulus} (gcd={gcd})")


class NotInvertible(MatbreakError, ArithmeticError):
    def __init__(self, message: str = "matrix is not invertible", factor: int | None = None):
        self.factor = factor
        if factor is not None:
            message = f"{message} (factor={factor})"
        super().__init__(message)


class DimensionMismatch(MatbreakError, ValueError):
    pass


class ModulusMismatch(MatbreakError, ValueError):
    pass


class NotPrime(MatbreakError, ValueError):
    pass


class Inconsistent(MatbreakError, ValueError):
    """The linear system has no solution."""


class ModuliNotCoprime(MatbreakError, ValueError):
    pass


class NotADivisor(MatbreakError, ValueError):
    pass


class DegenerateDim(MatbreakError, ValueError):
    pass


class BadFactors(MatbreakError, ValueError):
    pass


class NotRankOne(MatbreakError, ValueError):
    pass


class ZeroMatrix(NotRankOne):
    pass


class RetriesExhausted(MatbreakError, RuntimeError):
    """The key-exchange attack found no certified candidate within its budget."""

    def __init__(self, attempts: int, nullity: int, failures: dict[str, int]):
        self.attempts = attempts
        self.nullity = nullity
        self.failures = dict(failures)
        detail = ", ".join(f"{k}={v}" for k, v in sorted(self.failures.items()))
        super().__init__(
            f"no valid factorisation after {attempts} attempts "
            f"(nullspace dim {nullity}; {detail})"
        )


class ParseError(MatbreakError, ValueError):
    pass
