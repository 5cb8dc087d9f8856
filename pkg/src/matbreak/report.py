"""Outcome record shared by both attacks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import ModMatrix


@dataclass(frozen=True)
class AttackReport:
    recovered_k: ModMatrix
    attempts: int
    elapsed: float
    verified: bool | None = None
    build_seconds: float = 0.0
    solve_seconds: float = 0.0
    nullity: int = 0
    failures: dict = field(default_factory=dict, compare=False)

    @property
    def elapsed_ms(self) -> float:
        return self.elapsed * 1000.0
