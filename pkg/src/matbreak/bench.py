"""Scaling benchmark for the key-exchange attack."""

from __future__ import annotations

import csv
import io
import math
import statistics
from dataclasses import dataclass
from typing import Iterable, Sequence

from .kex import random_run, recover_key
from .rng import Xoshiro256

DEFAULT_DIMS = (2, 4, 8, 12, 16)
DEFAULT_MODULUS = 2147483647  # 2**31 - 1
CSV_COLUMNS = ("n", "modulus_bits", "trial", "build_ms", "solve_ms", "total_ms", "attempts")


@dataclass(frozen=True)
class BenchRecord:
    n: int
    modulus_bits: int
    trial: int | str
    build_ms: float
    solve_ms: float
    total_ms: float
    attempts: int


def run_bench(
    dims: Sequence[int] = DEFAULT_DIMS,
    trials: int = 5,
    modulus: int = DEFAULT_MODULUS,
    seed: int = 0,
    retry_budget: int = 64,
) -> list[BenchRecord]:
    """One record per (n, trial); trial ``t`` at size ``n`` uses the stream
    ``Xoshiro256(seed).spawn(n * 1_000_000 + t)``."""
    root = Xoshiro256(seed)
    bits = modulus.bit_length()
    records = []
    for n in dims:
        for t in range(trials):
            stream = root.spawn(n * 1_000_000 + t)
            run = random_run(modulus, n, stream.seed)
            rep = recover_key(run.transcript, stream, retry_budget, truth=run.key_bob)
            if not rep.verified:
                raise AssertionError(f"bench attack returned a wrong key at n={n}, trial={t}")
            records.append(BenchRecord(
                n, bits, t,
                rep.build_seconds * 1e3, rep.solve_seconds * 1e3, rep.elapsed * 1e3,
                rep.attempts,
            ))
    return records


def medians(records: Iterable[BenchRecord]) -> list[BenchRecord]:
    by_n: dict[int, list[BenchRecord]] = {}
    for r in records:
        by_n.setdefault(r.n, []).append(r)
    out = []
    for n, rs in by_n.items():
        out.append(BenchRecord(
            n, rs[0].modulus_bits, "median",
            statistics.median(r.build_ms for r in rs),
            statistics.median(r.solve_ms for r in rs),
            statistics.median(r.total_ms for r in rs),
            int(statistics.median(r.attempts for r in rs)),
        ))
    return out


def loglog_slope(points: Sequence[tuple[float, float]]) -> float | None:
    """Least-squares slope of log(y) against log(x); None with < 2 sizes."""
    pts = [(math.log(x), math.log(y)) for x, y in points if x > 0 and y > 0]
    if len({x for x, _ in pts}) < 2:
        return None
    mx = statistics.fmean(x for x, _ in pts)
    my = statistics.fmean(y for _, y in pts)
    sxx = sum((x - mx) ** 2 for x, _ in pts)
    sxy = sum((x - mx) * (y - my) for x, y in pts)
    return sxy / sxx


def to_csv(records: Iterable[BenchRecord], header: str | None = None) -> str:
    """CSV text; ``header`` becomes a leading ``# ...`` comment line."""
    buf = io.StringIO()
    if header:
        buf.write(f"# {header}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow([r.n, r.modulus_bits, r.trial, f"{r.build_ms:.3f}", f"{r.solve_ms:.3f}", f"{r.total_ms:.3f}", r.attempts])
    return buf.getvalue()
