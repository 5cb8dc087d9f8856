"""Text file formats.

Every file is UTF-8 with LF endings, made of ``[section]`` headers followed
by either ``key=value`` lines or canonical matrix blocks::

    [meta]
    seed=42
    generator=xoshiro256**/splitmix64
    version=0.1.0
    [C1]
    dim=2 mod=569
    502 108
    3 322

Serialization is canonical, so ``dump(load(text)) == text`` for any file
this module wrote, and ``load(dump(obj)) == obj``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .algebra import ModMatrix, parse_matrix_lines
from .errors import ParseError
from .kex import KexParams, KexTranscript
from .pke import PatentCiphertext, PatentPrivateKey, PatentPublicKey
from .report import AttackReport
from .rng import NAME as RNG_NAME


@dataclass(frozen=True)
class Meta:
    seed: int | None = None
    generator: str = RNG_NAME
    version: str = __version__


def _split(text: str) -> list[tuple[str, list[str]]]:
    if "\r" in text:
        raise ParseError("CR line endings are not allowed")
    sections: list[tuple[str, list[str]]] = []
    for line in text.split("\n"):
        if line == "":
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1]
            if any(name == s for s, _ in sections):
                raise ParseError(f"duplicate section [{name}]")
            sections.append((name, []))
        elif not sections:
            raise ParseError(f"content before first section: {line!r}")
        else:
            sections[-1][1].append(line)
    return sections


def _join(sections: list[tuple[str, list[str]]]) -> str:
    out = []
    for name, lines in sections:
        out.append(f"[{name}]")
        out.extend(lines)
    return "\n".join(out) + "\n"


def _kv(lines: list[str]) -> dict[str, str]:
    out = {}
    for line in lines:
        key, sep, value = line.partition("=")
        if not sep or not key:
            raise ParseError(f"expected key=value, got {line!r}")
        out[key] = value
    return out


def _matrices(lines: list[str], count: int) -> list[ModMatrix]:
    mats = []
    for _ in range(count):
        mat, lines = parse_matrix_lines(lines)
        mats.append(mat)
    if lines:
        raise ParseError(f"unexpected trailing line {lines[0]!r}")
    return mats


def _mat_lines(*mats: ModMatrix) -> list[str]:
    return [line for m in mats for line in m.to_text().rstrip("\n").split("\n")]


def _meta_lines(meta: Meta) -> list[str]:
    seed = "none" if meta.seed is None else str(meta.seed)
    return [f"seed={seed}", f"generator={meta.generator}", f"version={meta.version}"]


def _meta(sections: dict[str, list[str]]) -> Meta:
    kv = _kv(sections.get("meta", []))
    seed = kv.get("seed", "none")
    try:
        seed_val = None if seed == "none" else int(seed)
    except ValueError:
        raise ParseError(f"bad seed {seed!r}") from None
    return Meta(seed_val, kv.get("generator", RNG_NAME), kv.get("version", __version__))


def _load(text: str, required: tuple[str, ...]) -> dict[str, list[str]]:
    sections = dict(_split(text))
    missing = [s for s in required if s not in sections]
    if missing:
        raise ParseError(f"missing section(s): {', '.join('[' + s + ']' for s in missing)}")
    return sections


# key-exchange files


def dump_params(params: KexParams, meta: Meta = Meta()) -> str:
    return _join([("meta", _meta_lines(meta)), ("params", _mat_lines(params.M1, params.M2))])


def load_params(text: str) -> tuple[KexParams, Meta]:
    s = _load(text, ("params",))
    m1, m2 = _matrices(s["params"], 2)
    return KexParams(m1.modulus, m1, m2), _meta(s)


def dump_transcript(t: KexTranscript, meta: Meta | None = None) -> str:
    meta = meta or Meta(seed=t.seed)
    return _join([
        ("meta", _meta_lines(meta)),
        ("params", _mat_lines(t.params.M1, t.params.M2)),
        ("C1", _mat_lines(t.C1)),
        ("C2", _mat_lines(t.C2)),
    ])


def load_transcript(text: str) -> tuple[KexTranscript, Meta]:
    s = _load(text, ("params", "C1", "C2"))
    m1, m2 = _matrices(s["params"], 2)
    (c1,) = _matrices(s["C1"], 1)
    (c2,) = _matrices(s["C2"], 1)
    meta = _meta(s)
    return KexTranscript(KexParams(m1.modulus, m1, m2), c1, c2, meta.seed), meta


# attack reports


def _verified(v: bool | None) -> str:
    return "unknown" if v is None else ("true" if v else "false")


def dump_report(report: AttackReport, meta: Meta = Meta(), message: ModMatrix | None = None) -> str:
    sections = [("meta", _meta_lines(meta)), ("recovered_k", _mat_lines(report.recovered_k))]
    if message is not None:
        sections.append(("recovered_m", _mat_lines(message)))
    sections.append(("report", [
        f"attempts={report.attempts}",
        f"elapsed_ms={report.elapsed_ms:.3f}",
        f"verified={_verified(report.verified)}",
    ]))
    return _join(sections)


def load_report(text: str) -> tuple[AttackReport, ModMatrix | None, Meta]:
    s = _load(text, ("recovered_k", "report"))
    (k,) = _matrices(s["recovered_k"], 1)
    msg = _matrices(s["recovered_m"], 1)[0] if "recovered_m" in s else None
    kv = _kv(s["report"])
    try:
        attempts = int(kv["attempts"])
        elapsed = float(kv["elapsed_ms"]) / 1000.0
        verified = {"true": True, "false": False, "unknown": None}[kv["verified"]]
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad [report] section: {exc}") from None
    return AttackReport(k, attempts, elapsed, verified), msg, _meta(s)


# patent scheme files


def dump_public_key(pk: PatentPublicKey, meta: Meta = Meta()) -> str:
    return _join([
        ("meta", _meta_lines(meta)),
        ("A", _mat_lines(pk.A)),
        ("B", _mat_lines(pk.B)),
        ("G", _mat_lines(pk.G)),
    ])


def load_public_key(text: str) -> tuple[PatentPublicKey, Meta]:
    s = _load(text, ("A", "B", "G"))
    (a,), (b,), (g,) = (_matrices(s[x], 1) for x in "ABG")
    if not (a.modulus == b.modulus == g.modulus) or not (a.dim == b.dim == g.dim):
        raise ParseError("A, B, G disagree in size or modulus")
    return PatentPublicKey(a.modulus, a, b, g), _meta(s)


def dump_private_key(sk: PatentPrivateKey, meta: Meta = Meta()) -> str:
    return _join([
        ("meta", _meta_lines(meta)),
        ("factors", [f"p={sk.p}", f"q={sk.q}"]),
        ("C", _mat_lines(sk.C)),
    ])


def load_private_key(text: str) -> tuple[PatentPrivateKey, Meta]:
    s = _load(text, ("factors", "C"))
    kv = _kv(s["factors"])
    try:
        p, q = int(kv["p"]), int(kv["q"])
    except (KeyError, ValueError):
        raise ParseError("[factors] needs integer p= and q=") from None
    (c,) = _matrices(s["C"], 1)
    if p * q != c.mod:
        raise ParseError(f"p*q = {p * q} but C is mod {c.mod}")
    return PatentPrivateKey(c, p, q), _meta(s)


def dump_ciphertext(ct: PatentCiphertext, meta: Meta = Meta()) -> str:
    return _join([("meta", _meta_lines(meta)), ("KM", _mat_lines(ct.KM)), ("E", _mat_lines(ct.E))])


def load_ciphertext(text: str) -> tuple[PatentCiphertext, Meta]:
    s = _load(text, ("KM", "E"))
    (km,) = _matrices(s["KM"], 1)
    (e,) = _matrices(s["E"], 1)
    return PatentCiphertext(km, e), _meta(s)


def dump_matrix(name: str, m: ModMatrix, meta: Meta = Meta()) -> str:
    return _join([("meta", _meta_lines(meta)), (name, _mat_lines(m))])


def load_matrix(text: str, name: str) -> tuple[ModMatrix, Meta]:
    s = _load(text, (name,))
    (m,) = _matrices(s[name], 1)
    return m, _meta(s)


def read_text(path: "str | Path") -> str:
    with open(path, encoding="utf-8", newline="") as fh:
        return fh.read()


def write_text(path: "str | Path", text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


__all__ = [
    "Meta",
    "dump_ciphertext",
    "dump_matrix",
    "dump_params",
    "dump_private_key",
    "dump_public_key",
    "dump_report",
    "dump_transcript",
    "load_ciphertext",
    "load_matrix",
    "load_params",
    "load_private_key",
    "load_public_key",
    "load_report",
    "load_transcript",
    "read_text",
    "write_text",
]
