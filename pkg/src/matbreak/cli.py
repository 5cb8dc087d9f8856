"""Command-line harness.

Exit codes: 0 success (and verified, where ground truth exists), 1 attack
failure or verification mismatch, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import __version__, formats, kernels, published
from .algebra import ModMatrix
from .bench import DEFAULT_DIMS, DEFAULT_MODULUS, loglog_slope, medians, run_bench, to_csv
from .errors import MatbreakError, RetriesExhausted
from .formats import Meta
from .kex import kex_keygen, random_run, recover_key, run_exchange, sample_secret
from .pke import patent_decrypt, patent_encrypt, patent_keygen, recover_key_and_message
from .rng import NAME as RNG_NAME
from .rng import Xoshiro256

EXIT_OK, EXIT_ATTACK, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _emit(text: str, path: str | None) -> None:
    if path:
        formats.write_text(path, text)
    else:
        sys.stdout.write(text)


def _read(path: str) -> str:
    try:
        return formats.read_text(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _fmt(m: ModMatrix) -> str:
    return "\n".join("  " + " ".join(f"{x:>{len(str(m.mod - 1))}}" for x in row) for row in m.rows())


def _print_checks(title: str, checks) -> bool:
    print(f"== {title}")
    ok = True
    for c in checks:
        tag = "note" if c.note else ("PASS" if c.ok else "FAIL")
        if not c.note:
            ok &= c.ok
        line = f"  [{tag}] {c.name}"
        if c.note or not c.ok:
            line += f": {c.detail}" if c.detail else ""
        print(line)
    return ok


# key exchange


def cmd_kex_keygen(args) -> int:
    params = kex_keygen(args.modulus, args.dim, Xoshiro256(args.seed))
    _emit(formats.dump_params(params, Meta(args.seed)), args.out)
    return EXIT_OK


def _campaign(args, one) -> int:
    """Run ``one(seed)`` for ``args.campaign`` seeds spawned from ``args.seed``."""
    root = Xoshiro256(args.seed)
    wins = first = 0
    for i in range(args.campaign):
        ok, attempts = one(root.spawn(i).seed)
        wins += ok
        first += ok and attempts == 1
    print(f"campaign seed={args.seed} runs={args.campaign} verified={wins} first_attempt={first}")
    return EXIT_OK if wins == args.campaign else EXIT_ATTACK


def _kex_trial(args, seed: int) -> tuple[bool, int]:
    run = random_run(args.modulus, args.dim, seed)
    try:
        rep = recover_key(run.transcript, Xoshiro256(seed).spawn(1), args.retries, truth=run.key_bob)
    except RetriesExhausted:
        return False, args.retries
    return bool(rep.verified), rep.attempts


def cmd_kex_run(args) -> int:
    if args.campaign:
        return _campaign(args, lambda seed: _kex_trial(args, seed))
    if args.paper_example:
        checks = published.check_kex()
        ok = _print_checks("key exchange worked example (p=569)", checks)
        print("K =")
        print(_fmt(published.KEX_K))
        return EXIT_OK if ok else EXIT_ATTACK
    if args.params:
        params, _ = formats.load_params(_read(args.params))
        rng = Xoshiro256(args.seed)
        run = run_exchange(params, sample_secret(rng), sample_secret(rng), args.seed)
    else:
        run = random_run(args.modulus, args.dim, args.seed)
    rng = Xoshiro256(args.seed).spawn(1)
    try:
        rep = recover_key(run.transcript, rng, args.retries, truth=run.key_bob)
    except RetriesExhausted as exc:
        print(f"attack failed: {exc}", file=sys.stderr)
        return EXIT_ATTACK
    if args.no_timing:
        rep = replace(rep, elapsed=0.0)
    meta = Meta(args.seed)
    if args.out:
        formats.write_text(args.out, formats.dump_transcript(run.transcript, meta))
    if args.report:
        formats.write_text(args.report, formats.dump_report(rep, meta))
    agree = run.key_alice == run.key_bob
    print(f"n={run.transcript.params.dim} p={run.transcript.params.modulus} seed={args.seed}")
    print(f"key agreement: {agree}")
    print(f"attack attempts={rep.attempts} verified={rep.verified}")
    print("recovered K =")
    print(_fmt(rep.recovered_k))
    return EXIT_OK if rep.verified and agree else EXIT_ATTACK


def cmd_kex_attack(args) -> int:
    transcript, meta = formats.load_transcript(_read(args.transcript))
    truth = formats.load_matrix(_read(args.truth), "K")[0] if args.truth else None
    try:
        rep = recover_key(transcript, Xoshiro256(args.seed), args.retries, truth=truth)
    except RetriesExhausted as exc:
        print(f"attack failed: {exc}", file=sys.stderr)
        return EXIT_ATTACK
    if args.no_timing:
        rep = replace(rep, elapsed=0.0)
    _emit(formats.dump_report(rep, Meta(args.seed)), args.out)
    return EXIT_ATTACK if rep.verified is False else EXIT_OK


# patent scheme


def cmd_pke_keygen(args) -> int:
    pk, sk = patent_keygen(args.p, args.q, args.k, Xoshiro256(args.seed), 1 if args.degree_one else None)
    meta = Meta(args.seed)
    formats.write_text(f"{args.out}.pub", formats.dump_public_key(pk, meta))
    formats.write_text(f"{args.out}.key", formats.dump_private_key(sk, meta))
    return EXIT_OK


def cmd_pke_encrypt(args) -> int:
    pk, _ = formats.load_public_key(_read(args.pub))
    rng = Xoshiro256(args.seed)
    if args.message:
        message, _ = formats.load_matrix(_read(args.message), "M")
    else:
        message = ModMatrix.random(pk.k, pk.n, rng)
        if args.message_out:
            formats.write_text(args.message_out, formats.dump_matrix("M", message, Meta(args.seed)))
    ct, _ = patent_encrypt(pk, message, rng, 1 if args.degree_one else None)
    _emit(formats.dump_ciphertext(ct, Meta(args.seed)), args.out)
    return EXIT_OK


def cmd_pke_decrypt(args) -> int:
    pk, _ = formats.load_public_key(_read(args.pub))
    sk, meta = formats.load_private_key(_read(args.priv))
    ct, _ = formats.load_ciphertext(_read(args.ct))
    _emit(formats.dump_matrix("M", patent_decrypt(sk, pk, ct), meta), args.out)
    return EXIT_OK


def cmd_pke_attack(args) -> int:
    pk, _ = formats.load_public_key(_read(args.pub))
    ct, meta = formats.load_ciphertext(_read(args.ct))
    K, M, rep = recover_key_and_message(pk, ct, args.p, args.q)
    if args.no_timing:
        rep = replace(rep, elapsed=0.0)
    _emit(formats.dump_report(rep, meta, message=M), args.out)
    return EXIT_OK


def _pke_trial(args, seed: int) -> tuple[bool, int]:
    rng = Xoshiro256(seed)
    degree = 1 if args.degree_one else None
    pk, sk = patent_keygen(args.p, args.q, args.k, rng, degree)
    message = ModMatrix.random(pk.k, pk.n, rng)
    ct, K = patent_encrypt(pk, message, rng, degree)
    _, M_att, rep = recover_key_and_message(pk, ct, args.p, args.q, truth=K)
    return bool(rep.verified) and M_att == patent_decrypt(sk, pk, ct) == message, 1


def cmd_pke_run(args) -> int:
    if args.campaign:
        return _campaign(args, lambda seed: _pke_trial(args, seed))
    if args.paper_example:
        ok = _print_checks("patent scheme worked example (n=541*113)", published.check_pke())
        print("K =")
        print(_fmt(published.PKE_K))
        return EXIT_OK if ok else EXIT_ATTACK
    rng = Xoshiro256(args.seed)
    degree = 1 if args.degree_one else None
    pk, sk = patent_keygen(args.p, args.q, args.k, rng, degree)
    message = ModMatrix.random(pk.k, pk.n, rng)
    ct, K = patent_encrypt(pk, message, rng, degree)
    K_att, M_att, rep = recover_key_and_message(pk, ct, args.p, args.q, truth=K)
    decrypted = patent_decrypt(sk, pk, ct)
    ok = bool(rep.verified) and M_att == decrypted == message
    print(f"k={pk.k} n={pk.n} seed={args.seed}")
    print(f"attack K matches encryptor: {rep.verified}; message recovered: {M_att == message}")
    print("recovered K =")
    print(_fmt(K_att))
    return EXIT_OK if ok else EXIT_ATTACK


# bench and golden runs


def cmd_bench(args) -> int:
    dims = [int(d) for d in args.dims.split(",") if d.strip()]
    if not dims:
        raise InputError("--dims is empty")
    records = run_bench(dims, args.trials, args.modulus, args.seed, args.retries)
    med = medians(records)
    header = f"matbreak {__version__} seed={args.seed} generator={RNG_NAME} backend={kernels.BACKEND} modulus={args.modulus}"
    _emit(to_csv(records + med, header), args.out)
    slope = loglog_slope([(r.n, r.total_ms) for r in med])
    print(f"backend={kernels.BACKEND} seed={args.seed}", file=sys.stderr)
    print("log-log slope: " + ("n/a (single size)" if slope is None else f"{slope:.3f}"), file=sys.stderr)
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    ok = True
    if args.paper_example in ("kex", "all"):
        ok &= _print_checks("key exchange worked example (p=569)", published.check_kex())
    if args.paper_example in ("pke", "all"):
        ok &= _print_checks("patent scheme worked example (n=541*113)", published.check_pke())
    print("OK" if ok else "MISMATCH")
    return EXIT_OK if ok else EXIT_ATTACK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="matbreak", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, seed=True, out=True):
        if seed:
            p.add_argument("--seed", type=int, default=0)
        if out:
            p.add_argument("--out", help="output path (stdout if omitted)")

    p = sub.add_parser("kex-keygen", help="random public parameters (M1, M2)")
    common(p)
    p.add_argument("--modulus", type=int, default=65521)
    p.add_argument("--dim", type=int, default=3)
    p.set_defaults(func=cmd_kex_keygen)

    p = sub.add_parser("kex-run", help="honest exchange, then attack and verify")
    common(p)
    p.add_argument("--modulus", type=int, default=65521)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--params", help="parameter file from kex-keygen")
    p.add_argument("--retries", type=int, default=64)
    p.add_argument("--report", help="write the attack report here")
    p.add_argument("--no-timing", action="store_true", help="write elapsed_ms=0 for byte-stable output")
    p.add_argument("--paper-example", action="store_true", help="replay the p=569 worked example")
    p.add_argument("--campaign", type=int, default=0, metavar="N", help="run N seeded instances and summarize")
    p.set_defaults(func=cmd_kex_run)

    p = sub.add_parser("kex-attack", help="recover K from a transcript file")
    common(p)
    p.add_argument("transcript")
    p.add_argument("--retries", type=int, default=64)
    p.add_argument("--truth", help="file with a [K] section to verify against")
    p.add_argument("--no-timing", action="store_true")
    p.set_defaults(func=cmd_kex_attack)

    p = sub.add_parser("pke-keygen", help="patent-scheme keys, written to OUT.pub / OUT.key")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="path prefix")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--degree-one", action="store_true", help="G = g0 + g1 C")
    p.set_defaults(func=cmd_pke_keygen)

    p = sub.add_parser("pke-encrypt", help="encrypt a message matrix")
    common(p)
    p.add_argument("--pub", required=True)
    p.add_argument("--message", help="file with an [M] section (random if omitted)")
    p.add_argument("--message-out", help="where to save a randomly drawn message")
    p.add_argument("--degree-one", action="store_true", help="D = d0 + d1 G")
    p.set_defaults(func=cmd_pke_encrypt)

    p = sub.add_parser("pke-decrypt", help="decrypt with the private key")
    common(p, seed=False)
    p.add_argument("--pub", required=True)
    p.add_argument("--priv", required=True)
    p.add_argument("--ct", required=True)
    p.set_defaults(func=cmd_pke_decrypt)

    p = sub.add_parser("pke-attack", help="recover K and M from public data and the factors of n")
    common(p, seed=False)
    p.add_argument("--pub", required=True)
    p.add_argument("--ct", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--no-timing", action="store_true")
    p.set_defaults(func=cmd_pke_attack)

    p = sub.add_parser("pke-run", help="keygen, encrypt, attack and compare with decryption")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=int, default=65521)
    p.add_argument("--q", type=int, default=65519)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--degree-one", action="store_true")
    p.add_argument("--paper-example", action="store_true", help="replay the n=541*113 worked example")
    p.add_argument("--campaign", type=int, default=0, metavar="N", help="run N seeded instances and summarize")
    p.set_defaults(func=cmd_pke_run)

    p = sub.add_parser("bench", help="time the key-exchange attack across sizes (CSV)")
    common(p)
    p.add_argument("--dims", default=",".join(map(str, DEFAULT_DIMS)))
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--modulus", type=int, default=DEFAULT_MODULUS)
    p.add_argument("--retries", type=int, default=64)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify-paper", help="replay both published worked examples")
    p.add_argument("--paper-example", choices=("kex", "pke", "all"), default="all")
    p.set_defaults(func=cmd_verify_paper)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, MatbreakError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
