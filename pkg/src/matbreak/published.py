"""Published worked examples for both schemes, and checks that replay them.

Two printed details do not survive recomputation and are reported as notes
rather than failures:

* key exchange: the printed C1 and K correspond to Alice using (509, 131) and
  Bob (449, 41), the reverse of the stated assignment;
* patent scheme: the modulus is 541 * 113 = 61133 (printed as 6133), and the
  printed coefficient pairs solve the quadratic system written in C rather
  than in the public G.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import ModMatrix, crt_recombine, mat_mul, mat_pow
from .kex import KexParams, KexSecret, RankOneFactor, build_relin_system, key_from_factor, recover_key, run_exchange
from .pke import encrypt_with, make_keys, patent_decrypt, poly_of, recover_key_and_message, recover_partial_key, reduce_mod


def _m(rows, mod):
    return ModMatrix.from_rows(rows, mod)


KEX_P = 569
KEX_M1 = _m([[12, 34], [11, 99]], KEX_P)
KEX_M2 = _m([[172, 94], [91, 125]], KEX_P)
KEX_STATED_ALICE = KexSecret(449, 41)
KEX_STATED_BOB = KexSecret(509, 131)
KEX_C1 = _m([[502, 108], [3, 322]], KEX_P)
KEX_C2 = _m([[501, 343], [200, 170]], KEX_P)
KEX_K = _m([[273, 85], [436, 278]], KEX_P)
KEX_M1M2 = _m([[37, 257], [90, 322]], KEX_P)
# (x0, x1, y0, y1)
KEX_PRINTED_SOLUTION = (1, 166, 244, 168)

PKE_P, PKE_Q = 541, 113
PKE_N = PKE_P * PKE_Q  # 61133
PKE_PRINTED_N = 6133
PKE_C = _m([[243, 112], [234, 233]], PKE_N)
PKE_A = _m([[121, 231], [144, 242]], PKE_N)
PKE_G_COEFFS = (14, 3374)  # G = 14 + 3374 C
PKE_D_COEFFS = (34125, 7123)  # D = 34125 + 7123 G
PKE_B = _m([[36124, 40493], [39554, 16490]], PKE_N)
PKE_G = _m([[25167, 11090], [55920, 52560]], PKE_N)
PKE_D = _m([[56710, 10234], [36665, 40513]], PKE_N)
PKE_K = _m([[20609, 51651], [14785, 1448]], PKE_N)
PKE_E = _m([[57174, 14133], [7237, 20711]], PKE_N)
PKE_E_541 = _m([[369, 67], [204, 153]], PKE_P)
PKE_K_541 = _m([[51, 256], [178, 366]], PKE_P)
PKE_K_113 = _m([[43, 10], [95, 92]], PKE_Q)
PKE_PRINTED_PAIRS = {PKE_P: (220, 159), PKE_Q: (55, 49)}


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""
    note: bool = False  # informational; never fails a run


def kex_params() -> KexParams:
    return KexParams(KEX_P, KEX_M1, KEX_M2)


def check_kex() -> list[Check]:
    params = kex_params()
    checks = [Check("M1*M2", mat_mul(KEX_M1, KEX_M2) == KEX_M1M2)]

    # Roles as they must have been for the printed matrices.
    run = run_exchange(params, KEX_STATED_BOB, KEX_STATED_ALICE)
    t = run.transcript
    checks += [
        Check("C1 = M1^509 M2^131", t.C1 == KEX_C1, str(t.C1.rows())),
        Check("C2", t.C2 == KEX_C2, str(t.C2.rows())),
        Check("K (Bob)", run.key_bob == KEX_K, str(run.key_bob.rows())),
        Check("K (Alice)", run.key_alice == KEX_K, str(run.key_alice.rows())),
    ]
    literal = mat_mul(mat_pow(KEX_M1, KEX_STATED_ALICE.e1), mat_pow(KEX_M2, KEX_STATED_ALICE.e2))
    checks.append(Check(
        "stated Alice exponents (449, 41) give printed C1",
        literal == KEX_C1,
        f"M1^449 M2^41 = {literal.rows()}; printed C1 and K match with the roles swapped",
        note=True,
    ))

    system = build_relin_system(params, KEX_C1)
    x0, x1, y0, y1 = KEX_PRINTED_SOLUTION
    u = [x0 * y0, x0 * y1, x1 * y0, x1 * y1]
    lhs = [sum(c * v for c, v in zip(row, u)) % KEX_P for row in system.coeff]
    checks.append(Check("printed (x, y) solves the system", lhs == list(KEX_C1.entries)))
    k_printed = key_from_factor(system, RankOneFactor((x0, x1), (y0, y1)), KEX_C2)
    checks.append(Check("printed (x, y) yields K", k_printed == KEX_K))

    report = recover_key(t, rng=0, truth=KEX_K)
    checks.append(Check("attack recovers K from (M1, M2, C1, C2)", bool(report.verified), str(report.recovered_k.rows())))
    return checks


def check_pke() -> list[Check]:
    pk, sk = make_keys(PKE_P, PKE_Q, PKE_A, PKE_C, PKE_G_COEFFS)
    D = poly_of(PKE_D_COEFFS, pk.G)
    message = ModMatrix.identity(2, PKE_N)
    ct, K = encrypt_with(pk, message, D)
    checks = [
        Check("n = 541 * 113", PKE_N != PKE_PRINTED_N, f"541 * 113 = {PKE_N}, printed as {PKE_PRINTED_N}", note=True),
        Check("B = CAC", pk.B == PKE_B, str(pk.B.rows())),
        Check("G = 14 + 3374 C", pk.G == PKE_G, str(pk.G.rows())),
        Check("D = 34125 + 7123 G", D == PKE_D, str(D.rows())),
        Check("K = DBD", K == PKE_K, str(K.rows())),
        Check("E = DAD", ct.E == PKE_E, str(ct.E.rows())),
        Check("E mod 541", reduce_mod(PKE_E, PKE_P) == PKE_E_541),
        Check("CRT(K_541, K_113) = K", crt_recombine(PKE_K_541, PKE_K_113, PKE_P, PKE_Q) == PKE_K),
    ]
    for prime, printed in ((PKE_P, PKE_K_541), (PKE_Q, PKE_K_113)):
        part = recover_partial_key(pk, ct.E, prime)
        checks.append(Check(f"attack K mod {prime}", part.Kp == printed, str(part.Kp.rows())))
        x, y = PKE_PRINTED_PAIRS[prime]
        Ep = reduce_mod(ct.E, prime)
        in_c = poly_of((x, y), sk.C.reduce(prime))
        in_g = poly_of((x, y), pk.G.reduce(prime))
        solves_g = mat_mul(mat_mul(in_g, pk.A.reduce(prime)), in_g) == Ep
        solves_c = mat_mul(mat_mul(in_c, pk.A.reduce(prime)), in_c) == Ep
        checks.append(Check(
            f"printed pair {(x, y)} mod {prime}",
            solves_g,
            f"solves (x + yG)A(x + yG) = E: {solves_g}; solves (x + yC)A(x + yC) = E: {solves_c}",
            note=True,
        ))
    k_att, m_att, report = recover_key_and_message(pk, ct, PKE_P, PKE_Q, truth=K)
    checks.append(Check("attack recovers K", bool(report.verified), str(k_att.rows())))
    checks.append(Check("attack K equals decryptor's K", k_att == mat_mul(mat_mul(sk.C, ct.E), sk.C)))
    checks.append(Check("attack M equals decryption", m_att == patent_decrypt(sk, pk, ct) == message))
    return checks
