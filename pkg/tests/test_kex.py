import pytest

from matbreak.algebra import ModMatrix, mat_inverse, mat_mul, mat_pow, random_prime
from matbreak.errors import DegenerateDim, Inconsistent, NotRankOne, RetriesExhausted, ZeroMatrix
from matbreak.kex import (
    KexParams,
    KexSecret,
    KexTranscript,
    RankOneFactor,
    alice_init,
    build_relin_system,
    kex_keygen,
    key_from_factor,
    random_run,
    rank_one_factor,
    recover_key,
    run_exchange,
    sample_solution,
)
from matbreak.published import KEX_C1, KEX_M1, KEX_M2, KEX_P, kex_params
from matbreak.rng import Xoshiro256


def M(rows, m):
    return ModMatrix.from_rows(rows, m)


# protocol


def test_zero_exponents_give_identity():
    params = kex_params()
    assert alice_init(params, KexSecret(0, 0)).is_identity()


def test_negative_exponent_uses_inverse():
    params = kex_params()
    c1 = alice_init(params, KexSecret(-1, 1))
    assert c1 == mat_mul(mat_inverse(KEX_M1), KEX_M2)


def test_honest_parties_agree_200_runs():
    g = Xoshiro256(99)
    for i in range(200):
        p = random_prime(16, g)
        run = random_run(p, g.randint(2, 5), g.next_u64())
        assert run.key_alice == run.key_bob
        assert run.key_bob == mat_mul(mat_pow(run.transcript.params.M1, run.bob.e1), mat_pow(run.transcript.params.M2, run.bob.e2))


def test_keygen_rejects_dim_one():
    with pytest.raises(DegenerateDim):
        kex_keygen(101, 1, 0)


def test_keygen_output_is_valid_and_deterministic():
    a = kex_keygen(65521, 4, 12)
    assert a == kex_keygen(65521, 4, 12)
    assert not a.M1.commutes_with(a.M2)
    mat_inverse(a.M1), mat_inverse(a.M2)


def test_params_reject_commuting_pair():
    with pytest.raises(ValueError):
        KexParams(7, ModMatrix.scalar(2, 3, 7), M([[1, 2], [3, 4]], 7))


def test_random_run_is_reproducible():
    assert random_run(569, 3, 5).transcript == random_run(569, 3, 5).transcript


# relinearized system


def test_relin_first_equation():
    system = build_relin_system(kex_params(), KEX_C1)
    assert system.coeff[0] == [1, 172, 12, 37]
    assert system.rhs[0] == 502


def test_relin_columns_are_power_products():
    params = kex_keygen(101, 3, 3)
    system = build_relin_system(params, params.M1)
    for i in range(3):
        for j in range(3):
            col = [row[i * 3 + j] for row in system.coeff]
            assert col == list(mat_mul(mat_pow(params.M1, i), mat_pow(params.M2, j)).entries)


def test_sample_solution_satisfies_system():
    run = random_run(65521, 3, 8)
    system = build_relin_system(run.transcript.params, run.transcript.C1)
    for seed in range(10):
        u = sample_solution(system, seed)
        lhs = [sum(c * v for c, v in zip(row, u.entries)) % 65521 for row in system.coeff]
        assert tuple(lhs) == system.rhs


def test_sample_solution_unique_for_published_system():
    system = build_relin_system(kex_params(), KEX_C1)
    assert system.solution.nullity == 0
    assert sample_solution(system, 1) == sample_solution(system, 2)


def test_doctored_rhs_is_inconsistent():
    # C1 outside the span of the power products
    params = KexParams(
        5,
        M([[1, 1, 0], [0, 1, 0], [0, 0, 1]], 5),
        M([[1, 0, 0], [1, 1, 0], [0, 0, 1]], 5),
    )
    system = build_relin_system(params, M([[0, 0, 0], [0, 0, 0], [0, 0, 1]], 5))
    with pytest.raises(Inconsistent):
        system.solution


# rank-one factorization


def test_rank_one_examples():
    assert rank_one_factor(M([[1, 2], [2, 4]], 5)) == RankOneFactor((1, 2), (1, 2))
    with pytest.raises(NotRankOne):
        rank_one_factor(ModMatrix.identity(2, 5))
    with pytest.raises(ZeroMatrix):
        rank_one_factor(ModMatrix.zero(3, 5))


def test_rank_one_published_solution():
    f = rank_one_factor(M([[244, 168], [105, 7]], KEX_P))
    assert f == RankOneFactor((1, 166), (244, 168))


def test_rank_one_scaling_invariance(rng):
    p = 10007
    for _ in range(50):
        n = rng.randint(1, 5)
        x = [rng.below(p) for _ in range(n)]
        y = [rng.below(p) for _ in range(n)]
        if not any(x) or not any(y):
            continue
        lam = rng.randint(1, p - 1)
        lam_inv = pow(lam, -1, p)
        u = M([[xi * yj % p for yj in y] for xi in x], p)
        v = M([[lam * xi * lam_inv * yj % p for yj in y] for xi in x], p)
        f = rank_one_factor(u)
        assert f == rank_one_factor(v)
        assert M([[a * b for b in f.y] for a in f.x], p) == u


# attack


def test_attack_published_transcript():
    params = kex_params()
    run = run_exchange(params, KexSecret(509, 131), KexSecret(449, 41))
    rep = recover_key(run.transcript, truth=run.key_bob)
    assert rep.verified and rep.attempts == 1


def test_identity_c1_gives_c2_as_key():
    params = kex_keygen(1009, 3, 1)
    run = run_exchange(params, KexSecret(0, 0), KexSecret(77, 91))
    assert run.transcript.C2 == run.key_bob
    assert recover_key(run.transcript).recovered_k == run.transcript.C2


def test_degenerate_minimal_polynomial():
    p = 1009
    m1 = M([[2, 0, 0], [0, 2, 0], [0, 0, 3]], p)  # minimal polynomial of degree 2
    m2 = kex_keygen(p, 3, 4).M2
    params = KexParams(p, m1, m2)
    run = run_exchange(params, KexSecret(1234, 567), KexSecret(89, 1011))
    system = build_relin_system(params, run.transcript.C1)
    assert system.solution.nullity > 0
    assert recover_key(run.transcript, truth=run.key_bob).verified


def test_attack_sees_only_public_data():
    run = random_run(65521, 4, 2024)
    public = KexTranscript(run.transcript.params, run.transcript.C1, run.transcript.C2)
    assert recover_key(public, rng=3).recovered_k == run.key_bob


def test_key_from_factor_matches_attack():
    run = random_run(65521, 2, 31)
    system = build_relin_system(run.transcript.params, run.transcript.C1)
    f = rank_one_factor(sample_solution(system, 0, particular=True))
    assert key_from_factor(system, f, run.transcript.C2) == run.key_bob


def test_retries_exhausted_reports_budget():
    p = 7
    m1 = M([[1, 1, 0], [0, 1, 0], [0, 0, 1]], p)
    m2 = M([[1, 0, 0], [1, 1, 0], [0, 0, 1]], p)
    params = KexParams(p, m1, m2)
    # zero C1: every candidate factor is singular
    c1 = ModMatrix.zero(3, p)
    t = KexTranscript(params, c1, c1)
    with pytest.raises(RetriesExhausted) as exc:
        recover_key(t, retry_budget=5)
    assert exc.value.attempts == 5
    assert sum(exc.value.failures.values()) == 5


def test_attack_deterministic_for_seed():
    run = random_run(65521, 3, 77)
    a = recover_key(run.transcript, rng=5)
    b = recover_key(run.transcript, rng=5)
    assert a.recovered_k == b.recovered_k and a.attempts == b.attempts
