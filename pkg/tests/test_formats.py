import pytest

from matbreak import formats
from matbreak.algebra import ModMatrix
from matbreak.errors import ParseError
from matbreak.formats import Meta
from matbreak.kex import random_run, recover_key
from matbreak.pke import patent_encrypt, patent_keygen


def test_transcript_roundtrip():
    run = random_run(65521, 3, 17)
    text = formats.dump_transcript(run.transcript)
    t, meta = formats.load_transcript(text)
    assert t == run.transcript and meta.seed == 17
    assert formats.dump_transcript(t) == text


def test_params_roundtrip():
    params = random_run(569, 2, 1).transcript.params
    text = formats.dump_params(params, Meta(1))
    assert formats.load_params(text) == (params, Meta(1))


def test_report_roundtrip():
    run = random_run(65521, 2, 4)
    rep = recover_key(run.transcript, truth=run.key_bob)
    text = formats.dump_report(rep, Meta(4))
    back, msg, meta = formats.load_report(text)
    assert msg is None and meta.seed == 4
    assert back.recovered_k == rep.recovered_k and back.attempts == rep.attempts and back.verified is True
    assert formats.dump_report(back, meta) == text


def test_patent_files_roundtrip():
    pk, sk = patent_keygen(541, 113, 3, 2)
    ct, _ = patent_encrypt(pk, ModMatrix.identity(3, pk.n), 2)
    for dump, load, obj in (
        (formats.dump_public_key, formats.load_public_key, pk),
        (formats.dump_private_key, formats.load_private_key, sk),
        (formats.dump_ciphertext, formats.load_ciphertext, ct),
    ):
        text = dump(obj, Meta(2))
        back, meta = load(text)
        assert back == obj and meta == Meta(2)
        assert dump(back, meta) == text


def test_meta_seed_none():
    m = ModMatrix.identity(2, 7)
    text = formats.dump_matrix("M", m)
    assert "seed=none\n" in text
    assert formats.load_matrix(text, "M") == (m, Meta())


def test_write_uses_lf(tmp_path):
    path = tmp_path / "m.txt"
    formats.write_text(path, formats.dump_matrix("M", ModMatrix.identity(2, 7)))
    assert b"\r" not in path.read_bytes()


@pytest.mark.parametrize("text", [
    "[M]\r\ndim=1 mod=7\r\n1\r\n",
    "dim=1 mod=7\n1\n",
    "[M]\ndim=1 mod=7\n1\n[M]\ndim=1 mod=7\n1\n",
    "[M]\ndim=1 mod=7\n1\n2\n",
    "[meta]\nseed=abc\n[M]\ndim=1 mod=7\n1\n",
    "[meta]\nnovalue\n[M]\ndim=1 mod=7\n1\n",
])
def test_matrix_file_rejects(text):
    with pytest.raises(ParseError):
        formats.load_matrix(text, "M")


def test_missing_section():
    with pytest.raises(ParseError, match=r"\[C2\]"):
        formats.load_transcript("[params]\n[C1]\n")


def test_private_key_factor_mismatch():
    pk, sk = patent_keygen(541, 113, 2, 0)
    text = formats.dump_private_key(sk).replace("q=113", "q=127")
    with pytest.raises(ParseError):
        formats.load_private_key(text)


def test_public_key_modulus_mismatch():
    pk, _ = patent_keygen(541, 113, 2, 0)
    text = formats.dump_public_key(pk)
    head = text.split("[G]\n")[0]
    with pytest.raises(ParseError):
        formats.load_public_key(head + "[G]\ndim=2 mod=7\n0 0\n0 0\n")
