import pytest

from matbreak import formats
from matbreak.cli import main
from matbreak.published import KEX_K


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_kex_keygen_then_attack_roundtrip(tmp_path, capsys):
    params = tmp_path / "params.txt"
    assert run(["kex-keygen", "--seed", 3, "--dim", 3, "--out", params], capsys)[0] == 0
    t = tmp_path / "t.txt"
    code, out, _ = run(["kex-run", "--params", params, "--seed", 3, "--out", t], capsys)
    assert code == 0 and "verified=True" in out
    code, out, _ = run(["kex-attack", t, "--no-timing"], capsys)
    assert code == 0 and "[recovered_k]" in out and "verified=unknown" in out


def test_kex_attack_with_truth(tmp_path, capsys):
    t = tmp_path / "t.txt"
    rep = tmp_path / "r.txt"
    assert run(["kex-run", "--seed", 5, "--out", t, "--report", rep], capsys)[0] == 0
    k = formats.load_report(formats.read_text(rep))[0].recovered_k
    truth = tmp_path / "k.txt"
    formats.write_text(truth, formats.dump_matrix("K", k))
    assert run(["kex-attack", t, "--truth", truth], capsys)[0] == 0
    formats.write_text(truth, formats.dump_matrix("K", k * 2))
    code, out, _ = run(["kex-attack", t, "--truth", truth], capsys)
    assert code == 1 and "verified=false" in out


def test_no_timing_is_byte_identical(tmp_path, capsys):
    outputs = []
    for i in range(2):
        t, r = tmp_path / f"t{i}", tmp_path / f"r{i}"
        run(["kex-run", "--seed", 11, "--dim", 4, "--out", t, "--report", r, "--no-timing"], capsys)
        outputs.append((t.read_bytes(), r.read_bytes()))
    assert outputs[0] == outputs[1]
    assert b"elapsed_ms=0.000" in outputs[0][1]


def test_kex_run_paper_example(capsys):
    code, out, _ = run(["kex-run", "--paper-example"], capsys)
    assert code == 0
    assert "[note]" in out and "FAIL" not in out
    assert " ".join(map(str, KEX_K.rows()[0])) in " ".join(out.split())


def test_pke_file_pipeline(tmp_path, capsys):
    prefix = tmp_path / "key"
    assert run(["pke-keygen", "--out", prefix, "--p", 541, "--q", 113, "--k", 3, "--seed", 2], capsys)[0] == 0
    pub, priv = f"{prefix}.pub", f"{prefix}.key"
    ct, msg = tmp_path / "ct", tmp_path / "m"
    assert run(["pke-encrypt", "--pub", pub, "--out", ct, "--message-out", msg, "--seed", 2], capsys)[0] == 0
    dec = tmp_path / "dec"
    assert run(["pke-decrypt", "--pub", pub, "--priv", priv, "--ct", ct, "--out", dec], capsys)[0] == 0
    rep = tmp_path / "rep"
    assert run(["pke-attack", "--pub", pub, "--ct", ct, "--p", 541, "--q", 113, "--out", rep, "--no-timing"], capsys)[0] == 0
    m = formats.load_matrix(formats.read_text(msg), "M")[0]
    assert formats.load_matrix(formats.read_text(dec), "M")[0] == m
    assert formats.load_report(formats.read_text(rep))[1] == m


def test_pke_encrypt_given_message(tmp_path, capsys):
    prefix = tmp_path / "key"
    run(["pke-keygen", "--out", prefix, "--p", 541, "--q", 113, "--degree-one"], capsys)
    msg = tmp_path / "m"
    formats.write_text(msg, "[M]\ndim=2 mod=61133\n1 2\n3 4\n")
    ct, dec = tmp_path / "ct", tmp_path / "dec"
    assert run(["pke-encrypt", "--pub", f"{prefix}.pub", "--message", msg, "--out", ct, "--degree-one"], capsys)[0] == 0
    run(["pke-decrypt", "--pub", f"{prefix}.pub", "--priv", f"{prefix}.key", "--ct", ct, "--out", dec], capsys)
    assert formats.read_text(dec).endswith("[M]\ndim=2 mod=61133\n1 2\n3 4\n")


@pytest.mark.parametrize("extra", [[], ["--degree-one"], ["--paper-example"]])
def test_pke_run(extra, capsys):
    code, out, _ = run(["pke-run", "--seed", 4, *extra], capsys)
    assert code == 0 and "FAIL" not in out


def test_verify_paper(capsys):
    code, out, _ = run(["verify-paper"], capsys)
    assert code == 0 and out.rstrip().endswith("OK")


def test_bench_cli(tmp_path, capsys):
    out = tmp_path / "b.csv"
    code, _, err = run(["bench", "--dims", "2,3", "--trials", 2, "--modulus", 65521, "--out", out], capsys)
    assert code == 0 and "slope" in err and "backend=" in err
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# matbreak") and lines[1].startswith("n,modulus_bits")
    assert len(lines) == 2 + 4 + 2
    code, _, err = run(["bench", "--dims", "2", "--trials", 1, "--out", out], capsys)
    assert code == 0 and "n/a" in err


@pytest.mark.parametrize("argv", [
    ["kex-attack", "/nonexistent/file"],
    ["kex-keygen", "--modulus", 100],
    ["kex-keygen", "--dim", 1],
    ["pke-keygen", "--out", "x", "--p", 541, "--q", 541],
    ["bench", "--dims", ","],
])
def test_bad_input_exit_2(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and err.startswith("error:")


def test_malformed_transcript_exit_2(tmp_path, capsys):
    t = tmp_path / "t"
    t.write_text("[params]\ndim=2 mod=5\n1 2\n")
    assert run(["kex-attack", t], capsys)[0] == 2


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_kex_campaign_100(capsys):
    code, out, _ = run(["kex-run", "--campaign", 100, "--seed", 6, "--dim", 3], capsys)
    assert code == 0 and "runs=100 verified=100" in out


def test_pke_campaign(capsys):
    code, out, _ = run(["pke-run", "--campaign", 20, "--k", 4], capsys)
    assert code == 0 and "runs=20 verified=20" in out
