import json

import pytest

from cdcodes.cli import main


def run(capsys, *args):
    rc = main(list(args))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


# -- decompose -------------------------------------------------------------------


def test_decompose_7_3(capsys):
    rc, out, _ = run(capsys, "decompose", "--q", "7", "--n", "3")
    assert rc == 0
    assert "A_0: trivial_field" in out
    assert "A_1: paired dim=4 k=1" in out


def test_decompose_3_5_json(capsys):
    rc, out, _ = run(capsys, "decompose", "--q", "3", "--n", "5", "--format", "json")
    assert rc == 0
    rep = json.loads(out)
    assert rep["blocks"][1]["kind"] == "self_conj"
    assert rep["blocks"][1]["k"] == 2
    assert rep["k_sum_matches_(n-1)/2"]


def test_decompose_even_n_exit2(capsys):
    rc, _, err = run(capsys, "decompose", "--q", "2", "--n", "4")
    assert rc == 2
    assert "odd" in err


def test_decompose_p_m_flags(capsys):
    rc, out, _ = run(capsys, "decompose", "--p", "3", "--m", "2", "--n", "5")
    assert rc == 0
    assert "q=9" in out


# -- construct --------------------------------------------------------------------------


def test_construct_self_dual_5_3(capsys, tmp_path):
    out_path = tmp_path / "code.txt"
    rc, _, err = run(
        capsys, "construct", "--q", "5", "--n", "3", "--family", "self-dual", "--out", str(out_path)
    )
    assert rc == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "5 6 3"
    assert len(lines) == 4
    assert '"verdict": "self-dual"' in err


def test_construct_self_dual_q7_exit3(capsys):
    rc, _, err = run(capsys, "construct", "--q", "7", "--n", "3", "--family", "self-dual")
    assert rc == 3
    assert "hypothesis" in err


def test_construct_lcd_7_3_stamp_reports_reality(capsys):
    # the family builds, and the stamp carries the honestly computed hull
    rc, out, err = run(capsys, "construct", "--q", "3", "--n", "7", "--family", "lcd")
    assert rc == 0
    assert out.splitlines()[0] == "3 14 6"
    stamp = json.loads(err.split("stamp: ", 1)[1])
    assert stamp["hull"] == 6
    assert stamp["verdict"] == "self-orthogonal"


def test_construct_random_beta_requires_seed(capsys):
    rc, _, err = run(capsys, "construct", "--q", "5", "--n", "3", "--beta", "random")
    assert rc == 2
    assert "seed" in err


def test_construct_reproducible(capsys, tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    for path in (a, b):
        rc, _, _ = run(
            capsys,
            "construct", "--q", "5", "--n", "3",
            "--family", "self-dual", "--beta", "random", "--seed", "13",
            "--out", str(path),
        )
        assert rc == 0
    assert a.read_bytes() == b.read_bytes()


def test_construct_explicit_beta(capsys):
    rc, out, _ = run(capsys, "construct", "--q", "5", "--n", "3", "--beta", "7", "--family", "plain")
    assert rc == 0
    assert out.splitlines()[0] == "5 6 2"


def test_construct_json_format(capsys):
    rc, out, _ = run(
        capsys, "construct", "--q", "13", "--n", "3", "--family", "self-dual", "--format", "json"
    )
    assert rc == 0
    payload = json.loads(out)
    assert payload["k_dim"] == 3
    assert payload["stamp"]["verdict"] == "self-dual"


# -- analyze ------------------------------------------------------------------------------------


def test_analyze_roundtrip(capsys, tmp_path):
    path = tmp_path / "code.txt"
    rc, _, _ = run(
        capsys, "construct", "--q", "5", "--n", "3", "--family", "self-dual", "--out", str(path)
    )
    assert rc == 0
    rc, out, _ = run(capsys, "analyze", str(path), "--format", "json", "--delta", "0.2")
    assert rc == 0
    rep = json.loads(out)
    assert rep["self_dual"] is True
    assert rep["hull"] == 3
    assert rep["min_weight"]["method"] == "exhaustive"
    assert rep["balance"]["balanced"] is True


def test_analyze_missing_file(capsys):
    rc, _, err = run(capsys, "analyze", "/nonexistent/code.txt")
    assert rc == 2


# -- verify-paper ----------------------------------------------------------------------------------


def test_verify_paper_reports_known_defects(capsys):
    # three checks pass; the two statements corrected in this implementation
    # (the self-conjugate-block inner-product dichotomy and the f bar f
    # closed form) fail, so the command exits 1
    rc, out, _ = run(capsys, "verify-paper", "--qs", "3,5,7")
    assert rc == 1
    lines = out.splitlines()
    assert any(l.startswith("PASS counterexample") for l in lines)
    assert any(l.startswith("PASS counting") for l in lines)
    assert any(l.startswith("FAIL selfconj-block-dichotomy") for l in lines)
    assert any(l.startswith("FAIL f-barf-closed-form") for l in lines)
    assert any(l.startswith("PASS conjugation-criteria") for l in lines)


def test_verify_paper_json(capsys):
    rc, out, _ = run(capsys, "verify-paper", "--qs", "7", "--format", "json")
    assert rc == 1
    rep = json.loads(out)
    names = {c["name"]: c["passed"] for c in rep["checks"]}
    assert names["counterexample(q=7,n=3)"] is True
    assert rep["all_passed"] is False
