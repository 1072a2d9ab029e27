import json
from pathlib import Path

import pytest

from cstkit.cli import main, render_text

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out else None, err


def write(tmp_path, doc, name="in.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return p


def test_analyze_diag(capsys):
    code, doc, _ = run_json(capsys, "analyze", SAMPLES / "mu2_char2.json")
    assert code == 0
    assert doc["input"]["char"] == 2
    assert doc["pseudo_reflection_count"] == 0
    assert doc["oracle_verdict"]["hilbert_basis"] == [[0, 2], [1, 1], [2, 0]]
    assert doc["criterion_verdict"]["generated_by_pseudo_reflections"] is False
    assert doc["agreement"] and doc["warnings"] == []
    assert set(doc["provenance"]) >= {"cstkit_version", "limits"}


def test_analyze_constant(capsys):
    code, doc, _ = run_json(capsys, "analyze", SAMPLES / "s3.json")
    assert code == 0
    assert doc["oracle_verdict"]["degrees"] == [1, 2, 3]
    assert doc["criterion_verdict"]["generated_by_pseudo_reflections"] is True


def test_analyze_wellsplit_char0(capsys):
    code, doc, _ = run_json(capsys, "analyze", SAMPLES / "wellsplit_char0.json")
    assert code == 0 and doc["agreement"] and doc["oracle_verdict"]["degrees"] == [2, 3]


def test_analyze_reads_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO((SAMPLES / "a2.json").read_text()))
    code, doc, _ = run_json(capsys, "analyze", "-")
    assert code == 0 and doc["input"]["weights"] == [[1], [2]]


@pytest.mark.parametrize(
    "doc",
    [
        {"kind": "diag", "group": [4], "weights": [2, 2]},
        {"kind": "diag", "group": [4]},
        {"kind": "torus"},
        [1, 2],
        {"kind": "constant", "field": {"type": "rational"}, "generators": []},
        {"kind": "wellsplit", "group": [3], "weights": [1, 2], "perm_generators": [[1, 0]], "q_on_A": [[[1]]]},
    ],
)
def test_bad_input_exits_1(capsys, tmp_path, doc):
    code, out, err = run(capsys, "analyze", write(tmp_path, doc))
    assert code == 1 and out == "" and "input error" in err


def test_missing_and_malformed_files(capsys, tmp_path):
    assert run(capsys, "analyze", tmp_path / "nope.json")[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "analyze", bad)[0] == 1


def test_limit_exits_2(capsys, monkeypatch):
    monkeypatch.setenv("CSTKIT_LIMIT_BOX", "3")
    code, out, err = run(capsys, "analyze", SAMPLES / "a2.json")
    assert code == 2 and "limit" in err


def test_small_degree_cap_exits_2(capsys):
    assert run(capsys, "analyze", SAMPLES / "s3.json", "--degree-cap", "2")[0] == 2


def test_text_format(capsys):
    code, out, _ = run(capsys, "--format", "text", "analyze", SAMPLES / "mu2_char2.json")
    assert code == 0 and "agreement: true" in out
    code2, out2, _ = run(capsys, "analyze", SAMPLES / "mu2_char2.json", "--format", "text")
    assert out2 == out


def test_render_text_shapes():
    assert render_text({"b": [1, 2], "a": {"c": "x"}}) == "a:\n  c: x\nb: [1, 2]"
    assert render_text([{"k": None}]) == "-\n  k: null"


def test_hilbert_basis(capsys):
    code, doc, _ = run_json(capsys, "hilbert-basis", SAMPLES / "z4_12.json")
    assert code == 0
    assert doc["basis"] == [[0, 2], [2, 1], [4, 0]]
    assert doc["free"] is False and doc["gcds"] == [2, 1]


def test_hilbert_basis_refuses_constant(capsys):
    assert run(capsys, "hilbert-basis", SAMPLES / "s3.json")[0] == 1


def test_molien(capsys):
    _, doc, _ = run_json(capsys, "molien", SAMPLES / "s3.json", "--max-degree", "6")
    assert doc["coefficients"] == [1, 1, 2, 3, 4, 5, 7]
    _, doc, _ = run_json(capsys, "molien", SAMPLES / "a2.json", "--max-degree", "6")
    assert doc["coefficients"] == [1, 0, 1, 2, 1, 2, 3]
    _, doc, _ = run_json(capsys, "molien", SAMPLES / "wellsplit_char0.json", "--max-degree", "4")
    assert doc["coefficients"] == [1, 0, 1, 1, 1]
    assert run(capsys, "molien", SAMPLES / "wellsplit_char3.json", "--max-degree", "4")[0] == 1
    assert run(capsys, "molien", SAMPLES / "a2.json", "--max-degree", "-1")[0] == 1


def test_invariants(capsys):
    _, doc, _ = run_json(capsys, "invariants", SAMPLES / "a2.json", "--max-degree", "3")
    assert [d["basis"] for d in doc["degrees"]] == [["1"], [], ["x*y"], ["x^3", "y^3"]]
    _, doc, _ = run_json(capsys, "invariants", SAMPLES / "s3.json", "--max-degree", "2")
    assert [d["dimension"] for d in doc["degrees"]] == [1, 1, 2]


def test_torsor_check(capsys):
    code, doc, _ = run_json(capsys, "torsor-check", SAMPLES / "a2.json")
    assert code == 0 and doc["pass"] and doc["non_smooth"] == [[]]
    assert len(doc["strata"]) == 4
    assert run(capsys, "torsor-check", SAMPLES / "s3.json")[0] == 1


def test_descent_demo(capsys):
    code, doc, _ = run_json(capsys, "descent-demo")
    assert code == 0
    assert doc["descended"] == {"order": 1, "is_trivial": True}
    assert doc["stable_at_splitting_field"] is False


def test_sweep_random_is_deterministic(capsys):
    _, a, _ = run(capsys, "sweep", "--count", "40", "--seed", "7", "--max-order", "8")
    _, b, _ = run(capsys, "sweep", "--count", "40", "--seed", "7", "--max-order", "8", "--jobs", "2")
    assert a == b
    doc = json.loads(a)
    assert doc["instances"] == 40 and doc["discrepancies"] == []
    assert doc["provenance"]["seed"] == 7


def test_sweep_seed_changes_draws(capsys):
    _, a, _ = run(capsys, "sweep", "--count", "40", "--seed", "1", "--max-order", "8")
    _, b, _ = run(capsys, "sweep", "--count", "40", "--seed", "2", "--max-order", "8")
    assert a != b


def test_sweep_exhaustive_small(capsys):
    code, doc, _ = run_json(capsys, "sweep", "--exhaustive", "--max-order", "4", "--dim", "2")
    assert code == 0
    assert "seed" not in doc["config"] and doc["provenance"].get("seed") is None
    assert all(c["disagree"] == 0 for c in doc["checks"].values())
    assert doc["instances"] == 24 and doc["checks"]["torsor"]["agree"] == 9


@pytest.mark.parametrize("flag", [["--dim", "0"], ["--max-order", "0"], ["--count", "-1"], ["--jobs", "0"]])
def test_sweep_rejects_bad_ranges(capsys, flag):
    assert run(capsys, "sweep", *flag)[0] == 1


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert "cstkit" in capsys.readouterr().out
