import json
from pathlib import Path

import pytest

from gradering.cli import EXIT_ERROR, EXIT_FOUND, EXIT_OK, main, write_atomic
from gradering.corpus import CorpusSpec

INSTANCES = Path(__file__).resolve().parents[1] / "instances"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def small_corpus(tmp_path):
    spec = CorpusSpec(cyclic_max=4, matrices=False, group_rings=False, random_gradings=1)
    path = tmp_path / "corpus.json"
    path.write_text(json.dumps(spec.to_json()))
    return path


def test_validate_and_classify(capsys):
    code, out, _ = run(capsys, "validate", INSTANCES / "ex3_1.json")
    assert code == EXIT_OK and json.loads(out)["result"]["valid"]
    code, out, _ = run(capsys, "classify", INSTANCES / "ex3_1.json")
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["report"]["flags"]["is_graded_nil_good"] is True
    assert rep["header"]["caps"]["max_ring_order"] > 0


def test_classify_markdown_and_good_form(capsys):
    code, out, _ = run(capsys, "classify", INSTANCES / "checkerboard_m2_z2.json", "--format", "markdown")
    assert code == EXIT_OK and out.startswith("# Classification")
    code, out, _ = run(capsys, "classify", INSTANCES / "checkerboard_m2_z2.json", "--good-form")
    assert json.loads(out)["report"]["counterexamples"]["graded_nil_good"] == [1, 0, 0, 0]


def test_bad_inputs_exit_one_with_message(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"additive_orders": [2], "unity": [1], "mul": [[[3]]]}))
    code, _, err = run(capsys, "validate", bad)
    assert code == EXIT_ERROR and "IllDefinedBilinearMap" in err
    (tmp_path / "broken.json").write_text("{")
    code, _, err = run(capsys, "validate", tmp_path / "broken.json")
    assert code == EXIT_ERROR and "invalid JSON" in err
    code, _, err = run(capsys, "validate", tmp_path / "missing.json")
    assert code == EXIT_ERROR and "cannot read" in err
    code, _, err = run(capsys, "verify", "--theorem", "Z9")
    assert code == EXIT_ERROR and "unknown theorem" in err
    code, _, _ = run(capsys, "classify", "--nope", INSTANCES / "ex3_1.json")
    assert code == EXIT_ERROR


def test_max_order_cap(capsys):
    code, _, err = run(capsys, "classify", INSTANCES / "m2_te_z2.json", "--max-order", "100")
    assert code == EXIT_ERROR and "exceeds" in err


def test_construct_symbolic_and_finite(capsys):
    code, out, _ = run(capsys, "construct", INSTANCES / "spec_laurent_z2.json")
    data = json.loads(out)
    assert code == EXIT_OK and data["graded_nil_good"] is True
    assert data["nil_good"] is False and data["nil_good_witness"]["element"] == "1+X"
    code, out, _ = run(capsys, "construct", INSTANCES / "spec_polynomial_z2.json")
    assert json.loads(out)["witness"] == [[1], 1]
    code, out, _ = run(capsys, "construct", INSTANCES / "spec_trivial_extension.json")
    assert code == EXIT_OK and "recipe" in json.loads(out)


def test_instance_file_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", INSTANCES / "spec_matrix.json")
    path = tmp_path / "m.json"
    path.write_text(out)
    code, out, _ = run(capsys, "validate", path)
    assert code == EXIT_OK and json.loads(out)["result"]["kind"] == "graded_ring"


def test_verify_is_deterministic_and_writes_atomically(capsys, tmp_path, small_corpus):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "--theorem", "P3.2.1,T3.1.fwd", "--corpus", small_corpus]
    assert run(capsys, *args, "--workers", "1", "-o", a)[0] == EXIT_OK
    assert run(capsys, *args, "--workers", "2", "-o", b)[0] == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    assert not [p for p in tmp_path.iterdir() if p.name.endswith(".tmp")]
    report = json.loads(a.read_text())
    assert report["header"]["tool"] == "gradering"
    assert "runtime_ms" not in report["theorems"][0]


def test_verify_audit_and_replay(capsys, tmp_path, small_corpus):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "--theorem", "C3.1.literal", "--corpus", small_corpus, "-o", out,
                     "--markdown", tmp_path / "r.md")
    assert code == EXIT_OK
    rep = json.loads(out.read_text())["theorems"][0]
    assert rep["violations"] > 0 and rep["claim_discrepancy"]
    assert (tmp_path / "r.md").read_text().startswith("#")
    bundle = next(o["witness"] for o in rep["outcomes"] if o["outcome"] == "VIOLATED")
    bpath = tmp_path / "bundle.json"
    bpath.write_text(json.dumps(bundle))
    code, out_text, _ = run(capsys, "verify", "--replay", bpath)
    assert code == EXIT_FOUND and json.loads(out_text)["witness"] == bundle


def test_search_exit_codes(capsys):
    code, out, _ = run(capsys, "search", "--implication", INSTANCES / "implication_ng_gng.json")
    assert code == EXIT_FOUND and json.loads(out)["result"]["source"] == "corpus"


def test_corpus_emit(capsys, tmp_path, small_corpus):
    code, out, _ = run(capsys, "corpus", "--corpus", small_corpus, "--emit", tmp_path / "c")
    index = json.loads(out)["instances"]
    files = sorted(p.name for p in (tmp_path / "c").iterdir())
    assert code == EXIT_OK and files == sorted([e["file"] for e in index] + ["index.json"])
    first = json.loads((tmp_path / "c" / index[0]["file"]).read_text())
    assert "recipe" in first


def test_write_atomic_replaces(tmp_path):
    p = tmp_path / "x" / "f.txt"
    write_atomic(p, "one")
    write_atomic(p, "two")
    assert p.read_text() == "two"


@pytest.mark.parametrize("path", sorted(INSTANCES.glob("*.json")), ids=lambda p: p.name)
def test_shipped_instance_files_round_trip(path):
    first = json.loads(path.read_text())
    assert json.loads(json.dumps(first)) == first
    if "hypothesis" in first or first.get("construct") in ("laurent", "polynomial"):
        return
    if "construct" not in first and "grading" not in first:
        return  # a bare ring description
    from gradering.recipes import build

    GR = build(first)
    again = GR.to_json()
    assert json.loads(json.dumps(again)) == again
    assert build(again).ring.table == GR.ring.table
