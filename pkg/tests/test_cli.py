import io
import json
import subprocess
import sys

import pytest

from steinitz.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_classgroup():
    code, out, _ = run("classgroup", "--D", "10")
    assert code == 0
    assert "h = 2" in out and "(2,0,5) non-principal" in out and "ramified" in out
    code, out, _ = run("classgroup", "--D", "3", "--json")
    assert code == 0 and json.loads(out)["h"] == 1


def test_classgroup_non_squarefree():
    code, _, err = run("classgroup", "--D", "12")
    assert code == 2 and "NotSquarefree" in err


@pytest.mark.parametrize("argv", [[], ["verify"], ["verify", "--dataset", "dm"], ["random"],
                                  ["random", "--suite", "dm"], ["random", "--suite", "theorem1", "--count", "0"],
                                  ["verify", "--dataset", "dm", "--suite", "nope"], ["classgroup"]])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_verify_dm():
    code, out, _ = run("verify", "--dataset", "dm", "--suite", "dm")
    assert code == 0
    assert "DM1 (invariants): PASS" in out and "quantity=4" in out
    assert "summary: 5/5 passed" in out


@pytest.mark.parametrize("suite", ["theorem1", "lemma3", "theorem3", "theorem4", "theorem5"])
def test_verify_synthetic(suite):
    assert run("verify", "--dataset", "synthetic", "--suite", suite)[0] == 0


def test_verify_other_bundled():
    assert run("verify", "--dataset", "involutions", "--suite", "theorem1")[0] == 0
    assert run("verify", "--dataset", "modules", "--suite", "steinitz")[0] == 0


def test_no_applicable_entries_is_a_failure():
    code, out, _ = run("verify", "--dataset", "synthetic", "--suite", "dm")
    assert code == 1 and "0/0 passed" in out


@pytest.mark.parametrize("suite", ["lemma3", "theorem1", "theorem5"])
def test_corrupted_s(suite):
    code, out, _ = run("verify", "--dataset", "corrupted", "--suite", suite)
    assert code == 1
    assert "CMValidationError" in out


def test_corrupted_maps():
    code, out, _ = run("verify", "--dataset", "curves_bad_maps", "--suite", "curve")
    assert code == 1 and "ValidationFailed" in out and "square_is_minus_D" in out


def test_bad_dataset(tmp_path):
    p = tmp_path / "d.json"
    p.write_text(json.dumps({"entries": [{"kind": "cm_lattice", "D": 12, "sigma": [[1]], "S": [[1]]}]}))
    code, _, err = run("verify", "--dataset", str(p), "--suite", "lemma3")
    assert code == 2 and "NotSquarefree" in err
    code, _, err = run("verify", "--dataset", str(tmp_path / "none.json"), "--suite", "lemma3")
    assert code == 2


def test_mismatch_against_expected(tmp_path):
    p = tmp_path / "d.json"
    p.write_text(json.dumps({"entries": [{"kind": "invariants", "l": 1, "h1": 2, "idx_anti": 1,
                                          "expected": {"dm": {"steinitz": "(2,0,5) non-principal"}}}]}))
    code, out, _ = run("verify", "--dataset", str(p), "--suite", "dm")
    assert code == 1 and "mismatch: steinitz" in out


def test_json_mirrors_text():
    code, out, _ = run("verify", "--dataset", "dm", "--suite", "dm", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["summary"] == {"passed": 5, "ran": 5, "skipped": 0}
    assert [e["computed"]["steinitz"] for e in rep["entries"][:3]] == [
        "(1,0,10) principal", "(2,0,5) non-principal", "(2,0,5) non-principal"]


@pytest.mark.parametrize("argv", [
    ["verify", "--dataset", "synthetic", "--suite", "theorem5"],
    ["random", "--suite", "theorem1", "--count", "30", "--seed", "4"],
    ["random", "--suite", "steinitz", "--count", "5", "--seed", "4", "--json"],
])
def test_output_is_deterministic(argv):
    a, b = run(*argv), run(*argv)
    assert a == b


def test_random_suites():
    code, out, _ = run("random", "--suite", "theorem1", "--count", "50", "--seed", "1", "--max-rank", "8")
    assert code == 0 and "50/50 pass" in out
    code, out, _ = run("random", "--suite", "theorem3", "--count", "20", "--seed", "1", "--max-rank", "3")
    assert code == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "steinitz", "classgroup", "--D", "5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "(2,2,3)" in proc.stdout
