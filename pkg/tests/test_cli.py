import json
import subprocess
import sys

import pytest

from isbell.cli import main
from isbell.corpus import path_of


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def broken_category(tmp_path):
    data = json.loads(path_of("cyclic2").read_text())
    data["compose"] = [row for row in data["compose"] if row[:2] != ["0", "1"]]
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(data))
    return str(p)


def test_validate(capsys, tmp_path):
    assert run(capsys, "validate", "corpus:cyclic2", "corpus:cyclic2_regular", "corpus:poset_chain3")[0] == 0
    code, out, _ = run(capsys, "validate", broken_category(tmp_path))
    assert code == 1 and "totality" in out and "0, 1" in out
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "validate", str(bad))[0] == 2


def test_conj(capsys):
    code, out, _ = run(capsys, "conj", "corpus:cyclic2_regular", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["conjugate"]["variance"] == "co"
    assert len(data["conjugate"]["sets"]["*"]) == 2
    code, out, _ = run(capsys, "conj", "corpus:cyclic3_free2", "--iterate", "3", "--format", "json")
    assert code == 0
    assert [s["orbits"] for s in json.loads(out)["steps"]] == [2, 3, 9]


def test_reflexive(capsys):
    assert run(capsys, "reflexive", "corpus:cyclic2_point")[0] == 0
    assert run(capsys, "reflexive", "corpus:cyclic2_regular")[0] == 0
    code, out, _ = run(capsys, "reflexive", "corpus:cyclic3_free2", "--format", "json")
    assert code == 1 and json.loads(out)["reflexive"] is False


@pytest.mark.parametrize("cat,bound,count", [("cyclic2", "4", 4), ("idempotent_monoid", "4", 2), ("discrete2", "3", 4)])
def test_complete(capsys, cat, bound, count):
    code, out, _ = run(capsys, "complete", f"corpus:{cat}", "--bound", bound, "--format", "json")
    assert code == 0
    assert len(json.loads(out)["classes"]) == count


def test_cauchy(capsys):
    code, out, _ = run(capsys, "cauchy", "corpus:idempotent_monoid", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["category"]["objects"]) == 2


@pytest.mark.parametrize("poset,cuts", [("poset_antichain2", 4), ("poset_chain3", 3), ("poset_empty", 1)])
def test_dm(capsys, poset, cuts):
    code, out, _ = run(capsys, "dm", f"corpus:{poset}", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data["cuts"]) == cuts and data["crosscheck"] is True


def test_metric(capsys):
    assert run(capsys, "metric", "isbell", "corpus:two_point_1", "corpus:two_point_1_inner")[0] == 0
    assert run(capsys, "metric", "tightspan", "corpus:two_point_1", "corpus:two_point_1_origin")[0] == 1
    code, out, _ = run(capsys, "metric", "dist", "corpus:two_point_1", "corpus:two_point_1_yoneda0",
                       "corpus:two_point_1_yonedaD", "--format", "json")
    assert code == 0 and json.loads(out) == {"distance": "1"}
    code, out, _ = run(capsys, "metric", "conj", "corpus:two_point_1", "corpus:two_point_1_origin", "--format", "json")
    assert json.loads(out)["f"] == {"0": "1", "D": "1"}


def test_corpus(capsys):
    code, out, _ = run(capsys, "corpus", "--corpus", "groups", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert rows and all(r["pass"] and r["key"].startswith("groups/") for r in rows)


def test_ceiling(capsys):
    code, _, err = run(capsys, "conj", "corpus:cyclic3_free2", "--iterate", "4", "--ceiling", "10000")
    assert code == 3 and "completed before the limit" in err
    assert run(capsys, "conj", "corpus:cyclic2_regular", "--ceiling", "10")[0] == 2


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "reflexive", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "complete", "corpus:cyclic2_regular")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


@pytest.mark.parametrize("argv", [
    ["complete", "corpus:cyclic2", "--format", "json"],
    ["conj", "corpus:cyclic2_regular_twice", "--format", "json"],
    ["dm", "corpus:poset_five_point", "--format", "json"],
])
def test_json_is_byte_stable(capsys, argv):
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    json.loads(first)


def test_console_script():
    done = subprocess.run(
        [sys.executable, "-m", "isbell.cli", "reflexive", "corpus:cyclic3_free2"],
        capture_output=True, text=True, check=False,
    )
    assert done.returncode == 1
