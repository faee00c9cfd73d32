import io
import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings

from conftest import example1, example2, klein, torus, unipotent_matrices
from grbott.cli import main
from grbott.report import OPTIONAL_KEYS, REPORT_KEYS, InvalidCharacteristic, Report, build_report
from grbott.model import VectorMatrix

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def write(tmp_path, A, name="m.json"):
    p = tmp_path / name
    p.write_text(A.dumps() if isinstance(A, VectorMatrix) else A)
    return str(p)


def test_golden_report():
    code, text = run("report", str(GOLDEN / "example1.json"), "--json")
    assert code == 0
    assert json.loads(text) == json.loads((GOLDEN / "report_example1.json").read_text())


def test_report_keys_are_frozen():
    data = build_report(example1(1)).to_json()
    assert tuple(sorted(data)) == tuple(sorted(REPORT_KEYS))
    full = build_report(example1(1), dot=True, homotopy=2).to_json()
    assert set(full) == set(REPORT_KEYS) | set(OPTIONAL_KEYS)
    assert full["higher_homotopy"] == {"j": 2, "group": "Z"}


def test_validate_command(tmp_path):
    assert run("validate", str(GOLDEN / "example1.json")) == (0, "valid\n")
    code, text = run("validate", write(tmp_path, '{"dims": [1, 1], "rows": [[1, 1], [1, 1]]}'))
    assert code == 1
    assert "submatrix (1,1)" in text and text.startswith("invalid")
    assert run("validate", write(tmp_path, "{not json"))[0] == 2
    assert run("validate", str(tmp_path / "missing.json"))[0] == 2


def test_report_examples(tmp_path):
    code, text = run("report", write(tmp_path, example1(1)), "--json")
    r = json.loads(text)
    assert code == 0 and r["orientable"] and r["spin"]
    r = json.loads(run("report", write(tmp_path, example2((1, 0))), "--json")[1])
    assert r["orientable"] is False and r["spin"] is None
    assert r["w2"] == [[0, 2], [1, 1]]
    r = json.loads(run("report", write(tmp_path, torus(2)), "--json")[1])
    assert r["flags"]["abelian"] and r["flags"]["aspherical"] and r["betti"] == [1, 2, 1]


def test_report_invalid_and_bad_flags(tmp_path):
    bad = write(tmp_path, '{"dims": [1, 1], "rows": [[1, 1], [1, 1]]}')
    assert run("report", bad)[0] == 1
    assert run("report", str(GOLDEN / "example1.json"), "--homotopy", "1")[0] == 2
    assert run("report")[0] == 2
    with pytest.raises(InvalidCharacteristic):
        build_report(VectorMatrix((1, 1), ((1, 1), (1, 1))))


def test_report_human_readable(tmp_path):
    code, text = run("report", write(tmp_path, klein()), "--dot")
    assert code == 0
    assert "orientable:        False" in text and "spin:              n/a" in text
    assert "H1:                Z^1 + Z2" in text
    assert "digraph D {" in text


def test_report_accepts_unnormalized_input(tmp_path):
    A = VectorMatrix((1, 1), ((1, 0), (1, 1)))
    r = json.loads(run("report", write(tmp_path, A), "--json")[1])
    assert r["permutation"] == [1, 0]
    assert r["normalized_rows"] == [[1, 1], [0, 1]]


def test_normalize_and_dot_commands(tmp_path):
    code, text = run("normalize", write(tmp_path, VectorMatrix((1, 1), ((1, 0), (1, 1)))))
    assert code == 0
    assert json.loads(text) == {"dims": [1, 1], "rows": [[1, 1], [0, 1]], "permutation": [1, 0]}
    code, text = run("dot", str(GOLDEN / "example1.json"))
    assert code == 0 and text.startswith("digraph D {")
    bad = write(tmp_path, '{"dims": [1, 1], "rows": [[1, 1], [1, 1]]}')
    assert run("normalize", bad)[0] == 1 and run("dot", bad)[0] == 1


@pytest.mark.parametrize("dims,expected", [("2,1", (2, 1, 1)), ("2,2", (4, 0, 0)), ("2,1,1", (8, 2, 2))])
def test_census_command(dims, expected):
    code, text = run("census", "--dims", dims)
    assert code == 0
    s = json.loads(text.splitlines()[-1])["summary"]
    assert (s["total"], s["orientable"], s["spin"]) == expected


def test_census_bad_dims():
    for bad in ("0", "2,x", "", "-1,2"):
        assert run("census", "--dims", bad)[0] == 2
    assert run("census")[0] == 2


def test_census_dedupe_flag():
    s = json.loads(run("census", "--dims", "1,1,1", "--dedupe")[1].splitlines()[-1])["summary"]
    assert s["mode"] == "orbits" and s["total"] == 6


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "grbott", "validate", str(GOLDEN / "example1.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "valid\n"


@settings(max_examples=100, deadline=None)
@given(unipotent_matrices(max_k=3, max_dim=3))
def test_report_json_round_trip_and_invariants(A):
    r = build_report(A)
    again = Report.from_json(json.loads(r.dumps()))
    assert again == r and again.dumps() == r.dumps()
    assert (r.spin is None) == (not r.orientable)
    assert r.betti == r.betti[::-1]
    assert r.orientable == (r.w1 == [])


def test_report_from_json_rejects_unknown_keys():
    data = build_report(example1(1)).to_json()
    data["extra"] = 1
    with pytest.raises(ValueError):
        Report.from_json(data)
