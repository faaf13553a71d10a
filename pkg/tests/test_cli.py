import json
from pathlib import Path

import pytest

from covercalc.cli import main

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dihedral(capsys):
    code, out, _ = run(capsys, "dihedral", "--k", "5")
    assert code == 0
    assert "rho(x)=(1 2)(3 5)" in out
    assert "chi=1" in out
    assert "boundary=(1 5 4 3 2)" in out


def test_dihedral_bad_k(capsys):
    code, _, err = run(capsys, "dihedral", "--k", "1")
    assert code == 2
    assert json.loads(err)["error"] == "usage"


def test_crystal(capsys):
    code, out, _ = run(capsys, "crystal")
    assert code == 0
    assert "index=27" in out
    assert "orbits=15" in out
    assert "sublink certificate PASS" in out


def test_check_and_enumerate(capsys):
    code, out, _ = run(capsys, "check", str(SAMPLES / "trefoil.braid"))
    assert code == 0 and "transitive: yes" in out
    code, out, _ = run(capsys, "enumerate", str(SAMPLES / "trefoil.braid"))
    assert code == 0 and out.strip().endswith("count=6")


def test_check_closure_violation(capsys):
    code, _, err = run(capsys, "check", str(SAMPLES / "bad_closure.braid"))
    assert code == 1
    assert json.loads(err)["error"] == "ClosureViolation"


def test_parse_error_reports_position(tmp_path, capsys):
    bad = tmp_path / "bad.braid"
    bad.write_text("strands=2 s1 s7\ncolors=RY\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 1
    record = json.loads(err)
    assert record["error"] == "BraidParseError" and record["position"] == 2


def test_missing_file(capsys):
    code, _, err = run(capsys, "check", "/nonexistent/file.braid")
    assert code == 1 and json.loads(err)["error"] == "io"


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "tower", "--format", "xml", "x")[0] == 2


def test_standardize_writes_log(tmp_path, capsys):
    log = tmp_path / "moves.log"
    code, out, _ = run(capsys, "standardize", str(SAMPLES / "trefoil.braid"), "--log", str(log))
    assert code == 0
    assert out.startswith("standard-link v1")
    assert "n=5" in out and "m=6" in out
    assert log.read_text().startswith("begin\t")


def test_tower_json(capsys):
    code, out, _ = run(capsys, "tower", "--format", "json", str(SAMPLES / "identity3.braid"))
    assert code == 0
    doc = json.loads(out)
    assert doc["certificate"]["passed"]
    assert doc["total_degree"] == 243 * doc["m"] * doc["n"]


def test_tower_whitehead(capsys):
    code, out, _ = run(capsys, "tower", "--variant", "whitehead", str(SAMPLES / "trefoil.braid"))
    assert code == 0
    assert "stage t\tdegree=27\tSKIPPED" in out


@pytest.mark.parametrize("sample", ["trefoil.braid", "identity3.braid", "monochromatic.braid"])
def test_tower_text_passes(capsys, sample):
    code, out, _ = run(capsys, "tower", str(SAMPLES / sample))
    assert code == 0
    assert out.strip().endswith("certificate PASS")
