import json
import subprocess
import sys
from pathlib import Path

import pytest

from enl.bundle import parse_bundle
from enl.catalogue import aff1
from enl.cli import main
from enl.tasks import exit_code, run_all

BUNDLES = Path(__file__).resolve().parent.parent / "bundles"


def path(name):
    return str(BUNDLES / name)


class TestCheck:
    def test_all_pass(self, capsysbinary):
        assert main(["check", path("example2.json")]) == 0
        out = capsysbinary.readouterr().out.decode()
        assert out.splitlines()[0] == "PASS check_lie(g4)"

    def test_failures_exit_one(self, capsysbinary):
        assert main(["check", path("sl2_rb.json")]) == 1
        lines = capsysbinary.readouterr().out.decode().splitlines()
        assert "FAIL check_enl_rb(S,B,H) witness=[h,e] got=0 expected=2*e" in lines

    def test_single_task(self, capsysbinary):
        assert main(["check", path("aff1.json"), "--task", "equivariant_N0"]) == 1
        out = capsysbinary.readouterr().out.decode()
        assert out == "FAIL check_equivariant(aff1,N0) witness=[X1,X1] got=0 expected=X2\n"

    def test_json(self, capsysbinary):
        assert main(["check", path("aff1.json"), "--format", "json"]) == 1
        out = json.loads(capsysbinary.readouterr().out)
        assert [r["status"] for r in out["reports"]][:2] == ["PASS", "FAIL"]

    def test_error_exit_two(self, tmp_path, capsysbinary):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["check", str(bad)]) == 2
        assert b"ParseError" in capsysbinary.readouterr().err

    def test_missing_file(self, capsysbinary):
        assert main(["check", "/nonexistent/bundle.json"]) == 2

    def test_unknown_task(self, capsysbinary):
        assert main(["check", path("aff1.json"), "--task", "nope"]) == 2
        assert b"UnknownTask" in capsysbinary.readouterr().err

    def test_byte_identical_runs(self, capsysbinary):
        outs = []
        for _ in range(2):
            main(["check", path("example1.json"), "--format", "json"])
            outs.append(capsysbinary.readouterr().out)
        assert outs[0] == outs[1]


class TestConstruct:
    def test_double_round_trip(self, tmp_path, capsysbinary):
        out = tmp_path / "double.json"
        assert main(["construct", "double", "bialgebra=ex2", path("example2.json"), "--out", str(out)]) == 0
        assert capsysbinary.readouterr().err == b"PASS double(ex2)\n"
        b = parse_bundle(out.read_bytes())
        d = b.lie_algebras["ex2_double"]
        assert d.dim == 8 and d.names[4:] == ("X1*", "X2*", "X3*", "X4*")
        assert "ex2_double_E" in b.operators and "ex2_double_pairing" in b.bilinear_forms
        assert "g4" in b.lie_algebras and b.tasks == []

    def test_hierarchy_error(self, capsysbinary):
        code = main(["construct", "hierarchy", "algebra=aff1", "operator=N0", "depth=2",
                     path("aff1.json")])
        assert code == 2
        captured = capsysbinary.readouterr()
        assert captured.out == b""
        assert captured.err.startswith(b"ERROR hierarchy(aff1,N0) NotEquivariant")

    def test_stdout(self, capsysbinary):
        assert main(["construct", "hierarchy", "algebra=aff1", "operator=Id", "depth=1",
                     path("aff1.json")]) == 0
        doc = json.loads(capsysbinary.readouterr().out)
        assert doc["lie_algebras"]["aff1_level1"]["brackets"] == [[0, 1, 1, "1"]]

    def test_bad_parameter(self):
        with pytest.raises(SystemExit):
            main(["construct", "double", "bialgebra", path("example2.json")])


class TestSolve:
    def test_aff1_centroid(self, capsysbinary):
        assert main(["solve", "centroid", "--algebra", "aff1", path("aff1.json")]) == 0
        doc = json.loads(capsysbinary.readouterr().out)
        found = sorted(k for k in doc["operators"] if k.startswith("aff1_centroid"))
        assert found == ["aff1_centroid_1"]
        assert doc["operators"]["aff1_centroid_1"]["matrix"] == [["1", "0"], ["0", "1"]]

    def test_output_checks_clean(self, tmp_path, capsysbinary):
        out = tmp_path / "c.json"
        main(["solve", "centroid", "--algebra", "sl2", path("sl2_rb.json"), "--out", str(out)])
        b = parse_bundle(out.read_bytes())
        assert exit_code(run_all(b)) == 0
        assert b.operator_on["sl2_centroid_1"] == "sl2"

    def test_unknown_algebra(self, capsysbinary):
        assert main(["solve", "centroid", "--algebra", "nope", path("aff1.json")]) == 2


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "enl.cli", "check", path("example2.json")],
                          capture_output=True)
    assert proc.returncode == 0
    assert proc.stdout.count(b"\n") == 12


def test_catalogue_matches_bundle():
    assert parse_bundle(Path(path("aff1.json")).read_bytes()).lie_algebras["aff1"] == aff1()
