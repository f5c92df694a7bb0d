"""Report payloads, JSON encoding, the SVG portrait, and the command line
surface with its exit-code contract:

    0 success, 1 verification failed, 2 invalid input, 3 numerical failure.
"""

import json
import shutil
import subprocess
import sys
from fractions import Fraction

import pytest

from curvegkz import cli
from curvegkz.curve import CurveMatrix
from curvegkz.errors import LogObstructionError, QuadratureError
from curvegkz.figure import build_svg
from curvegkz.report import (
    SCHEMA,
    analyze_report,
    cohomology_report,
    solve_report,
    to_json,
    verify_report,
)

A0134 = CurveMatrix([0, 1, 3, 4])


def test_json_encoding_rules():
    payload = to_json({"f": Fraction(3, 4), "z": 1.5 - 2.0j, "t": (1, 2), "n": None})
    data = json.loads(payload)
    assert data == {"f": "3/4", "z": [1.5, -2.0], "t": [1, 2], "n": None}
    assert payload.endswith("\n")


def test_to_json_deterministic():
    a = to_json(analyze_report(A0134))
    b = to_json(analyze_report(A0134))
    assert a == b
    # keys are sorted so dict construction order cannot leak through
    assert json.dumps(json.loads(a), sort_keys=True, indent=2) + "\n" == a


def test_analyze_report_content():
    rep = analyze_report(A0134)
    assert rep["schema"] == SCHEMA
    assert rep["matrix"] == {"exponents": [0, 1, 3, 4], "n": 4, "k": 4}
    assert rep["exceptional_parameters"] == [[1, 2]]
    assert rep["rank"] == {"generic": 4, "exceptional": 5}
    assert rep["facets"]["facet-0"]["generators"] == [1, 3, 4]
    assert rep["primitive_relations"] == {"1": [3, 4, 1], "2": [1, 4, 3]}
    assert rep["lines"]["facet-0"]["polar"] == list(range(0, 9))
    assert len(rep["search_box"]) == 4


def test_solve_report_at_jump():
    rep = solve_report(A0134, (Fraction(1), Fraction(2)))
    assert rep["rank"] == 5
    assert len(rep["basis"]) == 5
    assert len(rep["discarded"]) == 1
    assert rep["discarded"][0]["top"] == [0, 0, 2, 0]
    kinds = sorted(e["kind"] for e in rep["basis"])
    assert kinds == ["finite", "finite", "series", "series", "series"]
    encoded = json.loads(to_json(rep))
    assert encoded["beta"] == ["1", "2"]


def test_verify_report_pass_at_jump():
    rep = verify_report(A0134, (Fraction(1), Fraction(2)))
    assert rep["status"] == "pass"
    by_name = {c["name"]: c for c in rep["checks"]}
    assert by_name["basis-count"]["status"] == "pass"
    assert by_name["series-annihilation"]["status"] == "pass"
    assert by_name["finite-line-annihilation"]["status"] == "pass"
    assert by_name["coincidence-structure"]["status"] == "pass"
    assert by_name["coincidence-structure"]["verdict"] == "independent"
    # beta sits on polar lines, so the shift consistency check cannot run
    assert by_name["shift-order-independence"]["status"] == "skipped"
    assert by_name["loop-sum-rule"]["status"] == "pass"


def test_verify_report_generic_point_runs_numeric_checks():
    rep = verify_report(A0134, (Fraction(-1), Fraction(-2)))
    by_name = {c["name"]: c for c in rep["checks"]}
    assert by_name["shift-order-independence"]["status"] == "pass"
    assert by_name["finite-line-annihilation"]["status"] == "skipped"
    assert by_name["coincidence-structure"]["status"] == "skipped"
    assert rep["status"] == "pass"
    encoded = json.loads(to_json(rep))
    value = {c["name"]: c for c in encoded["checks"]}["shift-order-independence"]["value"]
    assert isinstance(value, list) and len(value) == 2


def test_verify_report_zero_tolerance_fails():
    rep = verify_report(A0134, (Fraction(-1), Fraction(-2)), tol=0.0)
    assert rep["status"] == "fail"


def test_cohomology_report():
    rep = cohomology_report(CurveMatrix([0, 1, 4, 5]))
    assert rep["support"] == [[1, 2], [1, 3], [2, 3], [2, 7]]
    assert rep["matches_rank_jumps"] is True
    assert all(d["generator"]["certified"] for d in rep["degrees"])
    assert all(d["dims"] == [0, 1, 0] for d in rep["degrees"])


def test_svg_shape():
    svg = build_svg(A0134, window=5)
    assert svg.startswith("<svg ")
    assert svg.rstrip().endswith("</svg>")
    # one gold marker for the single exceptional parameter, a background
    # rectangle plus one marker square per column
    assert svg.count("<circle") == 1
    assert svg.count("<rect") == 5
    assert build_svg(A0134, window=5) == svg
    # no exceptional parameters at all for 0,2,3
    assert build_svg(CurveMatrix([0, 2, 3]), window=5).count("<circle") == 0


def test_cli_analyze_stdout(capsys):
    rc = cli.main(["analyze", "-A", "0,1,3,4"])
    assert rc == 0
    data = json.loads(capsys.readouterr().out)
    assert data["schema"] == SCHEMA and data["command"] == "analyze"


def test_cli_solve_and_output_file(tmp_path, capsys):
    out = tmp_path / "solve.json"
    rc = cli.main(["solve", "-A", "0,1,3,4", "-b", "1,2", "--output", str(out)])
    assert rc == 0
    assert capsys.readouterr().out == ""
    data = json.loads(out.read_text())
    assert data["command"] == "solve" and data["rank"] == 5


def test_cli_verify_exit_codes(capsys):
    assert cli.main(["verify", "-A", "0,1,3,4", "-b", "1,2"]) == 0
    capsys.readouterr()
    assert cli.main(["verify", "-A", "0,1,3,4", "--beta=-1,-2", "--tol", "0"]) == 1
    capsys.readouterr()


@pytest.mark.parametrize(
    "matrix", ["0,2,4", "1,3,4", "0,4,3", "0", "0,x,3"]
)
def test_cli_invalid_matrix_is_exit_2(matrix, capsys):
    assert cli.main(["analyze", "-A", matrix]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_invalid_beta_is_exit_2(capsys):
    assert cli.main(["solve", "-A", "0,1,3,4", "-b", "1,2,3"]) == 2
    capsys.readouterr()
    assert cli.main(["solve", "-A", "0,1,3,4", "-b", "a,b"]) == 2
    capsys.readouterr()


def test_cli_numeric_failure_is_exit_3(monkeypatch, capsys):
    def boom(*args, **kwargs):
        raise QuadratureError("synthetic quadrature failure")

    monkeypatch.setattr(cli, "verify_report", boom)
    assert cli.main(["verify", "-A", "0,1,3,4", "-b", "1,2"]) == 3
    assert "numerical failure" in capsys.readouterr().err


def test_cli_log_obstruction_is_exit_3(monkeypatch, capsys):
    # LogObstructionError subclasses ValueError; it must still map to the
    # numerical-failure code, not invalid input
    def boom(*args, **kwargs):
        raise LogObstructionError((0, 0, 0, 0), 0, 1)

    monkeypatch.setattr(cli, "solve_report", boom)
    assert cli.main(["solve", "-A", "0,1,3,4", "-b", "1,2"]) == 3
    assert "numerical failure" in capsys.readouterr().err


def test_cli_env_tolerance(monkeypatch, capsys):
    monkeypatch.setenv("CURVEGKZ_TOL", "0")
    assert cli.main(["verify", "-A", "0,1,3,4", "--beta=-1,-2"]) == 1
    capsys.readouterr()


def test_cli_figure_formats(capsys):
    assert cli.main(["figure", "-A", "0,1,3,4"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("<svg ")
    assert cli.main(["figure", "-A", "0,1,3,4", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["command"] == "figure" and data["svg"].startswith("<svg ")


def test_cli_module_and_console_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "curvegkz.cli", "analyze", "-A", "0,1,3,4"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["command"] == "analyze"
    exe = shutil.which("curvegkz")
    assert exe is not None
    proc2 = subprocess.run(
        [exe, "analyze", "-A", "0,1,3,4"], capture_output=True, text=True, timeout=120
    )
    assert proc2.returncode == 0
    assert proc2.stdout == proc.stdout
