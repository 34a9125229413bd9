import json

import pytest

from rigidconvex.cli import main

CAPRICORN = "x1^2*(x1^2+x2^2)-2*(x1^2+x2^2-x2)^2"
Q0 = "45,-8,10,0,1"
Q1 = "-7,44,-18,-4,1"
Q2 = "49,-28,-10,4,1"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out), err


# ---------------------------------------------------------------------------
# check-rigid
# ---------------------------------------------------------------------------

def test_check_rigid_cubic(capsys):
    code, rep, _ = run_json(capsys, "check-rigid", "--poly",
                            "1-x1-4*x1^2-x2^2+4*x1^3")
    assert code == 0
    assert rep["verdict"] == "rigidly-convex"


def test_check_rigid_tv(capsys):
    code, rep, _ = run_json(capsys, "check-rigid", "--poly", "1-x1^4-x2^4")
    assert code == 0
    assert rep["verdict"] == "not-rigidly-convex"
    assert rep["shortcut"] is True


def test_check_rigid_disc(capsys):
    code, rep, _ = run_json(capsys, "check-rigid", "--poly", "1-x1^2-x2^2")
    assert code == 0
    assert rep["verdict"] == "rigidly-convex"


def test_check_rigid_parse_error_exit_1(capsys):
    code, _, err = run(capsys, "check-rigid", "--poly", "1-+x1")
    assert code == 1
    assert "error" in err


def test_check_rigid_origin_on_curve_recenters(capsys):
    code, rep, _ = run_json(capsys, "check-rigid", "--poly", CAPRICORN)
    assert code == 0
    assert rep["origin_on_curve"] is True
    assert "recentered_at" in rep
    assert rep["verdict"] in ("rigidly-convex", "marginal")


def test_check_rigid_bean_not_rigid(capsys):
    code, rep, _ = run_json(capsys, "check-rigid", "--poly",
                            "x1^4+x1^2*x2^2+x2^4-x1^3+x1*x2^2")
    assert code == 0
    assert rep["origin_on_curve"] is True
    assert rep["verdict"] == "not-rigidly-convex"


def test_check_rigid_emit_hermite(capsys):
    code, rep, _ = run_json(capsys, "check-rigid", "--poly", "1-x1^2-x2^2",
                            "--emit-hermite")
    assert code == 0
    assert rep["hermite"] == [["2", "0"], ["0", "8"]]


def test_check_rigid_human_output_matches_json_verdict(capsys):
    code, out, _ = run(capsys, "check-rigid", "--poly", "1-x1^4-x2^4")
    assert code == 0
    assert "not-rigidly-convex" in out


@pytest.mark.parametrize("poly", [
    "1-x1-4*x1^2-x2^2+4*x1^3", "1-x1^4-x2^4", "1-x1^2-x2^2",
])
def test_json_and_human_verdicts_identical(capsys, poly):
    _, rep, _ = run_json(capsys, "check-rigid", "--poly", poly)
    _, out, _ = run(capsys, "check-rigid", "--poly", poly)
    human = next(line.split(": ", 1)[1] for line in out.splitlines()
                 if line.startswith("verdict:"))
    assert human == rep["verdict"]


# ---------------------------------------------------------------------------
# hermite / export-sdp / verify-factor
# ---------------------------------------------------------------------------

def test_hermite_emits_entries(capsys):
    code, rep, _ = run_json(capsys, "hermite", "--poly",
                            "1-x1-4*x1^2-x2^2+4*x1^3")
    assert code == 0
    assert rep["m"] == 3
    assert rep["hermite"][0][0] == "3"


def test_export_sdp(tmp_path, capsys):
    out = tmp_path / "cubic.dat-s"
    code, rep, _ = run_json(capsys, "export-sdp", "--poly",
                            "1-x1-4*x1^2-x2^2+4*x1^3", "--out", str(out))
    assert code == 0
    assert rep["block_size"] == 15
    assert rep["num_vars"] == 78
    assert out.exists()
    assert out.read_text().splitlines()[0] == "78"


def test_verify_factor(tmp_path, capsys):
    from rigidconvex.fixtures import load_fixture

    data = load_fixture("cubic-curve")
    factor = {"m": 3, "degree": 4,
              "U": [[[str(x) for x in row] for row in mat]
                    for mat in data["expect"]["spectral_factor"]["U"]]}
    path = tmp_path / "U.json"
    path.write_text(json.dumps(factor))
    code, rep, _ = run_json(capsys, "verify-factor", "--poly",
                            "1-x1-4*x1^2-x2^2+4*x1^3", "--factor", str(path))
    assert code == 0
    assert rep["verdict"] == "pass"
    assert rep["relative_residual"] <= 1e-2


# ---------------------------------------------------------------------------
# bezout-pencil / find-component / verify-det round trip
# ---------------------------------------------------------------------------

def test_bezout_pencil_capricorn(tmp_path, capsys):
    out = tmp_path / "pencil.json"
    code, rep, _ = run_json(capsys, "bezout-pencil", "--q0", Q0, f"--q1={Q1}",
                            "--q2", Q2, "--poly", CAPRICORN, "--out", str(out))
    assert code == 0
    assert rep["rigid_at_origin"] == "Marginal"
    assert rep["det_scale"] == "-1073741824"
    assert out.exists()


def test_pencil_roundtrip_through_files(tmp_path, capsys):
    out = tmp_path / "pencil.json"
    run_json(capsys, "bezout-pencil", "--q0", Q0, f"--q1={Q1}", "--q2", Q2,
             "--out", str(out))

    code, rep, _ = run_json(capsys, "verify-det", "--pencil", str(out),
                            "--poly", CAPRICORN)
    assert code == 0
    assert rep["verdict"] == "proportional"
    assert rep["c"] == "-1073741824"

    code, rep, _ = run_json(capsys, "find-component", "--pencil", str(out),
                            "--poly", CAPRICORN)
    assert code == 0
    assert rep["status"] == "PD"
    assert rep["point"] == pytest.approx([0.0, 0.5], abs=1e-7)


def test_find_component_without_poly(tmp_path, capsys):
    out = tmp_path / "pencil.json"
    run_json(capsys, "bezout-pencil", "--q0", Q0, f"--q1={Q1}", "--q2", Q2,
             "--out", str(out))
    code, rep, _ = run_json(capsys, "find-component", "--pencil", str(out))
    assert code == 0
    assert rep["status"] == "PD"


def test_verify_det_mismatch_is_exit_zero(tmp_path, capsys):
    pencil = {
        "m": 2, "c": None,
        "F0": [["1", "0"], ["0", "1"]],
        "F1": [["1", "0"], ["0", "0"]],
        "F2": [["0", "0"], ["0", "-1"]],
    }
    path = tmp_path / "p.json"
    path.write_text(json.dumps(pencil))
    code, rep, _ = run_json(capsys, "verify-det", "--pencil", str(path),
                            "--poly", "1-x1^2-x2^2")
    assert code == 0
    assert rep["verdict"] == "mismatch"
    assert rep["monomial"] is not None


# ---------------------------------------------------------------------------
# cubic-repr
# ---------------------------------------------------------------------------

def test_cubic_repr_elliptic(capsys):
    code, rep, _ = run_json(capsys, "cubic-repr", "--poly", "x1^3-x2^2-x1")
    assert code == 0
    assert rep["verdict"] == "computed"
    assert [r["t"] for r in rep["representations"]] == ["-24", "0", "24"]
    assert all(r["c"] != "0" for r in rep["representations"])


def test_cubic_repr_singular(capsys):
    code, rep, _ = run_json(capsys, "cubic-repr", "--poly=-x1^3-x1^2+x2^2")
    assert code == 0
    assert rep["verdict"] == "singular-cubic"


# ---------------------------------------------------------------------------
# fixture / plot-data
# ---------------------------------------------------------------------------

def test_fixture_command(capsys):
    code, rep, _ = run_json(capsys, "fixture", "--name", "fermat-pencil")
    assert code == 0
    assert rep["verdict"] == "pass"


def test_plot_data(tmp_path, capsys):
    out = tmp_path / "plot.csv"
    code, _, _ = run(capsys, "plot-data", "--poly", "1-x1^2-x2^2",
                     "--range=-1.5:1.5", "--grid", "11", "--out", str(out))
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "x1,x2,p"
    assert len(lines) == 1 + 11 * 11
    x1, x2, val = map(float, lines[1].split(","))
    assert val == pytest.approx(1 - x1**2 - x2**2, rel=1e-9)


def test_plot_data_stdout(capsys):
    code, out, _ = run(capsys, "plot-data", "--poly", "x1+x2",
                       "--range", "0:1", "--grid", "3")
    assert code == 0
    assert out.splitlines()[0] == "x1,x2,p"


def test_missing_file_exit_1(capsys):
    code, _, err = run(capsys, "verify-det", "--pencil", "/nonexistent.json",
                       "--poly", "1-x1^2-x2^2")
    assert code == 1


def test_check_rigid_squared_conic_inconclusive(capsys):
    # squared defining polynomial: every root is double, H(z) is identically
    # singular, and the decision procedure refuses to guess
    code, rep, _ = run_json(capsys, "check-rigid", "--poly", "(1-x1^2-x2^2)^2")
    assert code == 0
    assert rep["verdict"] == "inconclusive"
