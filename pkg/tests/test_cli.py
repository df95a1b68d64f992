"""CLI behavior: exit codes, piping, determinism."""

import json
from fractions import Fraction as F

import pytest

from cwkms.cli import main
from cwkms.cwweights import MODE_STANDARD, solve_2dcw
from cwkms.exact import scalar_to_float
from cwkms.fixtures import FIG_B_SPEC, fig_b_double_amalgam_spec


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture()
def figb_file(tmp_path):
    p = tmp_path / "figB.json"
    p.write_text(json.dumps(FIG_B_SPEC))
    return str(p)


def weight_dict(w, digits=17):
    return {
        "g": {k: f"{scalar_to_float(v):.{digits}g}" for k, v in w.g.items()},
        "lambda_tilde": {k: f"{scalar_to_float(v):.{digits}g}" for k, v in w.lambda_tilde.items()},
        "lambda": {k: f"{scalar_to_float(v):.{digits}g}" for k, v in w.lam.items()},
        "eta": {k: f"{scalar_to_float(v):.{digits}g}" for k, v in w.eta.items()},
        "mode": w.mode,
    }


def test_fixtures_listing(capsys):
    code, out, _ = run(capsys, "fixtures")
    assert code == 0
    names = json.loads(out)
    assert "figB" in names and "gamma-q2" in names


def test_unknown_fixture(capsys):
    code, _, err = run(capsys, "fixtures", "nope")
    assert code == 2 and "unknown fixture" in err


def test_boundary_graph_command(capsys, figb_file):
    code, out, _ = run(capsys, "boundary-graph", figb_file)
    assert code == 0
    data = json.loads(out)
    assert data["vertices"] == ["a", "b", "c", "d", "e", "f"]
    assert len(data["edges"]) == 7


def test_solve_graph_boundary(capsys, figb_file):
    code, out, _ = run(capsys, "solve-graph", "--boundary", figb_file)
    assert code == 0
    data = json.loads(out)
    fam = data["families"][0]
    assert abs(float(fam["eta"]["decimal"]) - 0.8191725133961645) < 1e-12
    assert fam["faithful"] is True


def test_solve_graph_deterministic_output(capsys, figb_file):
    _, out1, _ = run(capsys, "solve-graph", "--boundary", figb_file)
    _, out2, _ = run(capsys, "solve-graph", "--boundary", figb_file)
    assert out1 == out2


def test_solve_cw_modes(capsys, figb_file):
    for mode in ("standard", "tight"):
        code, out, _ = run(capsys, "solve-cw", "--mode", mode, figb_file)
        assert code == 0
        data = json.loads(out)
        assert len(data["families"]) == 1


def test_solve_triangular_via_a2(capsys, tmp_path):
    code, out, _ = run(capsys, "a2", "complex", "gamma-q2")
    assert code == 0
    cpath = tmp_path / "gamma.json"
    cpath.write_text(out)
    code, out, _ = run(capsys, "solve-triangular", str(cpath))
    assert code == 0
    fam = json.loads(out)["families"][0]
    assert fam["eta"]["rational"] == "1/3"
    assert fam["lambda"]["x0"]["rational"] == "1/7"


def test_verify_pass_and_fail(capsys, tmp_path, figb_file, figb):
    w = solve_2dcw(figb, MODE_STANDARD)[0].weight
    good = tmp_path / "w.json"
    good.write_text(json.dumps(weight_dict(w)))
    code, out, _ = run(capsys, "verify", figb_file, str(good))
    assert code == 0
    data = json.loads(out)
    assert data["report"]["passed"] is True

    bad_dict = weight_dict(w)
    bad_dict["g"]["x"] = "99.0"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(bad_dict))
    code, out, _ = run(capsys, "verify", figb_file, str(bad))
    assert code == 1


def test_verify_missing_file(capsys):
    code, _, err = run(capsys, "verify", "/nonexistent/x.json", "/nonexistent/y.json")
    assert code == 2


def test_verify_graph_weight_boundary(capsys, tmp_path, figb_file):
    wdata = {
        "g": {"a": "1", "b": "1", "c": "1", "d": "1", "e": "1", "f": "1"},
        "lambda": {f"s1:{k}": "1" for k in range(4)} | {f"s2:{k}": "1" for k in range(3)},
    }
    wpath = tmp_path / "gw.json"
    wpath.write_text(json.dumps(wdata))
    code, out, _ = run(capsys, "verify", "--boundary", figb_file, str(wpath))
    assert code == 1  # constant 1 is not a boundary weight for figB


def test_kms_check_cli(capsys, tmp_path, figb_file, figb):
    w = solve_2dcw(figb, MODE_STANDARD)[0].weight
    wpath = tmp_path / "w.json"
    wpath.write_text(json.dumps(weight_dict(w)))
    code, out, _ = run(capsys, "kms-check", "--max-path-len", "2", figb_file, str(wpath))
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True
    assert data["skeleton_factor"]["passed"] and data["boundary_factor"]["passed"]


def test_splice_cli(capsys, tmp_path, figb):
    am_path = tmp_path / "amalgam.json"
    am_path.write_text(json.dumps(fig_b_double_amalgam_spec()))
    w = solve_2dcw(figb, MODE_STANDARD)[0].weight
    wd = tmp_path / "weights"
    wd.mkdir()
    for name in ("p1", "p2"):
        (wd / f"{name}.json").write_text(json.dumps(weight_dict(w)))
    code, out, _ = run(capsys, "splice", str(am_path), "--weights", str(wd))
    assert code == 0
    data = json.loads(out)
    assert data["verification"]["passed"] is True
    assert len(data["foundation"]["vertices"]) == 8


def test_a2_sectors(capsys):
    code, out, _ = run(capsys, "a2", "sectors", "gamma-q2", "--matched")
    assert code == 0
    data = json.loads(out)
    assert len(data["plus"]["vertices"]) == 21
    assert len(data["plus"]["edges"]) == 84
    assert data["matched_pairs"][0]["lambda_plus"]["rational"] == "1/4"


def test_a2_lattice_check(capsys):
    code, out, _ = run(capsys, "a2", "lattice-check", "--q", "2", "--bound", "4,4", "--base", "a=1", "--base", "b=3/7")
    assert code == 0
    data = json.loads(out)
    assert data["report"]["passed"] is True


def test_table_format(capsys, figb_file):
    code, out, _ = run(capsys, "--format", "table", "solve-graph", "--boundary", figb_file)
    assert code == 0
    assert "families" in out or "status" in out
    assert not out.strip().startswith("{")


def test_monogon_fixture_solves(capsys, tmp_path):
    code, out, _ = run(capsys, "fixtures", "monogon-triangle")
    assert code == 0
    p = tmp_path / "mono.json"
    p.write_text(out)
    code, out, _ = run(capsys, "solve-triangular", str(p))
    assert code == 0
    fam = json.loads(out)["families"][0]
    assert fam["eta"]["rational"] == "1"
    assert fam["lambda"]["e1"]["rational"] == "1/3"


def test_malformed_json(capsys, tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    code, _, err = run(capsys, "solve-graph", str(p))
    assert code == 2
