"""Command-line front end: config validation, suites, artifacts, exit codes."""

import csv
import json

import pytest

from biaxpot.cli import main
from biaxpot.errors import SolveError


def run(tmp_path, config: dict | None, *argv: str) -> int:
    args = []
    if config is not None:
        path = tmp_path / "config.json"
        path.write_text(json.dumps(config), encoding="utf-8")
        args += ["--config", str(path)]
    args += ["--out", str(tmp_path / "out")]
    return main(args + list(argv))


def read_csv(tmp_path, name: str):
    with open(tmp_path / "out" / name, encoding="utf-8", newline="") as f:
        rows = list(csv.reader(f))
    return rows[0], rows[1:]


def read_summary(tmp_path) -> dict:
    with open(tmp_path / "out" / "summary.json", encoding="utf-8") as f:
        return json.load(f)


# -- eval-q4 ----------------------------------------------------------------------

def test_eval_q4_default_run(tmp_path):
    assert run(tmp_path, None, "eval-q4") == 0
    header, rows = read_csv(tmp_path, "eval_q4.csv")
    assert header == ["x", "y", "x0", "y0", "q4", "grad_norm"]
    assert len(rows) == 4
    # the stock pairs carry a swapped duplicate and an on-axis probe
    assert rows[0][4] == rows[1][4]
    axis = next(r for r in rows if float(r[0]) == 0.0)
    assert float(axis[4]) == 0.0
    assert axis[5] == "inf"
    summary = read_summary(tmp_path)
    assert summary["command"] == "eval-q4"
    assert summary["status"] == "pass"


def test_eval_q4_rejects_alpha_out_of_range(tmp_path):
    assert run(tmp_path, {"params": {"alpha": 0.7}}, "eval-q4") == 2


def test_eval_q4_rejects_axis_source(tmp_path):
    cfg = {"pairs": [[0.5, 0.5, 0.0, 0.7]]}
    assert run(tmp_path, cfg, "eval-q4") == 2


def test_eval_q4_rejects_coincident_pair(tmp_path):
    cfg = {"pairs": [[0.5, 0.5, 0.5, 0.5]]}
    assert run(tmp_path, cfg, "eval-q4") == 2


def test_eval_q4_near_coincident_is_infrastructure_failure(tmp_path):
    cfg = {"pairs": [[0.5, 0.5, 0.5, 0.500000001]]}
    assert run(tmp_path, cfg, "eval-q4") == 3


# -- config validation ------------------------------------------------------------

def test_config_must_be_json(tmp_path):
    path = tmp_path / "config.json"
    path.write_text("not json", encoding="utf-8")
    assert main(["--config", str(path), "--out", str(tmp_path / "out"),
                 "eval-q4"]) == 2


def test_config_must_be_object(tmp_path):
    path = tmp_path / "config.json"
    path.write_text("[1, 2]", encoding="utf-8")
    assert main(["--config", str(path), "--out", str(tmp_path / "out"),
                 "eval-q4"]) == 2


def test_config_missing_file(tmp_path):
    assert main(["--config", str(tmp_path / "nope.json"),
                 "--out", str(tmp_path / "out"), "eval-q4"]) == 2


def test_config_rejects_bad_fields(tmp_path):
    assert run(tmp_path, {"nodes": 7}, "solve-dirichlet") == 2
    assert run(tmp_path, {"tolerance": 2.0}, "solve-dirichlet") == 2
    assert run(tmp_path, {"domain": {"curve": "circle"}}, "eval-q4") == 2
    assert run(tmp_path, {"domain": {"exponent": 1.5}}, "eval-q4") == 2
    assert run(tmp_path, {"pairs": [[1.0, 2.0]]}, "eval-q4") == 2
    assert run(tmp_path, {"nodes": "many"}, "eval-q4") == 2


def test_unknown_suite_is_a_usage_error(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["--out", str(tmp_path / "out"), "verify", "everything"])
    assert exc.value.code == 2


# -- verify suites ----------------------------------------------------------------

def test_verify_specfun(tmp_path):
    assert run(tmp_path, {"cases": 40}, "verify", "specfun") == 0
    summary = read_summary(tmp_path)
    assert summary["status"] == "pass"
    names = [c["name"] for c in summary["checks"]]
    assert len(names) == 4
    for c in summary["checks"]:
        assert c["residual"] <= c["tolerance"]
    header, rows = read_csv(tmp_path, "verify_specfun.csv")
    assert header == ["identity", "case", "rel_err"]
    assert len(rows) == 160


def test_verify_flux(tmp_path):
    assert run(tmp_path, None, "verify", "flux") == 0
    summary = read_summary(tmp_path)
    assert summary["counts"]["fail"] == 0
    assert summary["counts"]["pass"] == 5


def test_verify_gradient(tmp_path):
    assert run(tmp_path, {"gradient_pairs": 20}, "verify", "gradient") == 0
    summary = read_summary(tmp_path)
    assert summary["status"] == "pass"


def test_verify_gauge(tmp_path):
    cfg = {"interior_points": 1, "oncurve_points": 1, "exterior_points": 1}
    assert run(tmp_path, cfg, "verify", "gauge") == 0
    summary = read_summary(tmp_path)
    kinds = sorted(c["name"].split()[1] for c in summary["checks"])
    assert kinds == ["inside", "on", "outside"]


def test_verify_jumps(tmp_path):
    assert run(tmp_path, {"arclengths": 2}, "verify", "jumps") == 0
    summary = read_summary(tmp_path)
    assert summary["counts"]["pass"] == 3


# -- solve-dirichlet --------------------------------------------------------------

def test_solve_zero_data(tmp_path):
    cfg = {"data": "zero", "nodes": 32}
    assert run(tmp_path, cfg, "solve-dirichlet") == 0
    summary = read_summary(tmp_path)
    vanish = next(c for c in summary["checks"]
                  if c["name"] == "density vanishes")
    assert vanish["status"] == "pass"
    _, rows = read_csv(tmp_path, "density.csv")
    assert len(rows) == 32
    assert all(abs(float(r[1])) <= 1.0e-10 for r in rows)


def test_solve_manufactured(tmp_path):
    assert run(tmp_path, {"nodes": 64}, "solve-dirichlet") == 0
    summary = read_summary(tmp_path)
    assert summary["max_probe_error"] <= 1.0e-4
    assert summary["condition_estimate"] < 1.0e3
    _, rows = read_csv(tmp_path, "probes.csv")
    assert len(rows) == 3
    assert all(float(r[4]) <= 1.0e-4 for r in rows)


def test_solve_convergence_study(tmp_path):
    cfg = {"nodes": 32, "study_ns": [16, 32],
           "probes": [[0.3, 0.3], [0.5, 0.2]]}
    assert run(tmp_path, cfg, "solve-dirichlet") == 0
    summary = read_summary(tmp_path)
    assert summary["convergence_order"] >= 2.0
    _, rows = read_csv(tmp_path, "study.csv")
    assert [int(r[0]) for r in rows] == [16, 32]
    assert float(rows[1][1]) <= float(rows[0][1]) / 3.0


def test_solve_reports_solver_failure(tmp_path, monkeypatch):
    def boom(sys, rhs=None):
        raise SolveError("synthetic failure")

    monkeypatch.setattr("biaxpot.cli.solve_dirichlet", boom)
    cfg = {"data": "zero", "nodes": 16}
    assert run(tmp_path, cfg, "solve-dirichlet") == 1
    summary = read_summary(tmp_path)
    assert summary["status"] == "fail"
    assert "condition_estimate" in summary
    assert "synthetic failure" in summary["error"]


# -- determinism ------------------------------------------------------------------

def test_identical_configs_reproduce_bitwise(tmp_path):
    cfg = {"cases": 20, "seed": 3}
    pairs = []
    for sub in ("one", "two"):
        base = tmp_path / sub
        base.mkdir()
        assert run(base, cfg, "verify", "specfun") == 0
        assert run(base, None, "eval-q4") == 0  # overwrites summary only
        pairs.append(base / "out")
    for name in ("verify_specfun.csv", "eval_q4.csv", "summary.json"):
        a = (pairs[0] / name).read_bytes()
        b = (pairs[1] / name).read_bytes()
        assert a == b


def test_seed_flag_changes_draws_without_breaking(tmp_path):
    assert run(tmp_path, {"gradient_pairs": 10}, "--seed", "5",
               "verify", "gradient") == 0
