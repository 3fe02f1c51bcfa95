"""Command-line runner: presets, scenario files, reports, exit codes."""

import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from gaborop.cli import main
from gaborop.presets import PRESETS, build_preset, list_presets
from gaborop.scenario import (
    REPORT_SCHEMA,
    SCENARIO_SCHEMA,
    ScenarioError,
    load_scenario,
    run_scenario,
)

REQUIRED_PRESETS = {
    "exb1", "remark-theta0", "exper1-negative", "pertexa",
    "sumexa", "ex2-negative", "thm2-tight", "ex-after-thm2",
}


def test_preset_registry_contents():
    names = {name for name, _ in list_presets()}
    assert REQUIRED_PRESETS <= names
    assert len(names) >= 8
    for name, description in list_presets():
        assert description


def test_list_presets_output(capsys):
    assert main(["--list-presets"]) == 0
    out = capsys.readouterr().out
    assert "exb1" in out and "sumexa" in out


def test_run_preset_exb1(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["--preset", "exb1", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["results"]["phi1-system"]["alpha_opt"] == pytest.approx(8.0, abs=1e-9)
    assert report["results"]["phi2-system"]["alpha_opt"] == pytest.approx(2.0, abs=1e-9)
    assert report["results"]["phi1-system"]["tight"]
    assert report["provenance"]["preset"] == "exb1"


def test_run_preset_pertexa(tmp_path):
    out = tmp_path / "report.json"
    assert main(["--preset", "pertexa", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    pred = report["results"]["prediction"]
    assert pred["predicted_lower"] == pytest.approx(0.25, abs=1e-9)
    assert pred["predicted_upper"] == pytest.approx(22.0, abs=1e-9)
    assert pred["lower_valid"] and pred["upper_valid"]
    assert report["results"]["hypothesis"]["holds"]
    assert report["provenance"]["bounds_source"] == "computed"


def test_malformed_json_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["--scenario", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "scenario error" in err


def test_schema_violation_lists_field_paths(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "task": "no_such_task",
        "group": {"factors": [8]},
        "systems": [],
    }))
    assert main(["--scenario", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "$.task" in err


def test_scenario_error_collects_all_paths(tmp_path):
    raw = {
        "task": "theta_bounds",
        "group": {"factors": [0]},
        "systems": [{"name": "x", "n": 0, "windows": []}],
    }
    path = tmp_path / "s.json"
    path.write_text(json.dumps(raw))
    with pytest.raises(ScenarioError) as exc:
        load_scenario(path)
    joined = " ".join(exc.value.problems)
    assert "factors" in joined
    assert ".n" in joined


def test_report_determinism():
    for name in PRESETS:
        rep1 = run_scenario(build_preset(name))
        rep2 = run_scenario(build_preset(name))
        rep1.pop("timing_seconds")
        rep2.pop("timing_seconds")
        assert json.dumps(rep1, sort_keys=True) == json.dumps(rep2, sort_keys=True)


def test_strict_mode_flags_hypothesis_findings(tmp_path, capsys):
    # a tight construction driven by a non-hyponormal control operator must
    # surface findings and fail under --strict
    scenario = build_preset("thm2-tight")
    scenario["operators"] = [
        {"name": "control", "kind": "entry_map", "n": 2,
         "matrix": [[0, 0, 0, 2], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]}
    ]
    path = tmp_path / "bad_construct.json"
    path.write_text(json.dumps(scenario))
    assert main(["--scenario", str(path)]) == 0
    capsys.readouterr()
    assert main(["--scenario", str(path), "--strict"]) == 3
    err = capsys.readouterr().err
    assert "finding" in err and "hyponormal" in err


def test_spectra_csv(tmp_path):
    out = tmp_path / "report.json"
    spectra = tmp_path / "spectra.csv"
    assert main(["--preset", "exb1", "--out", str(out), "--spectra", str(spectra)]) == 0
    written = sorted(tmp_path.glob("spectra_*.csv"))
    assert len(written) == 2  # one per system
    lines = written[0].read_text().strip().splitlines()
    assert lines[0] == "index,eigenvalue"
    values = [float(line.split(",")[1]) for line in lines[1:]]
    assert values == sorted(values)
    report = json.loads(out.read_text())
    assert report["provenance"]["spectra_files"]
    # each bounds report records the file it was dumped to
    assert report["results"]["phi1-system"]["spectrum_file"].endswith(".csv")


def test_compact_preset_scenario_form(tmp_path):
    path = tmp_path / "compact.json"
    path.write_text(json.dumps({
        "source": "pertexa",
        "lambda": 0.0,
        "mu": 0.2,
        "eta": 0.2,
        "use_paper_bounds": True,
    }))
    scenario = load_scenario(path)
    report = run_scenario(scenario, base_dir=tmp_path)
    assert report["provenance"]["bounds_source"] == "paper_pinned"
    assert report["results"]["prediction"]["predicted_lower"] == pytest.approx(0.25)


def test_dense_operator_from_file(tmp_path):
    # a dense operator file reproducing the entry map gives the same report
    scenario = build_preset("exper1-negative")
    n_points = scenario["group"]["factors"][0]
    L = np.diag([1.0, 0.0, 0.0, 0.0]).astype(np.complex128)
    dense = np.kron(np.eye(n_points), L)
    dense.astype("<c16").tofile(tmp_path / "op.bin")
    scenario["operators"] = [
        {"name": "projector", "kind": "dense", "n": 2, "data_file": "op.bin"}
    ]
    path = tmp_path / "dense.json"
    path.write_text(json.dumps(scenario))
    loaded = load_scenario(path)
    report = run_scenario(loaded, base_dir=tmp_path)
    assert not report["results"]["controlled"]["upper_exists"]
    reference = run_scenario(build_preset("exper1-negative"))
    assert report["results"]["controlled"]["lower_exists"] == \
        reference["results"]["controlled"]["lower_exists"]


def test_values_window_scenario(tmp_path):
    # explicit [re, im] value lists reproduce the tight delta-window system
    values = [[0.0, 0.0]] * 8
    values[0] = [np.sqrt(8.0), 0.0]
    scenario = {
        "task": "ordinary_bounds",
        "group": {"factors": [8], "weight_convention": "torus_like"},
        "systems": [{
            "name": "deltas", "n": 1,
            "lattice": "full",
            "dual_lattice": {"gens": []},
            "windows": [{"window": "values", "values": values}],
        }],
        "args": {},
    }
    path = tmp_path / "values.json"
    path.write_text(json.dumps(scenario))
    report = run_scenario(load_scenario(path), base_dir=tmp_path)
    rep = report["results"]["deltas"]
    assert rep["tight"]
    assert rep["alpha_opt"] == pytest.approx(1.0, abs=1e-9)


def test_env_tolerance_override(tmp_path, monkeypatch, capsys):
    out = tmp_path / "report.json"
    monkeypatch.setenv("GOF_DEFAULT_TOL", "1e-7")
    assert main(["--preset", "exb1", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["tolerance"] == 1e-7
    monkeypatch.setenv("GOF_DEFAULT_TOL", "bogus")
    assert main(["--preset", "exb1", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["tolerance"] == 1e-9
    assert "ignoring" in capsys.readouterr().err
    # the --tol flag wins over the environment
    monkeypatch.setenv("GOF_DEFAULT_TOL", "1e-7")
    assert main(["--preset", "exb1", "--out", str(out), "--tol", "1e-6"]) == 0
    assert json.loads(out.read_text())["tolerance"] == 1e-6


def test_schema_files_match_embedded():
    root = Path(__file__).resolve().parents[1]
    on_disk = json.loads((root / "schemas" / "scenario.schema.json").read_text())
    assert on_disk == SCENARIO_SCHEMA
    on_disk = json.loads((root / "schemas" / "report.schema.json").read_text())
    assert on_disk == REPORT_SCHEMA


def test_all_presets_validate_and_run():
    reports = {}
    for name in PRESETS:
        scenario = build_preset(name)
        report = run_scenario(scenario)
        assert report["findings"] == []
        assert report["task"] == scenario["task"]
        reports[name] = report["results"]

    approx9 = lambda v: pytest.approx(v, abs=1e-9)
    r = reports["exb1"]
    assert r["phi1-system"]["alpha_opt"] == approx9(8.0)
    assert r["phi2-system"]["alpha_opt"] == approx9(2.0)
    r = reports["remark-theta0"]
    assert not r["ordinary"]["lower_exists"]
    assert r["controlled"]["alpha_opt"] == approx9(20.0)
    assert r["controlled"]["beta_opt"] == approx9(20.0)
    r = reports["exper1-negative"]
    assert r["ordinary"]["alpha_opt"] == approx9(10.0)
    assert not r["controlled"]["upper_exists"]
    r = reports["pertexa"]
    assert r["prediction"]["predicted_lower"] == approx9(0.25)
    assert r["prediction"]["predicted_upper"] == approx9(22.0)
    assert r["prediction"]["lower_valid"] and r["prediction"]["upper_valid"]
    r = reports["sumexa"]
    assert r["hypothesis"]["condition_lhs"] == pytest.approx(2.5, abs=1e-8)
    assert r["hypothesis"]["condition_rhs"] == pytest.approx(2.0, abs=1e-12)
    assert r["prediction"]["predicted_upper"] == pytest.approx(20.8, abs=1e-6)
    r = reports["ex2-negative"]
    assert not r["hypotheses"]["commutation"]
    assert not r["image_report"]["upper_exists"]
    r = reports["prop1a-image"]
    assert r["image_report"]["alpha_opt"] == pytest.approx(10.0, abs=1e-8)
    assert r["image_report"]["beta_opt"] == pytest.approx(10.0, abs=1e-8)
    r = reports["thm2-tight"]
    assert r["diagonal_report"]["alpha_opt"] == approx9(1.0)
    r = reports["ex-after-thm2"]
    assert r["image_report"]["alpha_opt"] == approx9(3.0)
    assert r["image_report"]["beta_opt"] == approx9(3.0)
    r = reports["omega-check"]
    assert r["omega"]["alpha"] == approx9(2.5)
    assert r["omega"]["beta"] == approx9(10.0)
    assert r["verdicts_agree"]


def test_multiple_scenarios_to_directory(tmp_path):
    outdir = tmp_path / "reports"
    assert main([
        "--preset", "exb1", "--preset", "remark-theta0",
        "--out", str(outdir), "--jobs", "2",
    ]) == 0
    assert (outdir / "exb1.json").exists()
    assert (outdir / "remark-theta0.json").exists()


def test_console_entry_point(tmp_path):
    result = subprocess.run(
        [sys.executable, "-m", "gaborop.cli", "--list-presets"],
        capture_output=True, text=True,
    )
    assert result.returncode == 0
    assert "exb1" in result.stdout


def test_unknown_preset_exits_2(capsys):
    assert main(["--preset", "definitely-not-a-preset"]) == 2
    assert "unknown preset" in capsys.readouterr().err


def test_no_arguments_exits_2(capsys):
    assert main([]) == 2
