import json
import time

import pytest

from pathlab._io import write_run_record
from pathlab.cli import (DEFAULT_SEED, EXIT_CONFIG, EXIT_INCOMPLETE,
                         EXIT_NUMERIC, EXIT_OK, main)
from pathlab.report import (GRASSMANN_NOTE, REQUIRED, build_report,
                            collect_records)

# summaries that satisfy every acceptance window
_GOOD = {
    "nogo-tv": {"slope": -1.0, "refinement_terminal": 19.999},
    "nogo-bochner": {"gaussian": 1e-7, "fresnel_phase": -2.25,
                     "constant_one": -1e-15},
    "nogo-kernel-fit": {"heat_max_residual": 1e-8,
                        "dirac_min_residual_fine": 0.061},
    "nogo-levy": {"mean_ratio": 1.08, "mean_slope": 0.58},
}


def _write_records(tmp_path, summaries, created=None):
    paths = []
    for i, (exp, summary) in enumerate(summaries.items()):
        rec = {"schema": "pathlab-run/1", "experiment": exp, "seed": 1,
               "params": {}, "summary": summary,
               "created_unix": (created or time.time()) + i}
        p = tmp_path / f"{exp}.run.json"
        write_run_record(p, rec)
        paths.append(str(p))
    return paths


def test_report_all_passing(tmp_path):
    paths = _write_records(tmp_path, _GOOD)
    rep = build_report(paths)
    assert rep.complete
    assert rep.all_passed
    assert all(d.passed for d in rep.diagnostics)
    assert dict(rep.obstructions) == {"minkowski_measure": "PASS",
                                      "nonnegative_kernel": "PASS",
                                      "path_regularity": "PASS"}
    assert rep.grassmann_note == GRASSMANN_NOTE
    text = "\n".join(rep.lines())
    assert "obstruction grassmann: out of numerical scope" in text
    for cat in REQUIRED.values():
        assert cat in text


def test_report_missing_record(tmp_path):
    partial = {k: v for k, v in _GOOD.items() if k != "nogo-levy"}
    rep = build_report(_write_records(tmp_path, partial))
    assert not rep.complete
    assert not rep.all_passed
    missing = [d for d in rep.diagnostics if not d.passed]
    assert len(missing) == 1
    assert missing[0].category == "path_geometry"


def test_report_failing_diagnostic_flows_to_obstruction(tmp_path):
    bad = dict(_GOOD)
    bad["nogo-bochner"] = {**_GOOD["nogo-bochner"], "fresnel_phase": 0.5}
    rep = build_report(_write_records(tmp_path, bad))
    assert rep.complete and not rep.all_passed
    verdicts = dict(rep.obstructions)
    # the joint obstruction needs both diagnostics; TV alone cannot carry it
    assert verdicts["minkowski_measure"] == "FAIL"
    assert verdicts["nonnegative_kernel"] == "PASS"


def test_report_each_window_edge(tmp_path):
    cases = [
        ("nogo-tv", {"slope": -1.0 + 2e-6, "refinement_terminal": 19.999}),
        ("nogo-kernel-fit", {"heat_max_residual": 2e-3,
                             "dirac_min_residual_fine": 0.061}),
        ("nogo-kernel-fit", {"heat_max_residual": 1e-8,
                             "dirac_min_residual_fine": 0.04}),
        ("nogo-levy", {"mean_ratio": 1.3, "mean_slope": 0.58}),
        ("nogo-levy", {"mean_ratio": 1.08, "mean_slope": 0.7}),
    ]
    for exp, summary in cases:
        recs = dict(_GOOD)
        recs[exp] = summary
        rep = build_report(_write_records(tmp_path, recs))
        assert not rep.all_passed, (exp, summary)


def test_report_takes_latest_record(tmp_path):
    old = dict(_GOOD)
    old["nogo-tv"] = {"slope": 0.0, "refinement_terminal": 1.0}
    paths = _write_records(tmp_path, old, created=1000.0)
    # newer records in a second directory win on created_unix
    newer = tmp_path / "newer"
    newer.mkdir()
    paths += _write_records(newer, _GOOD, created=2000.0)
    rep = build_report(paths)
    assert rep.all_passed


def test_collect_records_sorted(tmp_path):
    names = ["b.run.json", "a.run.json", "c.run.json"]
    for n in names:
        write_run_record(tmp_path / n, {"experiment": "x"})
    got = collect_records(str(tmp_path / "*.run.json"))
    assert got == sorted(got)
    assert len(got) == 3


def test_cli_experiment_roundtrip(tmp_path):
    cfg = tmp_path / "heat.json"
    cfg.write_text(json.dumps({
        "experiment": "heat", "seed": 7,
        "params": {"n_paths": 2000, "n_steps": 4, "probes": [0.0, 0.4]},
    }))
    out = tmp_path / "out"
    code = main(["heat", "--config", str(cfg), "--out", str(out)])
    assert code == EXIT_OK
    csv_path = out / "heat.csv"
    rec_path = out / "heat.run.json"
    assert csv_path.exists() and rec_path.exists()
    rec = json.loads(rec_path.read_text())
    assert rec["experiment"] == "heat"
    assert rec["seed"] == 7
    assert rec["params"]["n_paths"] == 2000

    # identical reruns rewrite the CSV byte for byte
    first = csv_path.read_bytes()
    assert main(["heat", "--config", str(cfg), "--out", str(out)]) == EXIT_OK
    assert csv_path.read_bytes() == first


def test_cli_seed_flag_overrides_config(tmp_path):
    cfg = tmp_path / "heat.json"
    cfg.write_text(json.dumps({
        "experiment": "heat", "seed": 7,
        "params": {"n_paths": 2000, "n_steps": 4, "probes": [0.0]},
    }))
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert main(["heat", "--config", str(cfg), "--out", str(out_a)]) == EXIT_OK
    assert main(["heat", "--config", str(cfg), "--seed", "8",
                 "--out", str(out_b)]) == EXIT_OK
    rec_b = json.loads((out_b / "heat.run.json").read_text())
    assert rec_b["seed"] == 8
    assert ((out_a / "heat.csv").read_bytes()
            != (out_b / "heat.csv").read_bytes())


def test_cli_no_config_uses_default_seed(tmp_path):
    out = tmp_path / "out"
    code = main(["nogo-bochner", "--out", str(out)])
    assert code == EXIT_OK
    rec = json.loads((out / "nogo-bochner.run.json").read_text())
    assert rec["seed"] == DEFAULT_SEED


def test_cli_config_experiment_mismatch(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"experiment": "kg", "params": {}}))
    assert main(["heat", "--config", str(cfg)]) == EXIT_CONFIG
    assert "kg" in capsys.readouterr().err


def test_cli_unknown_config_key_named(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"experiment": "heat", "workers": 4}))
    assert main(["heat", "--config", str(cfg)]) == EXIT_CONFIG
    assert "workers" in capsys.readouterr().err


def test_cli_unknown_param_key_named(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"experiment": "heat",
                               "params": {"n_pathz": 10}}))
    assert main(["heat", "--config", str(cfg)]) == EXIT_CONFIG
    assert "n_pathz" in capsys.readouterr().err


def test_cli_malformed_json(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text("{not json")
    assert main(["heat", "--config", str(cfg)]) == EXIT_CONFIG
    assert "JSON" in capsys.readouterr().err


def test_cli_missing_config_file(tmp_path):
    assert main(["heat", "--config", str(tmp_path / "nope.json")]) == EXIT_CONFIG


def test_cli_numeric_failure_exit(tmp_path, capsys):
    # overflowing exponential weights must surface as the numeric exit
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({
        "experiment": "heat",
        "params": {"v0": -3000.0, "n_paths": 200, "n_steps": 4,
                   "probes": [0.0]},
    }))
    assert main(["heat", "--config", str(cfg),
                 "--out", str(tmp_path)]) == EXIT_NUMERIC
    assert "numeric failure" in capsys.readouterr().err


def test_cli_report_roundtrip(tmp_path, capsys):
    _write_records(tmp_path, _GOOD)
    out = tmp_path / "rep"
    code = main(["report", "--records", str(tmp_path / "*.run.json"),
                 "--out", str(out)])
    assert code == EXIT_OK
    text = capsys.readouterr().out
    assert "[PASS] oscillatory_tv" in text
    assert "obstruction grassmann: out of numerical scope" in text

    payload = json.loads((out / "nogo_report.json").read_text())
    assert payload["all_passed"] is True
    assert payload["complete"] is True

    # the report is a pure function of the records: byte-identical rerun
    first = (out / "nogo_report.json").read_bytes()
    assert main(["report", "--records", str(tmp_path / "*.run.json"),
                 "--out", str(out)]) == EXIT_OK
    assert (out / "nogo_report.json").read_bytes() == first


def test_cli_report_incomplete(tmp_path, capsys):
    partial = {k: v for k, v in _GOOD.items() if k != "nogo-kernel-fit"}
    _write_records(tmp_path, partial)
    code = main(["report", "--records", str(tmp_path / "*.run.json")])
    assert code == EXIT_INCOMPLETE
    assert "missing" in capsys.readouterr().err


def test_cli_report_empty_glob(tmp_path):
    code = main(["report", "--records", str(tmp_path / "*.run.json")])
    assert code == EXIT_INCOMPLETE


def test_cli_report_complete_but_failing(tmp_path):
    bad = dict(_GOOD)
    bad["nogo-levy"] = {"mean_ratio": 2.0, "mean_slope": 0.58}
    _write_records(tmp_path, bad)
    code = main(["report", "--records", str(tmp_path / "*.run.json")])
    assert code == EXIT_NUMERIC
