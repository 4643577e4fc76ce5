import json

import numpy as np
import pytest

from hua_kernels.harness import config as C
from hua_kernels.report import CheckRecord, Report, digest, reports_to_csv, reports_to_json


def _report():
    r = Report("demo", seed=3)
    r.add("small", 1e-12, 1e-10, inputs=(np.arange(3),))
    r.add("growth", 12.0, 10.0, relation=">=")
    r.add("note", float("nan"), 0.0, relation="info", value=1 + 2j)
    return r


def test_check_relations():
    assert CheckRecord("a", 1.0, 1.0).passed
    assert not CheckRecord("a", 1.1, 1.0).passed
    assert CheckRecord("a", 1.1, 1.0, ">=").passed
    assert not CheckRecord("a", float("nan"), 1.0).passed
    assert CheckRecord("a", float("nan"), 1.0, "info").passed
    with pytest.raises(ValueError):
        _ = CheckRecord("a", 1.0, 1.0, "<").passed


def test_report_pass_logic():
    r = _report()
    assert r.passed and r.max_residual() == 1e-12
    assert not Report("empty").passed
    r.error = "boom"
    assert not r.passed


def test_json_is_deterministic_and_plain():
    a, b = reports_to_json([_report()], {"seed": 3}), reports_to_json([_report()], {"seed": 3})
    assert a == b
    data = json.loads(a)
    note = data["reports"][0]["checks"][2]
    assert note["residual"] == "nan" and note["detail"]["value"] == {"re": 1.0, "im": 2.0}
    assert "wall_time" not in data["reports"][0]["checks"][0]
    assert "wall_time" in json.loads(reports_to_json([_report()], timings=True))["reports"][0]["checks"][0]


def test_csv_projection():
    r = _report()
    bad = Report("broken", error="ValueError: x")
    lines = reports_to_csv([r, bad]).splitlines()
    assert lines[0] == "suite,check,residual,relation,tolerance,passed,wall_time"
    assert len(lines) == 1 + 3 + 1 and lines[-1].startswith("broken,<error>")


def test_digest_is_stable():
    assert digest(np.array([0.1, 0.2])) == digest(np.array([0.1, 0.2]))
    assert digest(np.array([0.1, 0.2])) != digest(np.array([0.1, 0.2 + 1e-16]))


def test_default_config_validates():
    cfg = C.load_config()
    assert cfg["seed"] == 0 and "mass_bounds" in cfg["suites"]


def test_merge_is_recursive():
    out = C.merge({"a": {"b": 1, "c": 2}, "d": 1}, {"a": {"b": 5}})
    assert out == {"a": {"b": 5, "c": 2}, "d": 1}


def test_file_and_seed_override(tmp_path, monkeypatch):
    monkeypatch.delenv(C.ENV_VAR, raising=False)
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"seed": 7, "suites": {"psh": {"probes": 5}}}))
    cfg = C.load_config(p)
    assert cfg["seed"] == 7 and cfg["suites"]["psh"]["probes"] == 5 and cfg["suites"]["psh"]["r"] == 0.05
    assert C.load_config(p, seed=11)["seed"] == 11


def test_env_var_wins(tmp_path, monkeypatch):
    p = tmp_path / "env.json"
    p.write_text(json.dumps({"seed": 99}))
    monkeypatch.setenv(C.ENV_VAR, str(p))
    assert C.load_config(tmp_path / "missing.json")["seed"] == 99


@pytest.mark.parametrize(
    "override",
    [
        {"seed": -1},
        {"seed": "1"},
        {"suites": {"psh": {"probes": 0}}},
        {"suites": {"psh": {"r": "x"}}},
        {"suites": {"normalization": {"radii": [-0.1]}}},
        {"quadrature": {"disc": {"radial_order": 0}}},
        {"suites": {"psh": []}},
    ],
)
def test_validation_rejects(override, tmp_path, monkeypatch):
    monkeypatch.delenv(C.ENV_VAR, raising=False)
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(override))
    with pytest.raises(C.ConfigError):
        C.load_config(p)


def test_unreadable_config(tmp_path, monkeypatch):
    monkeypatch.delenv(C.ENV_VAR, raising=False)
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(C.ConfigError):
        C.load_config(p)
    p.write_text("[1, 2]")
    with pytest.raises(C.ConfigError):
        C.load_config(p)
