import cmath
import json
import math
import os
from pathlib import Path

import pytest

import extlab

CONFIG_DIR = Path(os.environ.get("EXTLAB_CONFIG_DIR", Path(__file__).resolve().parents[2] / "configs"))


def test_catalog_has_anchored_experiments():
    cat = extlab.list_experiments()
    assert len(cat) >= 12
    assert all(e["anchor"] for e in cat)
    assert len({e["id"] for e in cat}) == len(cat)


def test_run_experiment_returns_summary_and_rows():
    res = extlab.run_experiment("classical_moyal", {"pairs": 3}, seed=4)
    assert res["experiment"] == "classical_moyal"
    assert res["verdict"] == "PASS"
    assert res["trials"] == len(res["trial_rows"])
    again = extlab.run_experiment("classical_moyal", {"pairs": 3}, seed=4)
    assert json.dumps(res["trial_rows"]) == json.dumps(again["trial_rows"])


def test_bad_parameters_raise():
    with pytest.raises(extlab.SchemaError):
        extlab.run_experiment("classical_moyal", {"no_such_key": 1})
    with pytest.raises(extlab.SchemaError):
        extlab.run_experiment("not_an_experiment")
    with pytest.raises(ValueError):
        extlab.agmon_hormander_ratio([1.0], "cube", 1.0, 8.0)


def test_torus_completeness_identity():
    weight = [1.0 + 0.5 * math.cos(0.4 * v) for v in range(32)]
    lhs, rhs = extlab.torus_reverse(32, [0, 2, 7, 11], weight, 1.0, 3)
    assert lhs == pytest.approx(rhs, rel=1e-12)
    lhs, rhs = extlab.torus_reverse(32, [0, 2, 7, 11], weight, 0.5, 3)
    assert lhs >= rhs * (1 - 1e-12)


def test_agmon_hormander_ratio_near_one():
    assert extlab.agmon_hormander_ratio([1.0], "gaussian", 1.0, 64.0) == pytest.approx(1.0, abs=0.1)


def test_classical_moyal_gaussian_self_pairing():
    n, side = 128, 8.0
    h = side / n
    u = [2 ** 0.25 * math.exp(-math.pi * (-side / 2 + i * h) ** 2) * cmath.exp(2j * math.pi * 0.5 * (-side / 2 + i * h))
         for i in range(n)]
    phase, product = extlab.classical_moyal(side, u, u, u, u)
    assert abs(phase - product) < 1e-9
    assert product.real == pytest.approx(1.0, abs=1e-9)


def test_xray_norm_over_a_cap():
    full = extlab.xray_l2sq_cap([(1.0, (0, 0, 0), 1.0)], 16, (0, 0, 1), math.pi)
    assert full == pytest.approx(2 * math.pi, rel=1e-10)
    cap = extlab.xray_l2sq_cap([(1.0, (0, 0, 0), 1.0)], 16, (0, 0, 1), 0.5)
    mid = extlab.xray_l2sq_cap([(1.0, (0, 0, 0), 1.0)], 16, (0, 0, 1), 0.5, midpoint=True)
    assert 0 < cap <= mid <= full


def test_run_config_smoke(tmp_path):
    code = extlab.run_config(CONFIG_DIR / "smoke.json", tmp_path)
    assert code == 0
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert [s["verdict"] for s in summary] == ["PASS"] * len(summary)
    assert set(summary[0]) == {"experiment", "trials", "max_ratio", "verdict"}
    header = (tmp_path / "torus_reverse.csv").read_text().splitlines()[0]
    assert header == "experiment,trial,lhs,rhs,ratio,verdict"
