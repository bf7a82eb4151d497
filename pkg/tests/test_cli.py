from __future__ import annotations

import csv
import io
import json

import pytest

from quantgames import __version__
from quantgames.cli import EXIT_CONFIG, EXIT_OK, EXIT_RANK, SWEEP_HEADER, main, parse_range, run


def write(tmp_path, cfg, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(cfg))
    return str(p)


def report(argv):
    code, text = run(argv)
    assert code == EXIT_OK, text
    return json.loads(text)


def test_play_classical_pair(tmp_path):
    cfg = {
        "n": 3,
        "payoff_a": [[1, 2, 3], [4, 5, 6], [7, 8, 9]],
        "entangler": {"n3": {"tau": "2*pi/3", "rho": 0.3, "sigma": "pi/5"}},
        "strategies": {"alice": {"classical": 2}, "bob": {"classical": 3}},
    }
    out = report(["play", "--config", write(tmp_path, cfg)])
    assert out["probabilities"][1][2] == pytest.approx(1, abs=1e-12)
    assert out["payoff_alice"] == pytest.approx(6)
    assert out["payoff_bob"] == pytest.approx(8)
    assert out["version"] == __version__
    assert "tolerances" in out


def test_play_other_strategy_forms(tmp_path):
    cfg = {
        "payoff_a": [[3, 0], [5, 1]],
        "entangler": {"elw2": {"gamma": "pi/2"}},
        "strategies": {"alice": {"euler": ["pi", 0, 0]}, "bob": {"matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}},
    }
    out = report(["play", "--config", write(tmp_path, cfg)])
    assert sum(map(sum, out["probabilities"])) == pytest.approx(1)
    cfg["strategies"]["bob"] = {"random": True}
    a = run(["play", "--config", write(tmp_path, cfg), "--seed", "7"])
    b = run(["play", "--config", write(tmp_path, cfg), "--seed", "7"])
    c = run(["play", "--config", write(tmp_path, cfg), "--seed", "8"])
    assert a == b and a != c


def test_catalog():
    out = report(["catalog"])
    assert out["counts"] == {"maximal": 48, "degenerate": 7}
    assert all(e["classification"] == "Maximal" for e in out["maximal"])
    assert all(e["classification"] == "DoublyDegenerate" for e in out["degenerate"])
    assert {"tau": "0", "rho": "2*pi/3", "sigma": "0"}.items() <= next(
        e for e in out["maximal"] if e["rho"] == "2*pi/3" and e["tau"] == "0" and e["sigma"] == "0"
    ).items()
    assert report(["catalog", "--complete"])["counts"]["maximal"] == 54


def test_mixed_check(tmp_path):
    out = report(["mixed-check", "--config", write(tmp_path, {"probabilities": ["1/18", "5/9", "7/18"]})])
    assert out["feasible"] is False
    assert out["cos_delta"] == pytest.approx(-1.12041, abs=1e-4)


def test_entanglement_and_entangler(tmp_path):
    path = write(tmp_path, {"entangler": {"n3": {"tau": 0, "rho": "pi/3", "sigma": 0}}})
    out = report(["entanglement", "--config", path])
    assert out["classification"] == "DoublyDegenerate"
    assert out["double_root_condition"] is True
    assert out["spectrum"] == pytest.approx([1 / 9, 1 / 9, 7 / 9], abs=1e-12)
    ent = report(["entangler", "--config", path])
    assert ent["faithfulness"]["basis_map_ok"] is True
    assert ent["entangler"]["free_parameter_count"] == 3


def test_cartan_entangler_config(tmp_path):
    cfg = {"n": 4, "entangler": {"cartan": {"lambda": [0.1, 0.2, 0.3], "mu": [[0, 1, 0], [1, 0, 0.5], [0, 0.5, 0]]}}}
    out = report(["entangler", "--config", write(tmp_path, cfg)])
    assert out["entangler"]["free_parameter_count"] == 6
    assert out["faithfulness"]["max_commutator"] < 1e-12


def test_stability(tmp_path):
    path = write(tmp_path, {"entangler": {"n3": {"tau": 0, "rho": "2*pi/3", "sigma": 0}}})
    out = report(["stability", "--config", path])
    assert out["dimension"] == 8 and out["effective_manifold_dim"] == 8
    assert sorted(g["parity"] for g in out["generators"]) == ["minus"] * 5 + ["plus"] * 3


def test_stability_ambiguous_exit_code(tmp_path):
    path = write(tmp_path, {"entangler": {"n3": {"tau": 0, "rho": 1.0471975541965976, "sigma": 0}}})
    code, text = run(["stability", "--config", path])
    assert code == EXIT_RANK and text == ""


def test_nash_scan(tmp_path):
    cfg = {"payoff_a": [[3, 0], [5, 1]], "entangler": {"elw2": {"gamma": "pi/2"}}, "grid": {"resolution": 12, "epsilon": 0.05}}
    out = report(["nash-scan", "--config", write(tmp_path, cfg)])
    assert out["count"] == 0
    assert out["grid"]["points_per_player"] == 1872
    cfg["entangler"]["elw2"]["gamma"] = 0
    cfg["grid"] = {"resolution": 4, "epsilon": 1e-6, "report_limit": 2}
    out = report(["nash-scan", "--config", write(tmp_path, cfg)])
    assert out["count"] > 0 and len(out["equilibria"]) == 2 and out["truncated"]


def test_sweep_csv(tmp_path):
    code, text = run(["sweep", "--param", "rho", "--range", "0:pi:pi/6", "--format", "csv"])
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == SWEEP_HEADER
    assert len(rows) == 7
    by_rho = {round(float(r[1]), 6): r for r in rows[1:]}
    assert by_rho[round(3.14159265 / 3, 6)][6:] == ["DoublyDegenerate", "4"]
    assert by_rho[round(2 * 3.14159265 / 3, 6)][6:] == ["Maximal", "8"]


def test_sweep_report_from_config(tmp_path):
    cfg = {"entangler": {"n3": {"tau": 0, "rho": 0, "sigma": 0}}, "sweep": {"param": "tau", "range": "0:pi:pi/2"}}
    out = report(["sweep", "--config", write(tmp_path, cfg)])
    assert [r[-2] for r in out["rows"]] == ["Pure", "DoublyDegenerate"]


def test_parse_range():
    assert len(parse_range("0:2*pi:pi/9")) == 18
    assert parse_range("0:1:0.25") == [0, 0.25, 0.5, 0.75]


@pytest.mark.parametrize(
    "cfg",
    [
        {"bogus": 1},
        {"entangler": {"n3": {"tau": 0, "rho": 0}}},
        {"entangler": {"n3": {"tau": 0, "rho": 0, "sigma": 0}, "elw2": {"gamma": 1}}},
        {"seed": -1},
        {"grid": {"resolution": 1}},
    ],
)
def test_invalid_config_exit_code(tmp_path, cfg):
    code, _ = run(["entangler", "--config", write(tmp_path, cfg)])
    assert code == EXIT_CONFIG


def test_missing_fields_and_bad_json(tmp_path):
    assert run(["play", "--config", write(tmp_path, {"n": 2})])[0] == EXIT_CONFIG
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["catalog", "--config", str(bad)])[0] == EXIT_CONFIG
    assert run(["sweep"])[0] == EXIT_CONFIG
    assert run(["catalog", "--format", "csv"])[0] == EXIT_CONFIG


def test_byte_identical_output(tmp_path):
    path = write(tmp_path, {"entangler": {"n3": {"tau": 0.4, "rho": 1.2, "sigma": 2.2}}})
    assert run(["stability", "--config", path]) == run(["stability", "--config", path])


def test_main_writes_out_file(tmp_path):
    out = tmp_path / "r.json"
    assert main(["catalog", "--out", str(out)]) == EXIT_OK
    assert json.loads(out.read_text())["counts"]["maximal"] == 48
