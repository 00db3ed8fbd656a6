import csv
import json

import pytest

from jcmix.errors import ConfigError
from jcmix.harness import PRESETS, ScenarioConfig, load_config, preset, run_scenario


def _read(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_all_presets_valid():
    assert sorted(PRESETS, key=lambda s: int(s[3:])) == [f"fig{i}" for i in range(1, 18)]
    for name in PRESETS:
        for cfg in preset(name):
            cfg.validate()


def test_fig2_pcd_and_qweight(tmp_path):
    (cfg,) = preset("fig2", output_dir=str(tmp_path))
    summary = run_scenario(cfg)
    pcds = sorted(tmp_path.glob("pcd_mscs_nc20_ns*.csv"))
    assert len(pcds) == 6
    rows = _read(tmp_path / "qweight_mscs_nc20.csv")
    assert rows[0] == ["n_s", "q"]
    qs = [float(r[1]) for r in rows[1:]]
    assert qs[0] == 1.0 and qs[1] == pytest.approx(0.70710678, abs=1e-8)
    for case in summary["cases"]:
        assert case["pcd_vs_density_diag"] < 1e-12
        assert case["tail_mass"] < 1e-9
    assert json.loads((tmp_path / "summary_fig2.json").read_text())["cases"] == summary["cases"]


def test_inversion_csv(tmp_path):
    cfg = ScenarioConfig(n_s_list=[1.0], outputs=["inversion"], time_points=101,
                         output_dir=str(tmp_path))
    summary = run_scenario(cfg)
    rows = _read(tmp_path / "inversion_mscs_nc20_ns1.csv")
    assert rows[0] == ["lambda_t", "W"] and len(rows) == 102
    assert float(rows[1][1]) == pytest.approx(1.0)
    assert summary["cases"][0]["inversion_closed_vs_series"] < 1e-9


def test_twelve_significant_digits(tmp_path):
    cfg = ScenarioConfig(n_s_list=[2.0], outputs=["pcd"], output_dir=str(tmp_path))
    run_scenario(cfg)
    value = _read(tmp_path / "pcd_mscs_nc20_ns2.csv")[20][1]
    digits = value.split("e")[0].replace(".", "").replace("-", "").lstrip("0")
    assert len(digits) <= 12


def test_fig16_mandel_q(tmp_path):
    for cfg in preset("fig16", output_dir=str(tmp_path)):
        run_scenario(cfg)
    files = sorted(tmp_path.glob("mandel_q_*.csv"))
    assert len(files) == 3
    for f in files:
        rows = _read(f)
        assert rows[0] == ["n_s", "q", "mandel_q"]
        assert all(float(r[2]) > 0 for r in rows[2:])  # N_s = 0 row is Poisson


def test_quadrature_summary_has_discrepancy(tmp_path):
    cfg = ScenarioConfig(n_c=10, n_s_list=[1.0], q_mode=0.8, outputs=["quadratures"],
                         output_dir=str(tmp_path))
    summary = run_scenario(cfg)
    disc = summary["cases"][0]["quadrature_discrepancy"]
    assert disc["shift_x1"] == pytest.approx(1.6)
    assert abs(disc["residual_x1"]) < 1e-9


def test_deterministic(tmp_path):
    outs = []
    for sub in ("a", "b"):
        cfg = ScenarioConfig(n_c=10, n_s_list=[2.0], q_mode=0.8,
                             outputs=["pcd", "negativity"], time_points=41,
                             output_dir=str(tmp_path / sub))
        run_scenario(cfg)
        outs.append({p.name: p.read_bytes() for p in (tmp_path / sub).glob("*.csv")})
    assert outs[0] == outs[1]


@pytest.mark.parametrize("bad", [
    {"kind": "THERMAL"},
    {"n_c": -1},
    {"n_s_list": []},
    {"q_mode": 1.5},
    {"time_points": 1},
    {"outputs": ["spectrum"]},
    {"kind": "PSCS", "outputs": ["wigner"]},
])
def test_invalid_configs(bad):
    with pytest.raises(ConfigError):
        ScenarioConfig(**bad).validate()


def test_load_config(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"kind": "PSCS", "n_c": 10, "n_s_list": [1, 2]}))
    cfg = load_config(path)
    assert cfg.kind == "PSCS" and cfg.n_s_list == [1, 2]
    path.write_text(json.dumps({"colour": "red"}))
    with pytest.raises(ConfigError):
        load_config(path)
    path.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(path)


def test_unknown_preset():
    with pytest.raises(ConfigError):
        preset("fig99")
