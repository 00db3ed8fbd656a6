"""Scenario runner: parameter grids in, CSV datasets and a JSON summary out."""

from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from . import dynamics, entanglement, observables, states
from .errors import ConfigError
from .fock import DEFAULT_TAIL_TOL
from .states import FieldParams, Kind

log = logging.getLogger(__name__)

OUTPUT_KINDS = ("pcd", "inversion", "negativity", "quadratures", "mandel_q", "wigner", "qweight")
MSCS_ONLY = ("quadratures", "mandel_q", "wigner")
FLOAT_FMT = "{:.12g}"
REFERENCE_NS = [0.0, 1.0, 2.0, 5.0, 8.0, 10.0]
NS_SWEEP = [0.5 * k for k in range(21)]


@dataclass
class ScenarioConfig:
    kind: str = "MSCS"
    n_c: float = 20.0
    n_s_list: list = field(default_factory=lambda: list(REFERENCE_NS))
    q_mode: object = "derived"
    time_max: float = dynamics.DEFAULT_T_MAX
    time_points: int = dynamics.DEFAULT_POINTS
    n_max_override: int | None = None
    outputs: list = field(default_factory=lambda: ["pcd"])
    output_dir: str = "out"
    tail_tol: float = DEFAULT_TAIL_TOL
    omega_t: float = 0.0
    wigner_re_range: list = field(default_factory=lambda: list(observables.DEFAULT_RE_RANGE))
    wigner_im_range: list = field(default_factory=lambda: list(observables.DEFAULT_IM_RANGE))
    wigner_step: float = observables.DEFAULT_STEP
    name: str = ""

    def validate(self) -> "ScenarioConfig":
        try:
            Kind(self.kind)
        except ValueError:
            raise ConfigError(f"kind must be PSCS or MSCS, got {self.kind!r}") from None
        if not _is_number(self.n_c) or self.n_c < 0:
            raise ConfigError(f"n_c must be a number >= 0, got {self.n_c!r}")
        if not isinstance(self.n_s_list, (list, tuple)) or not self.n_s_list:
            raise ConfigError("n_s_list must be a non-empty list")
        if any(not _is_number(v) or v < 0 for v in self.n_s_list):
            raise ConfigError(f"every n_s must be a number >= 0, got {self.n_s_list!r}")
        if self.q_mode != "derived":
            if not _is_number(self.q_mode) or not 0 <= self.q_mode <= 1:
                raise ConfigError(f"q_mode must be 'derived' or a number in [0, 1], got {self.q_mode!r}")
        if not _is_number(self.time_max) or self.time_max <= 0:
            raise ConfigError("time_max must be > 0")
        if not isinstance(self.time_points, int) or self.time_points < 2:
            raise ConfigError("time_points must be an integer >= 2")
        if self.n_max_override is not None and (
                not isinstance(self.n_max_override, int) or self.n_max_override < 2):
            raise ConfigError("n_max_override must be an integer >= 2")
        bad = [o for o in self.outputs if o not in OUTPUT_KINDS]
        if bad or not self.outputs:
            raise ConfigError(f"outputs must be a non-empty subset of {OUTPUT_KINDS}, got {self.outputs!r}")
        if self.kind == "PSCS" and any(o in MSCS_ONLY for o in self.outputs):
            raise ConfigError(f"{', '.join(MSCS_ONLY)} are defined for MSCS only")
        return self

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data).validate()


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def load_config(path) -> ScenarioConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return ScenarioConfig.from_dict(data)


def _fmt(v) -> str:
    return FLOAT_FMT.format(float(v))


def _tag(v) -> str:
    return f"{float(v):g}"


def write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(x) for x in row])


def _params(cfg: ScenarioConfig, n_s: float) -> FieldParams:
    if cfg.kind == "PSCS":
        return FieldParams.pscs(cfg.n_c, n_s)
    q = None if cfg.q_mode == "derived" else float(cfg.q_mode)
    return FieldParams.mscs(cfg.n_c, n_s, q)


def _stem(cfg: ScenarioConfig, n_s=None) -> str:
    s = f"{cfg.kind.lower()}_nc{_tag(cfg.n_c)}"
    return s if n_s is None else f"{s}_ns{_tag(n_s)}"


def run_scenario(cfg: ScenarioConfig) -> dict:
    """Write one CSV per (output kind, N_s) and ``summary.json``.

    Outputs whose abscissa is N_s (quadratures, mandel_q, qweight) get one
    CSV per scenario. Returns the summary dictionary.
    """
    cfg.validate()
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    grid = dynamics.time_grid(cfg.time_max, cfg.time_points)
    summary = {"config": asdict(cfg), "files": [], "cases": []}
    sweep_rows = {"quadratures": [], "mandel_q": [], "qweight": []}

    for n_s in cfg.n_s_list:
        params = _params(cfg, n_s)
        n_max = cfg.n_max_override or states.choose_n_max(params, cfg.tail_tol)
        case = {"n_s": float(n_s), "q": params.q, "n_max": n_max}
        needs_pcd = {"pcd", "inversion", "mandel_q"} & set(cfg.outputs)
        if needs_pcd:
            p = states.pcd(params, n_max, cfg.tail_tol)
            case["tail_mass"] = max(0.0, 1.0 - float(p.sum()))

        if "pcd" in cfg.outputs:
            path = out / f"pcd_{_stem(cfg, n_s)}.csv"
            write_csv(path, ["n", "probability"], zip(range(n_max), p))
            summary["files"].append(path.name)
            if params.kind is Kind.PSCS and params.n_s > 0:
                case["pscs_closed_form"] = states.pscs_closed_form_report(params, n_max)
            elif params.kind is Kind.MSCS:
                diag = np.real(np.diag(states.mscs_density(params, n_max, cfg.tail_tol)))
                case["pcd_vs_density_diag"] = float(np.max(np.abs(diag - p)))

        if "inversion" in cfg.outputs:
            w = dynamics.inversion_series(p, grid)
            if params.kind is Kind.MSCS:
                closed = dynamics.inversion_mscs_closed(params, grid, n_max)
                case["inversion_closed_vs_series"] = float(np.max(np.abs(closed - w)))
                w = closed
            path = out / f"inversion_{_stem(cfg, n_s)}.csv"
            write_csv(path, ["lambda_t", "W"], zip(grid, w))
            summary["files"].append(path.name)

        if "negativity" in cfg.outputs:
            rho = states.density(params, n_max, cfg.tail_tol)
            neg = entanglement.negativity_series(rho, grid)
            path = out / f"negativity_{_stem(cfg, n_s)}.csv"
            write_csv(path, ["lambda_t", "N", "log_negativity"],
                      ((t, v, entanglement.log_negativity(v)) for t, v in zip(grid, neg)))
            summary["files"].append(path.name)
            case["negativity_max"] = float(neg.max())

        if "quadratures" in cfg.outputs:
            rep = observables.quadrature_report(params, cfg.omega_t)
            disc = observables.quadrature_discrepancy(
                params, states.mscs_density(params, n_max, cfg.tail_tol), cfg.omega_t)
            sweep_rows["quadratures"].append(
                (n_s, params.q, rep.mean_x1, rep.mean_x2, rep.var_x1, rep.var_x2, rep.product,
                 disc["var_x1_trace"], disc["var_x2_trace"]))
            case["quadrature_discrepancy"] = disc

        if "mandel_q" in cfg.outputs:
            qm = observables.mandel_q(p)
            sweep_rows["mandel_q"].append((n_s, params.q, qm))
            case["mandel_q_vs_moments"] = abs(qm - observables.mandel_q_mscs_moments(params))

        if "qweight" in cfg.outputs:
            q_derived = states.mixing_weight(math.sqrt(cfg.n_c), params.zeta)
            sweep_rows["qweight"].append((n_s, q_derived))

        if "wigner" in cfg.outputs:
            wg = observables.wigner_mscs(params, cfg.wigner_re_range, cfg.wigner_im_range,
                                         cfg.wigner_step)
            path = out / f"wigner_{_stem(cfg, n_s)}.csv"
            re, im = np.meshgrid(wg.re, wg.im)
            write_csv(path, ["re_alpha", "im_alpha", "W"],
                      zip(re.ravel(), im.ravel(), wg.values.ravel()))
            summary["files"].append(path.name)
            case["wigner_integral"] = wg.integral()
            case["wigner_min"] = float(wg.values.min())

        summary["cases"].append(case)

    headers = {
        "quadratures": ["n_s", "q", "mean_x1", "mean_x2", "var_x1", "var_x2", "product",
                        "var_x1_trace", "var_x2_trace"],
        "mandel_q": ["n_s", "q", "mandel_q"],
        "qweight": ["n_s", "q"],
    }
    for kind, rows in sweep_rows.items():
        if rows:
            path = out / f"{kind}_{_stem(cfg)}.csv"
            write_csv(path, headers[kind], rows)
            summary["files"].append(path.name)

    summary_name = "summary.json" if not cfg.name else f"summary_{cfg.name}.json"
    with open(out / summary_name, "w", newline="\n") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return summary


def _fig(name, kind, n_c, outputs, q_mode="derived", n_s_list=REFERENCE_NS) -> ScenarioConfig:
    return ScenarioConfig(kind=kind, n_c=n_c, n_s_list=list(n_s_list), q_mode=q_mode,
                          outputs=list(outputs), name=name)


# Preset parameter sets; the time window [0, 50] is a library default.
PRESETS = {
    "fig1": [_fig("fig1", "PSCS", 20, ["pcd"])],
    "fig2": [_fig("fig2", "MSCS", 20, ["pcd", "qweight"])],
    "fig3": [_fig("fig3", "PSCS", 20, ["inversion"])],
    "fig4": [_fig("fig4", "MSCS", 20, ["inversion"])],
    "fig5": [_fig("fig5", "PSCS", 20, ["negativity"])],
    "fig6": [_fig("fig6", "MSCS", 20, ["negativity"])],
    "fig7": [_fig("fig7", "PSCS", 10, ["pcd"])],
    "fig8": [_fig("fig8", "MSCS", 10, ["pcd"], q_mode=0.8)],
    "fig9": [_fig("fig9", "PSCS", 10, ["inversion"])],
    "fig10": [_fig("fig10", "MSCS", 10, ["inversion"], q_mode=0.8)],
    "fig11": [_fig("fig11", "PSCS", 10, ["negativity"])],
    "fig12": [_fig("fig12", "MSCS", 10, ["negativity"], q_mode=0.8)],
    "fig13": [_fig("fig13", "MSCS", 10, ["quadratures"], q_mode=0.8, n_s_list=NS_SWEEP)],
    "fig14": [_fig("fig14", "MSCS", 10, ["quadratures"], q_mode=0.8, n_s_list=NS_SWEEP)],
    "fig15": [_fig("fig15", "MSCS", 10, ["quadratures"], q_mode=0.8, n_s_list=NS_SWEEP)],
    "fig16": [_fig(f"fig16_nc{nc}", "MSCS", nc, ["mandel_q"], q_mode=0.8, n_s_list=NS_SWEEP)
              for nc in (10, 20, 30)],
    "fig17": [_fig("fig17", "MSCS", 10, ["wigner"], q_mode=0.8, n_s_list=[2.0])],
}


def preset(name: str, **overrides) -> list[ScenarioConfig]:
    """Scenario configs for one figure; ``overrides`` replace config fields."""
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    return [replace(c, **overrides).validate() for c in PRESETS[name]]
