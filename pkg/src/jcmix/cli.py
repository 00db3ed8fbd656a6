"""Command-line front end.

Exit codes: 0 success, 1 configuration error, 2 numerical failure
(truncation, non-convergence, failed oracle check), 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace

from .errors import ConfigError, JCMixError
from .harness import PRESETS, ScenarioConfig, load_config, preset, run_scenario
from .verify import run_oracle_suite

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3

SUBCOMMAND_OUTPUT = {
    "pcd": "pcd",
    "inversion": "inversion",
    "negativity": "negativity",
    "quadratures": "quadratures",
    "mandelq": "mandel_q",
    "wigner": "wigner",
    "qweight": "qweight",
}


def _q_mode(text: str):
    if text == "derived":
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("q must be 'derived' or a number") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _common_flags(suppress: bool) -> argparse.ArgumentParser:
    # subcommand copies default to SUPPRESS so they do not overwrite flags
    # given before the subcommand
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON scenario file; flags override its fields", **kw)
    common.add_argument("--out", help="output directory", **kw)
    common.add_argument("--nmax", type=int, help="Fock cutoff override", **kw)
    common.add_argument("--tmax", type=float, help="largest lambda*t", **kw)
    common.add_argument("--points", type=int, help="number of time points", **kw)
    common.add_argument("-v", "--verbose", action="store_true", **kw)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags(suppress=True)

    scenario = argparse.ArgumentParser(add_help=False)
    scenario.add_argument("--kind", choices=["PSCS", "MSCS"])
    scenario.add_argument("--nc", type=float, help="mean coherent photon number")
    scenario.add_argument("--ns", type=float, nargs="+", help="mean squeezed photon numbers")
    scenario.add_argument("--q", type=_q_mode, help="'derived' or a fixed mixing weight")

    parser = _Parser(prog="jcmix", description=__doc__.splitlines()[0],
                     parents=[_common_flags(suppress=False)])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in SUBCOMMAND_OUTPUT:
        sub.add_parser(name, parents=[common, scenario], help=f"write {name} CSVs")
    p = sub.add_parser("preset", parents=[common], help="reproduce one figure's dataset")
    p.add_argument("figure", choices=sorted(PRESETS, key=lambda s: int(s[3:])))
    sub.add_parser("verify", parents=[common], help="run the oracle cross-check suite")
    return parser


def _overrides(args) -> dict:
    out = {}
    if args.out is not None:
        out["output_dir"] = args.out
    if args.nmax is not None:
        out["n_max_override"] = args.nmax
    if args.tmax is not None:
        out["time_max"] = args.tmax
    if args.points is not None:
        out["time_points"] = args.points
    for flag, key in (("kind", "kind"), ("nc", "n_c"), ("ns", "n_s_list"), ("q", "q_mode")):
        if getattr(args, flag, None) is not None:
            out[key] = getattr(args, flag)
    return out


def _scenarios(args) -> list[ScenarioConfig]:
    overrides = _overrides(args)
    if args.command == "preset":
        if args.config:
            raise ConfigError("--config cannot be combined with a preset")
        return preset(args.figure, **overrides)
    base = load_config(args.config) if args.config else ScenarioConfig()
    overrides["outputs"] = [SUBCOMMAND_OUTPUT[args.command]]
    return [replace(base, **overrides).validate()]


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "verify":
            results = run_oracle_suite()
            checks = [r for r in results if r.tolerance is not None]
            failed = [r for r in checks if not r.passed]
            print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
            return EXIT_NUMERIC if failed else EXIT_OK
        for cfg in _scenarios(args):
            summary = run_scenario(cfg)
            for name in summary["files"]:
                print(f"{cfg.output_dir}/{name}")
            if args.verbose:
                print(json.dumps(summary["cases"], indent=2))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (TypeError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except JCMixError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
