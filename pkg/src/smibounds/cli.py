"""Command line entry point: ``smibounds {generate,run,sweep,plot}``.

Failures exit with status 2 and print one JSON line on stderr:
``{"error": "<ExceptionType>", "message": "..."}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .data import save_dataset
from .errors import SmiError
from .harness import ExperimentConfig, emit_csv, load_config, run_eta_sweep, run_experiment
from .plots import emit_plots
from .synthgen import PRESETS, generate_dataset, preset


def _fail(kind: str, message: str) -> int:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)
    return 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        sys.exit(_fail("UsageError", message))


def _parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", type=Path, help="experiment config (JSON)")
    common.add_argument("--preset", choices=PRESETS, help="named scenario; overrides the config's scenario")
    common.add_argument("--seed", type=int, help="override the scenario seed")
    common.add_argument("--samples", type=int, help="override the number of sampled subsets")
    common.add_argument("--out", type=Path, help="output directory")

    p = _Parser(prog="smibounds", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("generate", parents=[common], help="write the synthetic dataset as JSON")
    sub.add_parser("run", parents=[common], help="sample subsets, evaluate SMI, bounds and correlations")
    sub.add_parser("sweep", parents=[common], help="correlations over the eta sweep")
    sub.add_parser("plot", parents=[common], help="run and emit SVG plots only")
    return p


def _config(args) -> ExperimentConfig:
    if args.config is not None:
        cfg = load_config(args.config)
    else:
        cfg = ExperimentConfig(scenario=preset(args.preset or "two-target"))
    if args.preset and args.config is not None:
        base = preset(args.preset)
        cfg = replace(cfg, scenario=replace(base, budget=cfg.scenario.budget, seed=cfg.scenario.seed,
                                            samples=cfg.scenario.samples))
    if args.seed is not None:
        cfg = replace(cfg, scenario=cfg.scenario.with_seed(args.seed))
    if args.samples is not None:
        cfg = replace(cfg, scenario=cfg.scenario.with_samples(args.samples))
    if args.out is not None:
        cfg = replace(cfg, outputs=str(args.out))
    return cfg


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = _config(args)
        out = Path(cfg.outputs)
        if args.command == "generate":
            out.mkdir(parents=True, exist_ok=True)
            path = out / f"{cfg.scenario.name}-seed{cfg.scenario.seed}.json"
            save_dataset(generate_dataset(cfg.scenario), path)
            print(path)
        elif args.command == "run":
            result = run_experiment(cfg)
            for path in emit_csv(result.samples, result.table, out):
                print(path)
            if cfg.emit_plots:
                for path in emit_plots(result, out, cfg.functions):
                    print(path)
        elif args.command == "sweep":
            table = run_eta_sweep(cfg)
            print(emit_csv([], table, out)[1])
        else:
            result = run_experiment(cfg)
            for path in emit_plots(result, out, cfg.functions):
                print(path)
    except (SmiError, OSError) as exc:
        return _fail(type(exc).__name__, str(exc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
