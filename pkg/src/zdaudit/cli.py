"""Command line entry point: ``zdaudit <subcommand> [--config F] [--seed N] [--out DIR]``.

Exit status is 0 on success, 2 on invalid input and 3 when the run finished
but the result is infeasible (diagnostics are still written).
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import experiments as ex
from .config import ExperimentConfig, apply_setting, load_config
from .errors import AuditGameError, ConfigError

log = logging.getLogger("zdaudit")

EXIT_OK, EXIT_INVALID, EXIT_INFEASIBLE = 0, 2, 3

PIPELINES = {
    "payoffs": ex.run_payoffs,
    "equilibrium": ex.run_equilibrium,
    "equalize": ex.run_equalize,
    "range": ex.run_range,
    "optimize": ex.run_optimize,
    "oracle": ex.run_oracle,
    "simulate": ex.run_simulate,
    "roc": ex.run_roc,
}
JSON_FIRST = {"equilibrium", "range"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zdaudit", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=[*PIPELINES, "figures"])
    parser.add_argument("--config", help="key = value config file")
    parser.add_argument("--seed", type=int, help="master seed (overrides the config)")
    parser.add_argument("--out", help="directory for output files and manifest.json")
    parser.add_argument("--format", choices=["csv", "json"], help="stdout format")
    parser.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override one config key; may be repeated")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def _config(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    for item in args.set:
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        apply_setting(cfg, key, value)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.out is not None:
        cfg.out = args.out
    return cfg.validate()


def _infeasible(command, summary, rows) -> bool:
    if command in ("equalize", "optimize"):
        return not summary["feasible"]
    if command == "oracle":
        return not rows
    return False


def run_command(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _config(args)
        if args.command == "figures":
            return _figures(cfg, stdout)
        summary, rows, warnings = PIPELINES[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except AuditGameError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID

    fmt = args.format or ("json" if args.command in JSON_FIRST or not rows else "csv")
    if fmt == "json":
        text = ex.to_json(dict(summary, rows=rows) if rows else summary)
    else:
        text = ex.to_csv(rows) if rows else ex.to_csv([summary])
    stdout.write(text)
    for w in warnings:
        log.warning(w)
    if cfg.out:
        name = f"{args.command}.{fmt}"
        ex.write_outputs(cfg.out, {name: text}, {
            "command": args.command, "config": cfg.echo(), "seed": cfg.seed,
            "summary": summary, "warnings": warnings,
        })
    return EXIT_INFEASIBLE if _infeasible(args.command, summary, rows) else EXIT_OK


def _figures(cfg, stdout) -> int:
    out = cfg.out or "figures"
    files, warnings = ex.emit_figure_data(cfg)
    manifest = ex.write_outputs(out, files, {
        "command": "figures", "config": cfg.echo(), "seed": cfg.seed, "warnings": warnings,
    })
    for w in warnings:
        log.warning(w)
    stdout.write(f"wrote {len(files)} files to {out}\n")
    log.info("manifest: %s", manifest["outputs"])
    return EXIT_OK


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
