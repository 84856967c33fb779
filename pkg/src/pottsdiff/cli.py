"""Command-line entry points: run, replicate, sweep, preset.

Exit status: 0 success, 1 usage/configuration error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import config as cfg
from . import output, scenarios, simulation
from .errors import ConfigurationError
from .network import GridSpec, write_edges


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_values(path: str) -> dict[str, str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    return cfg.parse_document(text)


def _apply_sets(values: dict[str, str], sets) -> None:
    for item in sets or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--set expects key=value, got {item!r}")
        cfg.apply_override(values, key.strip(), value.strip())


def _outdir(path: str) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_run_outputs(out: Path, scn, result, *, dump_network=False):
    output.write_timeseries(result.series, out / "timeseries.csv")
    output.write_landscape(
        result.final_states, scn.grid, len(result.series) - 1, out / "landscape.txt"
    )
    output.write_summary(
        out / "summary.txt",
        scn,
        seed=scn.seed,
        final_fractions=result.series.data[-1],
        labels=result.series.labels,
        saturation_tick=result.saturation_tick,
        saturated=result.saturated,
    )
    if dump_network:
        net = simulation.build_network(scn)
        write_edges(net, out / "network.txt", scn.seed, scn.p_r)


def _write_replicate_outputs(out: Path, scn, stats, n_runs):
    output.write_aggregate(stats, out / "aggregate.csv")
    output.write_summary(
        out / "summary.txt",
        scn,
        seed=scn.seed,
        final_fractions=stats.final_mean,
        labels=stats.labels,
        saturation_tick=None,
        saturated=all(t is not None for t in stats.saturation_ticks),
        extra={
            "runs": n_runs,
            "mean_saturation_tick": (
                "none" if stats.mean_saturation_tick is None
                else f"{stats.mean_saturation_tick:.2f}"
            ),
        },
    )


def cmd_run(args) -> int:
    values = _load_values(args.config)
    if args.seed is not None:
        cfg.apply_override(values, "run.seed", str(args.seed))
    scn = cfg.build_scenario(values)
    result = simulation.run(scn)
    _write_run_outputs(_outdir(args.out), scn, result, dump_network=args.dump_network)
    return 0


def cmd_replicate(args) -> int:
    values = _load_values(args.config)
    scn = cfg.build_scenario(values)
    stats = scenarios.replicate(scn, args.runs)
    _write_replicate_outputs(_outdir(args.out), scn, stats, args.runs)
    return 0


def cmd_sweep(args) -> int:
    values = _load_values(args.config)
    sweep_values = [v.strip() for v in args.values.split(",") if v.strip()]
    if not sweep_values:
        raise UsageError("--values must list at least one value")
    rows = []
    labels = None
    out = _outdir(args.out)
    for value in sweep_values:
        point = dict(values)
        cfg.apply_override(point, args.param, value)
        scn = cfg.build_scenario(point)
        stats = scenarios.replicate(scn)
        labels = stats.labels
        rows.append((value, stats.final_mean, stats.mean_saturation_tick))
    output.write_sweep(rows, labels, out / "sweep.csv")
    return 0


def cmd_preset(args) -> int:
    try:
        scn = scenarios.preset(args.name)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    values = cfg.scenario_values(scn)
    _apply_sets(values, args.set)
    scn = cfg.build_scenario(values)
    out = _outdir(args.out)
    if scn.replications > 1:
        stats = scenarios.replicate(scn)
        _write_replicate_outputs(out, scn, stats, scn.replications)
    else:
        result = simulation.run(scn)
        _write_run_outputs(out, scn, result)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pottsdiff", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="single run from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default="out")
    p.add_argument("--dump-network", action="store_true")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("replicate", help="replicated runs, aggregated statistics")
    p.add_argument("--config", required=True)
    p.add_argument("--runs", type=int, required=True)
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_replicate)

    p = sub.add_parser("sweep", help="sweep one config key over a value list")
    p.add_argument("--config", required=True)
    p.add_argument("--param", required=True)
    p.add_argument("--values", required=True)
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("preset", help="run one of the built-in experiments")
    p.add_argument("--name", required=True, choices=scenarios.PRESET_NAMES)
    p.add_argument("--set", action="append", metavar="KEY=VALUE")
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_preset)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (UsageError, ConfigurationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


def app() -> None:
    sys.exit(main())
