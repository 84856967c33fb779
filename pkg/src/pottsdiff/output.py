"""Result serialization: time-series CSV, landscape grid, summaries.

All writers are byte-deterministic functions of their inputs; fractions are
fixed at 6 decimal places and newlines are always "\\n".
"""

from __future__ import annotations

import numpy as np

from . import __version__
from .config import emit_config
from .errors import ConfigParseError
from .network import GridSpec


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def write_timeseries(series, path) -> None:
    """CSV with header "tick,n_A,n_B[,n_AB],n_0", one row per tick."""
    header = "tick," + ",".join(f"n_{label}" for label in series.labels)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(header + "\n")
        for tick, row in enumerate(series.data):
            fh.write(f"{tick}," + ",".join(_fmt(v) for v in row) + "\n")


def read_timeseries(path):
    """Inverse of write_timeseries: (labels, (ticks, M) fraction array)."""
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].startswith("tick,"):
        raise ConfigParseError("not a time-series CSV (missing header)")
    labels = tuple(c[2:] for c in lines[0].split(",")[1:])
    rows = [[float(v) for v in line.split(",")[1:]] for line in lines[1:] if line]
    return labels, np.array(rows)


def write_landscape(states: np.ndarray, grid: GridSpec, tick: int, path) -> None:
    """Text grid of state indices, one lattice row per line, header
    "# width height tick"."""
    if len(states) != grid.n:
        raise ValueError(f"state array length {len(states)} != grid size {grid.n}")
    rows = np.asarray(states).reshape(grid.height, grid.width)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(f"# {grid.width} {grid.height} {tick}\n")
        for row in rows:
            fh.write(" ".join(str(int(s)) for s in row) + "\n")


def read_landscape(path):
    """Inverse of write_landscape: (grid, tick, flat state array)."""
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].startswith("# "):
        raise ConfigParseError("not a landscape file (missing header)")
    try:
        width, height, tick = (int(v) for v in lines[0][2:].split())
    except ValueError:
        raise ConfigParseError("malformed landscape header") from None
    rows = [line.split() for line in lines[1:] if line]
    if len(rows) != height or any(len(r) != width for r in rows):
        raise ConfigParseError("landscape body does not match header dimensions")
    states = np.array([[int(v) for v in r] for r in rows]).ravel()
    return GridSpec(width, height), tick, states


def write_summary(path, scenario, *, seed, final_fractions, labels,
                  saturation_tick, saturated, extra=None) -> None:
    """Key-value summary; echoes the full config for exact re-execution."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"summary.version = {__version__}\n")
        fh.write(f"summary.seed = {seed}\n")
        fh.write(f"summary.saturated = {'true' if saturated else 'false'}\n")
        tick = "none" if saturation_tick is None else str(saturation_tick)
        fh.write(f"summary.saturation_tick = {tick}\n")
        for label, v in zip(labels, final_fractions):
            fh.write(f"summary.final.n_{label} = {_fmt(v)}\n")
        for key, value in (extra or {}).items():
            fh.write(f"summary.{key} = {value}\n")
        for line in emit_config(scenario).splitlines():
            fh.write(f"config.{line}\n")


def write_aggregate(stats, path) -> None:
    """Replication statistics CSV: per-tick mean and std of each fraction."""
    cols = []
    for label in stats.labels:
        cols += [f"mean_n_{label}", f"std_n_{label}"]
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("tick," + ",".join(cols) + "\n")
        for tick, (mu, sd) in enumerate(zip(stats.mean, stats.std)):
            cells = []
            for k in range(len(stats.labels)):
                cells += [_fmt(mu[k]), _fmt(sd[k])]
            fh.write(f"{tick}," + ",".join(cells) + "\n")


def write_sweep(rows, labels, path) -> None:
    """One aggregated line per swept value: saturation shares + mean
    saturation tick.  `rows` is a list of (value, final_mean, mean_sat)."""
    header = "value," + ",".join(f"n_{label}" for label in labels) + ",saturation_tick"
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(header + "\n")
        for value, final_mean, mean_sat in rows:
            sat = "none" if mean_sat is None else _fmt(mean_sat)
            fh.write(f"{value}," + ",".join(_fmt(v) for v in final_mean) + f",{sat}\n")
