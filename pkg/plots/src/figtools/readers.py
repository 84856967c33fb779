"""Parsers for the simulator's result-file formats.

Three formats, all plain text:

* time-series CSV: header ``tick,n_A,n_B[,n_AB],n_0``, one row per tick,
  fractions with 6 decimal places;
* landscape grid: header line ``# width height tick``, then one row of
  state digits per lattice row;
* sweep CSV: header ``value,n_*...,saturation_tick``, one aggregated row
  per swept value.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np


class FormatError(ValueError):
    """An input file does not match the expected format."""


def _read_lines(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    return text.splitlines()


def read_timeseries(path):
    """Parse a time-series CSV into (labels, ticks array, (T, M) fractions)."""
    lines = _read_lines(path)
    if not lines or not lines[0].startswith("tick,"):
        raise FormatError(f"{path}: missing 'tick,...' header")
    labels = _share_labels(lines[0].split(",")[1:], path)
    rows = [line for line in lines[1:] if line]
    if not rows:
        raise FormatError(f"{path}: no data rows")
    ticks, data = [], []
    for line in rows:
        cells = line.split(",")
        if len(cells) != len(labels) + 1:
            raise FormatError(f"{path}: row has {len(cells)} cells, expected {len(labels) + 1}")
        try:
            ticks.append(int(cells[0]))
            data.append([float(v) for v in cells[1:]])
        except ValueError:
            raise FormatError(f"{path}: non-numeric cell in row {line!r}") from None
    return labels, np.array(ticks), np.array(data)


def read_landscape(path):
    """Parse a landscape grid into (width, height, tick, (H, W) state array)."""
    lines = _read_lines(path)
    if not lines or not lines[0].startswith("# "):
        raise FormatError(f"{path}: missing '# width height tick' header")
    try:
        width, height, tick = (int(v) for v in lines[0][2:].split())
    except ValueError:
        raise FormatError(f"{path}: malformed landscape header {lines[0]!r}") from None
    rows = [line.split() for line in lines[1:] if line]
    if len(rows) != height:
        raise FormatError(f"{path}: {len(rows)} rows, header says {height}")
    if any(len(r) != width for r in rows):
        raise FormatError(f"{path}: ragged grid (header says width {width})")
    try:
        states = np.array([[int(v) for v in r] for r in rows])
    except ValueError:
        raise FormatError(f"{path}: non-integer state cell") from None
    if states.min() < 0:
        raise FormatError(f"{path}: negative state index")
    return width, height, tick, states


def read_sweep(path):
    """Parse a sweep CSV into (labels, value strings, (R, M) share array)."""
    lines = _read_lines(path)
    if not lines:
        raise FormatError(f"{path}: empty file")
    header = lines[0].split(",")
    if header[:1] != ["value"] or header[-1:] != ["saturation_tick"]:
        raise FormatError(f"{path}: expected 'value,n_*...,saturation_tick' header")
    labels = _share_labels(header[1:-1], path)
    values, shares = [], []
    for line in (line for line in lines[1:] if line):
        cells = line.split(",")
        if len(cells) != len(labels) + 2:
            raise FormatError(f"{path}: row has {len(cells)} cells, expected {len(labels) + 2}")
        values.append(cells[0])
        try:
            shares.append([float(v) for v in cells[1:-1]])
        except ValueError:
            raise FormatError(f"{path}: non-numeric share in row {line!r}") from None
    return labels, values, np.array(shares)


def _share_labels(cells, path):
    if not cells or not all(c.startswith("n_") for c in cells):
        raise FormatError(f"{path}: share columns must be named n_<state>")
    return tuple(c[2:] for c in cells)
