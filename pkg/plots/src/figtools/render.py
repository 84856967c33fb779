"""Figure rendering: diffusion curves, adoption landscapes, sweep charts.

Values are plotted exactly as they appear in the input files -- no
smoothing or interpolation.  The landscape raster has one pixel per agent.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.image
import matplotlib.pyplot as plt
from matplotlib.colors import ListedColormap

from .readers import FormatError, read_landscape, read_sweep, read_timeseries

# Fixed qualitative palette keyed by state index, so the same state keeps
# its color across every figure.
PALETTE = ("#1f77b4", "#d62728", "#9467bd", "#7f7f7f")


def _color(index):
    if index >= len(PALETTE):
        raise FormatError(f"state index {index} has no palette entry (max {len(PALETTE) - 1})")
    return PALETTE[index]


def plot_curves(csv_path, out_path):
    """Adoption fractions vs tick, one labeled line per state."""
    labels, ticks, data = read_timeseries(csv_path)
    fig, ax = plt.subplots(figsize=(6, 4))
    for k, label in enumerate(labels):
        ax.plot(ticks, data[:, k], color=_color(k), label=f"n_{label}")
    ax.set_xlabel("tick")
    ax.set_ylabel("fraction of agents")
    ax.set_ylim(0.0, 1.0)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)


def plot_landscape(grid_path, out_path):
    """Adoption landscape: one colored pixel per agent.

    The raster has exactly the grid's dimensions; the state->color map is
    recorded in the PNG metadata.
    """
    width, height, tick, states = read_landscape(grid_path)
    m = int(states.max()) + 1
    if m > len(PALETTE):
        raise FormatError(
            f"{grid_path}: state digit {m - 1} exceeds the palette (max {len(PALETTE) - 1})"
        )
    cmap = ListedColormap(PALETTE[:m])
    mapping = ", ".join(f"{k}={PALETTE[k]}" for k in range(m))
    matplotlib.image.imsave(
        out_path,
        states,
        cmap=cmap,
        vmin=0,
        vmax=m - 1,
        metadata={"Description": f"adoption landscape tick {tick}; states {mapping}"},
    )


def plot_sweep(csv_paths, out_path):
    """Saturation shares vs the swept value, one marker-line per state.

    Accepts one or more sweep CSVs; all must share the same column set and
    their rows are concatenated in order.
    """
    if isinstance(csv_paths, (str, bytes)) or not hasattr(csv_paths, "__iter__"):
        csv_paths = [csv_paths]
    labels, values, shares = None, [], []
    for path in csv_paths:
        got_labels, got_values, got_shares = read_sweep(path)
        if labels is None:
            labels = got_labels
        elif got_labels != labels:
            raise FormatError(
                f"{path}: column set {got_labels} does not match {labels}"
            )
        values.extend(got_values)
        shares.extend(got_shares.tolist())
    if len(values) < 2:
        raise FormatError("sweep plots need at least 2 rows")
    fig, ax = plt.subplots(figsize=(6, 4))
    x = range(len(values))
    for k, label in enumerate(labels):
        ax.plot(x, [row[k] for row in shares], color=_color(k), marker="o",
                label=f"n_{label}")
    ax.set_xticks(list(x), values)
    ax.set_xlabel("swept value")
    ax.set_ylabel("fraction at saturation")
    ax.set_ylim(0.0, 1.0)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)
