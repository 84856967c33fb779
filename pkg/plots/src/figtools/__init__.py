"""Render figures from diffusion-simulation result files.

Works purely from the simulator's text formats (time-series CSV, landscape
grids, sweep CSV); it never imports the simulator itself.
"""

__version__ = "0.1.0"

from .readers import FormatError, read_landscape, read_sweep, read_timeseries  # noqa: F401
from .render import PALETTE, plot_curves, plot_landscape, plot_sweep  # noqa: F401
