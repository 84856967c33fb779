"""Experiment designs: utility assignment, launch-delay law, presets.

Column convention for utilities and states: product states occupy indices
0..M-2 (A, B, then AB for the four-option model) and non-adoption is the
last index, anchored at utility 0.  Product B (index 1) is the product a
launch plan delays and improves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import simulation
from .decision import OptionModel, four_options, three_options
from .errors import ConfigurationError
from .network import GridSpec
from .simulation import InnovatorSchedule, RunResult

DELAYED_PRODUCT = 1  # state index of product B
DEFAULT_TAU = 20.0 / 3.0
DEFAULT_GRID = GridSpec(200, 200)

PRESET_NAMES = ("fig1", "fig2", "fig3", "fig4", "fig5")


def improved_utility(delta_u_a: float, t_b: float, tau: float) -> float:
    """Utility gained by delaying a product's launch while improving it:
    du_B = du_A + (1 - du_A) * tanh(t_B / tau)."""
    if not 0.0 <= delta_u_a <= 1.0:
        raise ConfigurationError(f"base utility must be in [0, 1], got {delta_u_a}")
    if tau <= 0:
        raise ConfigurationError(f"improvement time constant must be > 0, got {tau}")
    if t_b < 0:
        raise ConfigurationError("launch delay must be >= 0")
    return delta_u_a + (1.0 - delta_u_a) * math.tanh(t_b / tau)


@dataclass(frozen=True)
class HomogeneousUtilities:
    """One shared utility per product (relative to non-adoption)."""

    values: tuple[float, ...]

    def __post_init__(self):
        for v in self.values:
            if not 0.0 <= v <= 1.0:
                raise ConfigurationError(f"utility must be in [0, 1], got {v}")


@dataclass(frozen=True)
class HeterogeneityDistribution:
    """Population split into utility buckets: (fraction, delta_u) pairs."""

    groups: tuple[tuple[float, float], ...]

    def __post_init__(self):
        total = sum(f for f, _ in self.groups)
        if abs(total - 1.0) > 1e-9:
            raise ConfigurationError(f"bucket fractions must sum to 1, got {total}")
        for f, du in self.groups:
            if not 0.0 < f <= 1.0:
                raise ConfigurationError(f"bucket fraction must be in (0, 1], got {f}")
            if not 0.0 <= du <= 1.0:
                raise ConfigurationError(f"utility must be in [0, 1], got {du}")

    def counts(self, n: int) -> list[int]:
        """Exact bucket sizes: floor(fraction * n) each, remainder assigned
        to the (first) largest bucket."""
        counts = [math.floor(f * n) for f, _ in self.groups]
        remainder = n - sum(counts)
        if remainder:
            largest = max(range(len(self.groups)), key=lambda i: self.groups[i][0])
            counts[largest] += remainder
        return counts


@dataclass(frozen=True)
class LaunchPlan:
    """Delay product B by t_b ticks while it improves with time constant tau."""

    t_b: int
    tau: float = DEFAULT_TAU

    def __post_init__(self):
        if self.t_b < 0 or self.t_b != int(self.t_b):
            raise ConfigurationError(f"launch delay must be a non-negative integer, got {self.t_b}")
        if self.tau <= 0:
            raise ConfigurationError(f"improvement time constant must be > 0, got {self.tau}")


@dataclass(frozen=True)
class Scenario:
    """Full description of one experiment."""

    grid: GridSpec = DEFAULT_GRID
    p_r: float = 0.0
    temperature: float = 0.0
    options: str = "three"
    utilities: HomogeneousUtilities | HeterogeneityDistribution = HomogeneousUtilities((0.6, 0.6))
    innovators: tuple[InnovatorSchedule, ...] = (
        InnovatorSchedule(product=0, rate=125),
        InnovatorSchedule(product=1, rate=125),
    )
    launch: LaunchPlan | None = None
    max_ticks: int = 500
    saturation_window: int = 5
    seed: int = 1
    replications: int = 1

    def __post_init__(self):
        if self.options not in ("three", "four"):
            raise ConfigurationError(f"unknown option preset {self.options!r}")
        if not 0.0 <= self.p_r <= 1.0:
            raise ConfigurationError(f"rewiring probability must be in [0, 1], got {self.p_r}")
        if self.temperature < 0:
            raise ConfigurationError(f"temperature must be >= 0, got {self.temperature}")
        if self.max_ticks < 0:
            raise ConfigurationError("max_ticks must be >= 0")
        if self.saturation_window < 1:
            raise ConfigurationError("saturation window must be >= 1")
        if self.seed < 0:
            raise ConfigurationError("seed must be >= 0")
        if self.replications < 1:
            raise ConfigurationError("replications must be >= 1")
        m = 3 if self.options == "three" else 4
        if isinstance(self.utilities, HomogeneousUtilities):
            if len(self.utilities.values) != m - 1:
                raise ConfigurationError(
                    f"{self.options}-option model needs {m - 1} product utilities, "
                    f"got {len(self.utilities.values)}"
                )
        elif self.options == "four":
            raise ConfigurationError("heterogeneous utilities are only supported for the three-option model")
        if self.launch is not None and self.options == "four":
            raise ConfigurationError("launch plans are only supported for the three-option model")
        for sched in self.innovators:
            if not 0 <= sched.product < m - 1:
                raise ConfigurationError(f"innovator product index {sched.product} out of range")


def option_model(scenario: Scenario) -> OptionModel:
    return three_options() if scenario.options == "three" else four_options()


def four_option_utilities(du_a0: float, du_b0: float, du_ab0: float) -> np.ndarray:
    """Utility vector (A, B, AB, 0) from the three utility differences
    against non-adoption; the kernel's field differences then realize
    u_AB - u_A = du_ab0 - du_a0 and u_AB - u_B = du_ab0 - du_b0."""
    for v in (du_a0, du_b0, du_ab0):
        if not 0.0 <= v <= 1.0:
            raise ConfigurationError(f"utility must be in [0, 1], got {v}")
    return np.array([du_a0, du_b0, du_ab0, 0.0])


def assign_utilities(spec, launch, n: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """Per-agent (n, m) utility array; non-adoption column fixed at 0.

    With a launch plan, product B's column becomes the improved utility of
    each agent's own du_A.
    """
    u = np.zeros((n, m))
    if isinstance(spec, HomogeneousUtilities):
        u[:, :m - 1] = spec.values
        if launch is not None:
            u[:, DELAYED_PRODUCT] = improved_utility(spec.values[0], launch.t_b, launch.tau)
        return u
    # Heterogeneous: bucket the population, then shuffle the assignment.
    counts = spec.counts(n)
    du_a = np.repeat([du for _, du in spec.groups], counts)
    du_a = du_a[rng.permutation(n)]
    u[:, 0] = du_a
    if launch is None:
        u[:, DELAYED_PRODUCT] = du_a
    else:
        u[:, DELAYED_PRODUCT] = du_a + (1.0 - du_a) * np.tanh(launch.t_b / launch.tau)
    return u


def preset(
    name: str,
    *,
    grid: GridSpec | None = None,
    p_r: float | None = None,
    temperature: float | None = None,
    gamma_a: int = 125,
    gamma_b: int | None = None,
    t_b: int = 0,
    seed: int = 1,
    replications: int = 1,
    max_ticks: int = 500,
    saturation_window: int = 5,
) -> Scenario:
    """Build the scenario for one of the figure experiments (fig1..fig5).

    The grid may be overridden for fast tests; innovator rates stay literal
    (agents per tick), so on smaller grids the target quota fills sooner.
    """
    if name not in PRESET_NAMES:
        raise ValueError(f"unknown preset {name!r}")
    grid = grid or DEFAULT_GRID
    p_r = 0.0 if p_r is None else p_r
    temperature = 0.0 if temperature is None else temperature
    common = dict(
        grid=grid,
        p_r=p_r,
        temperature=temperature,
        seed=seed,
        replications=replications,
        max_ticks=max_ticks,
        saturation_window=saturation_window,
    )
    rate_a = gamma_a
    if name == "fig1":
        return Scenario(
            options="three",
            utilities=HomogeneousUtilities((0.6, 0.6)),
            innovators=(
                InnovatorSchedule(product=0, rate=rate_a),
                InnovatorSchedule(product=1, rate=rate_a),
            ),
            **common,
        )
    if name == "fig2":
        rate_b = gamma_b if gamma_b is not None else 1000
        return Scenario(
            options="three",
            utilities=HomogeneousUtilities((0.6, 0.6)),
            innovators=(
                InnovatorSchedule(product=0, rate=rate_a),
                InnovatorSchedule(product=1, rate=rate_b),
            ),
            **common,
        )
    if name in ("fig3", "fig4"):
        launch = LaunchPlan(t_b=t_b, tau=DEFAULT_TAU)
        if name == "fig3":
            utilities = HomogeneousUtilities((0.6, 0.6))
        else:
            utilities = HeterogeneityDistribution(((0.4, 0.6), (0.4, 0.7), (0.2, 0.4)))
        return Scenario(
            options="three",
            utilities=utilities,
            innovators=(
                InnovatorSchedule(product=0, rate=rate_a),
                InnovatorSchedule(product=1, rate=rate_a, start_tick=t_b),
            ),
            launch=launch,
            **common,
        )
    # fig5: four options, homogeneous utilities, innovators for A and B only
    # (the bundle is reached through transitions).
    return Scenario(
        options="four",
        utilities=HomogeneousUtilities((0.7, 0.65, 0.6)),
        innovators=(
            InnovatorSchedule(product=0, rate=rate_a),
            InnovatorSchedule(product=1, rate=rate_a),
        ),
        **common,
    )


@dataclass
class ReplicateStats:
    """Aggregates over n replicated runs of one scenario (seed, seed+1, ...)."""

    labels: tuple[str, ...]
    mean: np.ndarray  # (ticks, M) per-tick mean fractions
    std: np.ndarray  # (ticks, M) per-tick standard deviation
    final_mean: np.ndarray  # (M,) mean shares at the end of each run
    saturation_ticks: tuple
    mean_saturation_tick: float | None
    results: list[RunResult] = field(repr=False, default_factory=list)


def replicate(scenario: Scenario, n_runs: int | None = None) -> ReplicateStats:
    """Run the scenario with consecutive seeds and aggregate the series.

    Shorter series are padded with their final row so runs align by tick.
    """
    n_runs = scenario.replications if n_runs is None else n_runs
    if n_runs < 1:
        raise ConfigurationError("replications must be >= 1")
    results = [simulation.run(replace(scenario, seed=scenario.seed + r)) for r in range(n_runs)]
    labels = results[0].series.labels
    length = max(len(r.series) for r in results)
    stacked = np.stack([
        np.concatenate([
            r.series.data,
            np.repeat(r.series.data[-1:], length - len(r.series), axis=0),
        ])
        for r in results
    ])
    sat = [r.saturation_tick for r in results]
    saturated = [t for t in sat if t is not None]
    return ReplicateStats(
        labels=labels,
        mean=stacked.mean(axis=0),
        std=stacked.std(axis=0),
        final_mean=stacked[:, -1, :].mean(axis=0),
        saturation_ticks=tuple(sat),
        mean_saturation_tick=float(np.mean(saturated)) if saturated else None,
        results=results,
    )
