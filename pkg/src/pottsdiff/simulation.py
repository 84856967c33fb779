"""Tick-by-tick dynamics: innovator seeding, synchronous sweeps, saturation.

The sweep is synchronous: every active agent evaluates its neighborhood
against the previous tick's state array and all updates land at once.  Each
tick consumes one uniform per agent (index order) from a tick-keyed stream,
so results do not depend on how the sweep is scheduled.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import rng as streams
from .decision import OptionModel
from .errors import ConfigurationError
from .network import Network

log = logging.getLogger(__name__)


@dataclass
class SimulationState:
    """Tick counter plus the per-agent state array and its state counts."""

    tick: int
    states: np.ndarray
    counts: np.ndarray

    @classmethod
    def initial(cls, n: int, opts: OptionModel) -> "SimulationState":
        states = np.full(n, opts.non_adoption, dtype=np.int64)
        counts = np.bincount(states, minlength=opts.m)
        return cls(tick=0, states=states, counts=counts)

    def fractions(self) -> np.ndarray:
        return self.counts / len(self.states)


@dataclass(frozen=True)
class InnovatorSchedule:
    """Linear introduction of innovators for one product, up to a quota."""

    product: int
    rate: int
    target_fraction: float = 0.025
    start_tick: int = 0

    def __post_init__(self):
        if self.rate < 1:
            raise ConfigurationError("innovator rate must be >= 1")
        if not 0.0 < self.target_fraction < 1.0:
            raise ConfigurationError("innovator target fraction must be in (0, 1)")
        if self.start_tick < 0:
            raise ConfigurationError("innovator start tick must be >= 0")

    def quota(self, n: int) -> int:
        return math.floor(self.target_fraction * n)


class TimeSeries:
    """Per-tick adoption fractions n_k(t), one row per tick."""

    def __init__(self, labels):
        self.labels = tuple(labels)
        self._rows = []

    def append(self, fractions: np.ndarray) -> None:
        self._rows.append(np.asarray(fractions, dtype=float))

    @property
    def data(self) -> np.ndarray:
        return np.array(self._rows) if self._rows else np.empty((0, len(self.labels)))

    def __len__(self):
        return len(self._rows)


def seed_innovators(state, schedules, placed, non_adoption, rng, warned=None) -> SimulationState:
    """Place this tick's innovators directly into their product states.

    Schedules run in product-index order; innovators are drawn uniformly
    without replacement from the current non-adopters.  `placed` tracks the
    running total per schedule (same order as `schedules`) and is updated in
    place.  Called once per tick, before the decision sweep.  `warned` (a
    set of schedule indices) suppresses repeated shortfall warnings across
    ticks.
    """
    order = sorted(range(len(schedules)), key=lambda i: schedules[i].product)
    n = len(state.states)
    for i in order:
        sched = schedules[i]
        remaining = sched.quota(n) - placed[i]
        if sched.start_tick > state.tick or remaining <= 0:
            continue
        pool = np.flatnonzero(state.states == non_adoption)
        want = min(sched.rate, remaining)
        if want > len(pool):
            if warned is None or i not in warned:
                log.warning(
                    "only %d non-adopters left for product %d (wanted %d)",
                    len(pool), sched.product, want,
                )
                if warned is not None:
                    warned.add(i)
            want = len(pool)
        if want == 0:
            continue
        chosen = rng.choice(pool, size=want, replace=False)
        state.states[chosen] = sched.product
        placed[i] += want
    state.counts = np.bincount(state.states, minlength=len(state.counts))
    return state


def _neighbor_state_counts(net: Network, states: np.ndarray, m: int) -> np.ndarray:
    keys = net.row_ids * m + states[net.indices]
    return np.bincount(keys, minlength=net.n * m).reshape(net.n, m)


def step(state, net, utilities, temperature, opts, rng) -> SimulationState:
    """One synchronous decision sweep over all agents.

    `utilities` is the (N, M) per-agent utility array.  Agents in absorbing
    states are untouched; everyone else samples its next state from the
    kernel probabilities.  The whole sweep reads the previous tick's state
    array only.
    """
    n, m = net.n, opts.m
    draws = rng.random(n)  # one uniform per agent, consumed by index
    nu = _neighbor_state_counts(net, state.states, m) / net.degrees[:, None]
    fld = nu + utilities
    allowed = opts.allowed[state.states]
    active = opts.active[state.states]
    masked = np.where(allowed, fld, -np.inf)
    top = masked.max(axis=1)
    if temperature == 0.0:
        weights = (masked == top[:, None]).astype(float)
    else:
        weights = np.exp((masked - top[:, None]) / temperature)
    probs = weights / weights.sum(axis=1, keepdims=True)
    cum = np.cumsum(probs, axis=1)
    nxt = (cum <= draws[:, None]).sum(axis=1)
    # Guard against rounding pushing the scan past the last allowed state.
    last_allowed = m - 1 - np.argmax(allowed[:, ::-1], axis=1)
    nxt = np.minimum(nxt, last_allowed)
    state.states = np.where(active, nxt, state.states)
    state.tick += 1
    state.counts = np.bincount(state.states, minlength=m)
    return state


def detect_saturation(series: TimeSeries, window: int = 5):
    """First tick t such that the fractions were unchanged over the last
    `window` ticks (rows t-window..t identical); None if that never happens."""
    if window < 1:
        raise ValueError("window must be >= 1")
    data = series.data
    for t in range(window, len(data)):
        if (data[t - window:t + 1] == data[t]).all():
            return t
    return None


@dataclass
class RunResult:
    series: TimeSeries
    final_states: np.ndarray
    saturation_tick: int | None
    saturated: bool
    placed: tuple[int, ...] = field(default=())


def run(scenario) -> RunResult:
    """Run one scenario realization: seed, sweep, record, stop at saturation
    (or at max_ticks, flagged unsaturated)."""
    from . import scenarios as scn_mod  # deferred: scenarios imports this module

    opts = scn_mod.option_model(scenario)
    net = build_network(scenario)
    utilities = scn_mod.assign_utilities(
        scenario.utilities,
        scenario.launch,
        net.n,
        opts.m,
        streams.substream(scenario.seed, streams.UTILITIES),
    )
    schedules = scenario.innovators
    locked = None
    if scenario.launch is not None and scenario.launch.t_b > 0:
        locked = opts.lock_target(scn_mod.DELAYED_PRODUCT)

    state = SimulationState.initial(net.n, opts)
    series = TimeSeries(opts.labels)
    series.append(state.fractions())
    placed = [0] * len(schedules)
    warned = set()
    window = scenario.saturation_window
    saturation_tick = None
    while state.tick < scenario.max_ticks:
        cur_opts = locked if locked is not None and state.tick < scenario.launch.t_b else opts
        seed_innovators(
            state, schedules, placed, opts.non_adoption,
            streams.substream(scenario.seed, streams.INNOVATORS, state.tick),
            warned=warned,
        )
        step(
            state, net, utilities, scenario.temperature, cur_opts,
            streams.substream(scenario.seed, streams.DECISIONS, state.tick),
        )
        series.append(state.fractions())
        if len(series) > window:
            tail = series.data[-(window + 1):]
            if (tail == tail[-1]).all():
                saturation_tick = state.tick
                break
    return RunResult(
        series=series,
        final_states=state.states,
        saturation_tick=saturation_tick,
        saturated=saturation_tick is not None,
        placed=tuple(placed),
    )


def build_network(scenario) -> Network:
    """Lattice plus (optional) rewiring, from the scenario's seed."""
    from .network import build_moore_lattice, rewire

    net = build_moore_lattice(scenario.grid)
    if scenario.p_r > 0:
        net = rewire(net, scenario.p_r, streams.substream(scenario.seed, streams.REWIRE))
    return net
