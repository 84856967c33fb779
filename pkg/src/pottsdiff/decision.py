"""The M-option Boltzmann-Gibbs decision kernel.

An agent looking at its contacts sees a local field m_k = nu_k + u_k per
option k (fraction of contacts in state k plus own utility for k).  At
temperature T > 0 the next state is drawn from a softmax over the options
reachable from the current state; at T = 0 the probability mass splits
uniformly over the exact argmax of the field.  All operations here are pure
functions, safe for concurrent evaluation.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigurationError
from .network import Network

PROB_SUM_TOL = 1e-9


class OptionModel:
    """A discrete choice set plus its allowed-transition relation.

    States are indexed 0..M-1; product states come first and the
    non-adoption state is last.  Self-transitions are always allowed.
    """

    __slots__ = ("labels", "non_adoption", "allowed", "active")

    def __init__(self, labels, transitions, non_adoption):
        if len(labels) < 2:
            raise ConfigurationError("an option model needs at least 2 states")
        m = len(labels)
        allowed = np.zeros((m, m), dtype=bool)
        np.fill_diagonal(allowed, True)
        for frm, to in transitions:
            allowed[frm, to] = True
        self.labels = tuple(labels)
        self.non_adoption = non_adoption
        self.allowed = allowed
        # States with any non-self outgoing transition re-evaluate each tick.
        self.active = allowed.sum(axis=1) > 1

    @property
    def m(self) -> int:
        return len(self.labels)

    def is_absorbing(self, state: int) -> bool:
        return not self.active[state]

    def lock_target(self, target: int) -> "OptionModel":
        """Copy with all transitions into `target` removed (used while a
        delayed product is not yet on the market)."""
        pairs = [
            (i, j)
            for i in range(self.m)
            for j in range(self.m)
            if self.allowed[i, j] and i != j and j != target
        ]
        return OptionModel(self.labels, pairs, self.non_adoption)


def three_options() -> OptionModel:
    """Products A, B and non-adoption; adopters never switch or disadopt."""
    return OptionModel(("A", "B", "0"), [(2, 0), (2, 1)], non_adoption=2)


def four_options() -> OptionModel:
    """Products A, B, the AB bundle and non-adoption; A and B owners may
    additionally pick up the other product (-> AB), nothing is dropped."""
    return OptionModel(
        ("A", "B", "AB", "0"),
        [(3, 0), (3, 1), (3, 2), (0, 2), (1, 2)],
        non_adoption=3,
    )


def neighbor_fractions(net: Network, states: np.ndarray, agent: int, m: int) -> np.ndarray:
    """Fraction of the agent's contacts in each of the m states."""
    contacts = net.contacts(agent)
    counts = np.bincount(states[contacts], minlength=m)
    return counts / len(contacts)


def local_field(nu: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Componentwise field m = nu + u."""
    nu = np.asarray(nu, dtype=float)
    u = np.asarray(u, dtype=float)
    if nu.shape != u.shape:
        raise ValueError(f"length mismatch: {nu.shape} vs {u.shape}")
    return nu + u


def choice_probabilities(
    m: np.ndarray, temperature: float, current: int, opts: OptionModel
) -> np.ndarray:
    """Boltzmann-Gibbs choice probabilities over the allowed target set.

    Requires T > 0; the T = 0 limit is an exact special case handled by
    zero_temperature_probabilities.  Overflow-safe for any temperature.
    """
    if temperature <= 0:
        raise ValueError("choice_probabilities requires T > 0")
    m = np.asarray(m, dtype=float)
    if not np.all(np.isfinite(m)):
        raise FloatingPointError("non-finite local field")
    mask = opts.allowed[current]
    shifted = np.where(mask, m, -np.inf)
    weights = np.exp((shifted - shifted.max()) / temperature)
    return weights / weights.sum()


def zero_temperature_probabilities(
    m: np.ndarray, current: int, opts: OptionModel
) -> np.ndarray:
    """Exact T = 0 rule: uniform over the argmax of the field among allowed
    targets (ties share 1/(1+l) each)."""
    m = np.asarray(m, dtype=float)
    mask = opts.allowed[current]
    shifted = np.where(mask, m, -np.inf)
    ties = shifted == shifted.max()
    return ties / ties.sum()


def sample_state(p: np.ndarray, rng: np.random.Generator) -> int:
    """Draw a state index from p with a single uniform and a cumulative scan
    in index order."""
    p = np.asarray(p, dtype=float)
    total = p.sum()
    if not np.isfinite(total) or abs(total - 1.0) > PROB_SUM_TOL or p.min() < 0:
        raise FloatingPointError("malformed probability vector")
    u = rng.random()
    acc = 0.0
    for k, pk in enumerate(p):
        acc += pk
        if u < acc:
            return k
    # Rounding left u >= acc; fall back to the last state with mass.
    return int(np.flatnonzero(p > 0)[-1])
