"""Moore-neighborhood lattices and Watts-Strogatz style rewiring.

Agents are identified by row-major grid ids (0..N-1).  A Network is a plain
undirected adjacency structure stored in CSR form with sorted contact lists;
it is immutable once built, so a finished instance can be shared freely.

RNG consumption order during rewiring is part of the reproducibility
contract: one uniform per edge, drawn as a single block in canonical edge
order (smaller endpoint first, then larger), followed by the integer
redraws for the selected edges, again in canonical order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError


@dataclass(frozen=True)
class GridSpec:
    """Dimensions of the square grid of agents."""

    width: int
    height: int

    def __post_init__(self):
        if self.width < 3 or self.height < 3:
            raise ConfigurationError(
                f"grid must be at least 3x3, got {self.width}x{self.height}"
            )

    @property
    def n(self) -> int:
        return self.width * self.height


class Network:
    """Undirected contact lists for N agents, CSR layout, sorted per agent."""

    __slots__ = ("n", "indptr", "indices", "_row_ids")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray):
        self.n = n
        self.indptr = indptr
        self.indices = indices
        self._row_ids = None

    @classmethod
    def from_edges(cls, n: int, edges: np.ndarray) -> "Network":
        """Build from an (E, 2) array of undirected edges (any order)."""
        edges = np.asarray(edges, dtype=np.int64)
        if edges.size and (edges.min() < 0 or edges.max() >= n):
            raise ConfigurationError("edge endpoint out of range")
        if np.any(edges[:, 0] == edges[:, 1]):
            raise ConfigurationError("self-loops are not allowed")
        a = np.concatenate([edges[:, 0], edges[:, 1]])
        b = np.concatenate([edges[:, 1], edges[:, 0]])
        order = np.lexsort((b, a))
        a, b = a[order], b[order]
        dup = (a[1:] == a[:-1]) & (b[1:] == b[:-1])
        if np.any(dup):
            raise ConfigurationError("duplicate edges are not allowed")
        counts = np.bincount(a, minlength=n)
        if np.any(counts == 0):
            raise ConfigurationError("every agent must keep at least one contact")
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return cls(n, indptr, b)

    def contacts(self, agent: int) -> np.ndarray:
        """Sorted contact ids of one agent."""
        self._check_agent(agent)
        return self.indices[self.indptr[agent]:self.indptr[agent + 1]]

    def degree(self, agent: int) -> int:
        self._check_agent(agent)
        return int(self.indptr[agent + 1] - self.indptr[agent])

    def _check_agent(self, agent):
        if not 0 <= agent < self.n:
            raise ValueError(f"agent id {agent} out of range [0, {self.n})")

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    @property
    def row_ids(self) -> np.ndarray:
        """Agent id of each CSR entry (for vectorized neighbor counting)."""
        if self._row_ids is None:
            self._row_ids = np.repeat(np.arange(self.n), self.degrees)
        return self._row_ids

    def edges(self) -> np.ndarray:
        """Canonical (E, 2) edge array, each row (a, b) with a < b, sorted."""
        mask = self.row_ids < self.indices
        return np.column_stack([self.row_ids[mask], self.indices[mask]])

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    __hash__ = None


def build_moore_lattice(grid: GridSpec) -> Network:
    """Regular lattice with 8-neighbor (Moore) contacts, no wraparound."""
    w, h = grid.width, grid.height
    ids = np.arange(grid.n).reshape(h, w)
    pairs = []
    # East, south, south-east, south-west; each yields canonical a < b edges.
    for dr, dc in ((0, 1), (1, 0), (1, 1), (1, -1)):
        c0, c1 = max(0, -dc), w - max(0, dc)
        src = ids[0:h - dr, c0:c1]
        dst = ids[dr:h, c0 + dc:c1 + dc]
        pairs.append(np.column_stack([src.ravel(), dst.ravel()]))
    return Network.from_edges(grid.n, np.concatenate(pairs))


def rewire(net: Network, p_r: float, rng: np.random.Generator) -> Network:
    """Rewire each edge with probability p_r, preserving the edge count.

    Each edge is visited once in canonical order; when selected, the
    canonically smaller endpoint is kept and the other is redrawn uniformly
    over all agents, rejecting self-loops and already-present edges.
    """
    if not 0.0 <= p_r <= 1.0:
        raise ConfigurationError(f"rewiring probability must be in [0, 1], got {p_r}")
    edges = net.edges()
    selected = rng.random(len(edges)) < p_r
    if not selected.any():
        return net
    edge_set = set(map(tuple, edges.tolist()))
    for i in np.flatnonzero(selected):
        a, b = int(edges[i, 0]), int(edges[i, 1])
        edge_set.remove((a, b))
        while True:
            c = int(rng.integers(net.n))
            if c == a:
                continue
            e = (a, c) if a < c else (c, a)
            if e in edge_set:
                continue
            edge_set.add(e)
            break
    return Network.from_edges(net.n, np.array(sorted(edge_set), dtype=np.int64))


def write_edges(net: Network, path, seed: int, p_r: float) -> None:
    """Dump the edge list, one "a b" line per edge with a < b."""
    edges = net.edges()
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(f"# nodes={net.n} edges={net.edge_count} seed={seed} p_r={p_r!r}\n")
        for a, b in edges:
            fh.write(f"{a} {b}\n")
