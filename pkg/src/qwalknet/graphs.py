"""
Simple undirected graphs, random-graph generators and structural metrics.

Graphs are immutable values: a node count plus a canonical, sorted tuple of
edges ``(u, v)`` with ``u < v``. Node ids are dense 0-based integers.

Random generators are seeded through :class:`numpy.random.SeedSequence`, so
an identical ``(n, p or m, seed)`` always reproduces the identical edge set.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

__all__ = [
    "Graph",
    "GraphMetrics",
    "GraphError",
    "ConnectivityError",
    "ER_RETRY_CAP",
    "make_rng",
    "derive_seed",
    "generate_er",
    "generate_ba",
    "generate_cycle",
    "generate_path",
    "complete_graph",
    "star_graph",
    "prism_graph",
    "petersen_graph",
    "parse_edge_list",
    "format_edge_list",
    "average_clustering",
    "is_connected",
    "metrics",
]

ER_RETRY_CAP = 10_000


class GraphError(ValueError):
    """Invalid graph input or generator parameters."""


class ConnectivityError(GraphError):
    """Rejection sampling for a connected graph hit the retry cap."""


def make_rng(seed: int, *key: int) -> np.random.Generator:
    """Deterministic generator for ``seed`` and an optional spawn key."""
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key)))


def derive_seed(seed: int, *key: int) -> int:
    """64-bit child seed of ``seed`` for the spawn key ``key``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on nodes ``0 .. n_nodes - 1``."""

    n_nodes: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n_nodes < 0:
            raise GraphError("n_nodes must be nonnegative")
        canon = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            if not (0 <= u < self.n_nodes and 0 <= v < self.n_nodes):
                raise GraphError(f"edge ({u}, {v}) out of range for {self.n_nodes} nodes")
            canon.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @classmethod
    def from_edges(cls, n_nodes: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(int(n_nodes), tuple(edges))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbor tuple of every node."""
        adj = [[] for _ in range(self.n_nodes)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n_nodes, dtype=np.int64)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n_nodes, self.n_nodes), dtype=np.int64)
        if self.edges:
            e = np.asarray(self.edges)
            a[e[:, 0], e[:, 1]] = 1
            a[e[:, 1], e[:, 0]] = 1
        return a

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbors[u]

    def relabel(self, perm) -> "Graph":
        """Graph with node ``i`` renamed to ``perm[i]``."""
        perm = [int(p) for p in perm]
        return Graph(self.n_nodes, tuple((perm[u], perm[v]) for u, v in self.edges))


@dataclass(frozen=True)
class GraphMetrics:
    mean_degree: float
    avg_clustering: float
    connected: bool
    max_degree: int


# --- generators ------------------------------------------------------------


def _er_draw(n: int, p: float, rng: np.random.Generator) -> Graph:
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return Graph(n, tuple(zip(iu[keep].tolist(), ju[keep].tolist())))


def generate_er(n: int, p: float, seed: int, require_connected: bool = False,
                retry_cap: int = ER_RETRY_CAP) -> Graph:
    """
    Erdos-Renyi G(n, p) graph.

    Each unordered pair is included independently with probability ``p``.
    With ``require_connected`` the whole graph is redrawn, attempt ``k``
    using the sub-seed ``(seed, k)``, until a connected draw appears.

    Raises
    ------
    GraphError
        If ``n < 1`` or ``p`` lies outside ``[0, 1]``.
    ConnectivityError
        If no connected realization appears within ``retry_cap`` attempts.
    """
    if n < 1:
        raise GraphError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability must lie in [0, 1], got {p}")
    if not require_connected:
        return _er_draw(n, p, make_rng(seed))
    for attempt in range(retry_cap):
        g = _er_draw(n, p, make_rng(seed, attempt))
        if is_connected(g):
            return g
    raise ConnectivityError(
        f"no connected G({n}, {p}) realization within {retry_cap} attempts; p is too small for this n")


def generate_ba(n: int, m: int, seed: int) -> Graph:
    """
    Barabasi-Albert preferential-attachment graph.

    Growth starts from a star on ``m + 1`` nodes (hub 0). Every later node
    attaches to ``m`` distinct existing nodes drawn without replacement with
    probability proportional to their current degree. The edge count is
    ``m + m * (n - m - 1)`` and the result is connected.
    """
    if not 1 <= m < n:
        raise GraphError(f"BA requires 1 <= m < n, got m={m}, n={n}")
    rng = make_rng(seed)
    deg = np.zeros(n, dtype=np.float64)
    edges = [(0, j) for j in range(1, m + 1)]
    deg[0] = m
    deg[1:m + 1] = 1
    for new in range(m + 1, n):
        w = deg[:new]
        targets = rng.choice(new, size=m, replace=False, p=w / w.sum())
        for t in targets.tolist():
            edges.append((t, new))
        deg[targets] += 1
        deg[new] = m
    return Graph(n, tuple(edges))


def generate_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 nodes")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def generate_path(n: int) -> Graph:
    if n < 1:
        raise GraphError("a path needs at least 1 node")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def star_graph(k: int) -> Graph:
    """Hub 0 joined to leaves ``1 .. k``."""
    return Graph(k + 1, tuple((0, j) for j in range(1, k + 1)))


def prism_graph() -> Graph:
    """Triangular prism: two triangles 0-1-2 and 3-4-5 joined by a perfect matching."""
    return Graph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


# --- edge-list text format -------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """
    Parse whitespace-separated integer pairs, one edge per line.

    Blank lines and lines starting with ``#`` are skipped. ``n_nodes`` is one
    more than the largest id, so gaps become isolated nodes. Reversed and
    repeated pairs collapse to one edge.
    """
    edges = []
    top = -1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two node ids, got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer token in {line!r}") from None
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: negative node id")
        if u == v:
            raise GraphError(f"line {lineno}: self-loop at node {u}")
        edges.append((u, v))
        top = max(top, u, v)
    return Graph(top + 1, tuple(edges))


def format_edge_list(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges)


# --- metrics ---------------------------------------------------------------


def average_clustering(g: Graph) -> float:
    """Mean local clustering coefficient; nodes of degree < 2 count as 0."""
    if g.n_nodes == 0:
        return 0.0
    a = g.adjacency_matrix().astype(np.float64)
    tri = ((a @ a) * a).sum(axis=1) / 2.0
    d = a.sum(axis=1)
    pairs = d * (d - 1) / 2.0
    c = np.divide(tri, pairs, out=np.zeros_like(tri), where=pairs > 0)
    return float(c.mean())


def is_connected(g: Graph) -> bool:
    if g.n_nodes <= 1:
        return True
    seen = np.zeros(g.n_nodes, dtype=bool)
    seen[0] = True
    queue = deque([0])
    nbrs = g.neighbors
    while queue:
        u = queue.popleft()
        for v in nbrs[u]:
            if not seen[v]:
                seen[v] = True
                queue.append(v)
    return bool(seen.all())


def metrics(g: Graph) -> GraphMetrics:
    n = g.n_nodes
    return GraphMetrics(
        mean_degree=2.0 * g.n_edges / n if n else 0.0,
        avg_clustering=average_clustering(g),
        connected=is_connected(g),
        max_degree=int(g.degrees.max()) if n else 0,
    )
