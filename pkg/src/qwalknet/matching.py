"""
Maximum matchings and the matching bound on source-target entanglement.

A matching of the double cover B(G) is a set of arcs with pairwise distinct
tails and pairwise distinct heads. The Schmidt rank of a walker state can
not exceed the largest such matching inside the state's support, and an
equal-weight superposition over a maximum matching reaches ``log s*``. So
the entanglement capacity of G is ``log`` of the maximum matching size of
B(G).

Bipartite matchings use Hopcroft-Karp; matchings of G itself use Edmonds'
blossom algorithm. Both seed the search with a greedy matching. Only the
matching *size* is canonical; the returned witness is whatever the search
order produces.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .arcs import ArcSpace, BipartiteCover, bipartite_double_cover
from .entanglement import SUPPORT_TOL, log_fn
from .graphs import Graph, derive_seed, generate_ba, generate_er
from .walk import WalkerState

__all__ = [
    "Matching",
    "CapacityReport",
    "ScatterRecord",
    "COUNT_LIMIT",
    "hopcroft_karp",
    "max_matching_bipartite",
    "max_matching_general",
    "is_bipartite_matching",
    "is_graph_matching",
    "support_edges",
    "largest_matching_in_support",
    "entanglement_capacity",
    "count_maximum_matchings",
    "solve_fixed_point",
    "karp_sipser_expected",
    "matching_scatter",
    "default_scatter_params",
    "scatter_averages",
    "fit_slope",
]

COUNT_LIMIT = 16


@dataclass(frozen=True)
class Matching:
    """
    Matched pairs.

    For the double cover a pair is ``(source, target)``, i.e. the arc
    ``source -> target``. For a matching of G it is an edge ``(u, v)``.
    """

    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def arc_indices(self, space: ArcSpace) -> list[int]:
        return [space.arc_of(s, t) for s, t in self.pairs]


@dataclass(frozen=True)
class CapacityReport:
    max_matching_size: int
    capacity: float
    witness: Matching
    log_base: str = "e"


def is_bipartite_matching(pairs) -> bool:
    pairs = list(pairs)
    return len({s for s, _ in pairs}) == len(pairs) == len({t for _, t in pairs})


def is_graph_matching(g: Graph, pairs) -> bool:
    ends = [x for e in pairs for x in e]
    return len(set(ends)) == len(ends) and all(g.has_edge(u, v) for u, v in pairs)


# --- Hopcroft-Karp -----------------------------------------------------------


def hopcroft_karp(n_left: int, n_right: int, adj: Sequence[Sequence[int]]) -> list[int]:
    """
    Maximum matching of a bipartite graph given as left adjacency lists.

    Returns ``match_left`` with the matched right vertex of every left
    vertex, or -1.
    """
    inf = n_left + n_right + 1
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    for u in range(n_left):
        for v in adj[u]:
            if match_r[v] == -1:
                match_l[u] = v
                match_r[v] = u
                break
    while True:
        dist = [inf] * n_left
        queue = deque(u for u in range(n_left) if match_l[u] == -1)
        for u in queue:
            dist[u] = 0
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    found = True
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            return match_l
        ptr = [0] * n_left
        for root in range(n_left):
            if match_l[root] != -1:
                continue
            stack = [root]
            path = []
            while stack:
                u = stack[-1]
                if ptr[u] < len(adj[u]):
                    v = adj[u][ptr[u]]
                    ptr[u] += 1
                    w = match_r[v]
                    if w == -1:
                        path.append(v)
                        for uu, vv in zip(stack, path):
                            match_l[uu] = vv
                            match_r[vv] = uu
                        break
                    if dist[w] == dist[u] + 1:
                        path.append(v)
                        stack.append(w)
                else:
                    dist[u] = inf
                    stack.pop()
                    if path:
                        path.pop()


def max_matching_bipartite(cover: BipartiteCover) -> Matching:
    match_l = hopcroft_karp(cover.n_sources, cover.n_targets, cover.source_adjacency())
    return Matching(tuple((s, t) for s, t in enumerate(match_l) if t != -1))


# --- Edmonds blossom ---------------------------------------------------------


def max_matching_general(g: Graph) -> Matching:
    """Maximum-cardinality matching of G by Edmonds' blossom algorithm."""
    n = g.n_nodes
    adj = g.neighbors
    match = [-1] * n
    for u in range(n):
        if match[u] == -1:
            for v in adj[u]:
                if match[v] == -1:
                    match[u] = v
                    match[v] = u
                    break

    def find_augmenting(root: int) -> bool:
        parent = [-1] * n
        base = list(range(n))
        used = [False] * n
        used[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    b = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, b, to, blossom)
                    mark_path(to, b, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = b
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        while to != -1:
                            pv = parent[to]
                            nxt = match[pv]
                            match[to] = pv
                            match[pv] = to
                            to = nxt
                        return True
                    used[match[to]] = True
                    queue.append(match[to])
        return False

    for root in range(n):
        if match[root] == -1 and adj[root]:
            find_augmenting(root)
    return Matching(tuple((u, v) for u, v in enumerate(match) if v > u))


# --- matching bound on walker states -----------------------------------------


def support_edges(state: WalkerState, threshold: float = SUPPORT_TOL) -> list[tuple[int, int]]:
    """Cover edges ``(n+, m-)`` with ``|psi(n->m)| > threshold``."""
    space = state.space
    keep = np.abs(state.amplitudes) > threshold
    return list(zip(space.tails[keep].tolist(), space.heads[keep].tolist()))


def largest_matching_in_support(state: WalkerState, threshold: float = SUPPORT_TOL) -> int:
    n = state.space.n_nodes
    adj = [[] for _ in range(n)]
    for s, t in support_edges(state, threshold):
        adj[s].append(t)
    return sum(1 for t in hopcroft_karp(n, n, adj) if t != -1)


def entanglement_capacity(g: Graph, log_base="e") -> CapacityReport:
    if g.n_edges == 0:
        raise ValueError("capacity is undefined for an edgeless graph")
    witness = max_matching_bipartite(bipartite_double_cover(g))
    size = len(witness)
    return CapacityReport(size, float(log_fn(log_base)(size)), witness, str(log_base))


def count_maximum_matchings(cover: BipartiteCover) -> int:
    """Exact number of maximum matchings of a small cover (<= 16 nodes per side)."""
    if cover.n_sources > COUNT_LIMIT or cover.n_targets > COUNT_LIMIT:
        raise ValueError(f"exhaustive count limited to {COUNT_LIMIT} nodes per side")
    adj = [tuple(a) for a in cover.source_adjacency()]
    best = len(max_matching_bipartite(cover))
    n = cover.n_sources

    @lru_cache(maxsize=None)
    def count(i: int, used: int, size: int) -> int:
        if size + (n - i) < best:
            return 0
        if i == n:
            return 1
        total = count(i + 1, used, size)
        for t in adj[i]:
            if not used >> t & 1:
                total += count(i + 1, used | 1 << t, size + 1)
        return total

    return count(0, 0, 0)


# --- Karp-Sipser expectation for Erdos-Renyi graphs --------------------------


def _fixed_point_residual(y, kbar: float):
    return y - np.exp(-kbar * np.exp(-kbar * y))


def solve_fixed_point(kbar: float, grid: int = 10_000, tol: float = 1e-12) -> float:
    """
    Smallest ``y`` in [0, 1] with ``y = exp(-kbar exp(-kbar y))``.

    A uniform scan brackets the first sign change, then bisection narrows
    the bracket below ``tol``.
    """
    if not kbar > 0:
        raise ValueError("kbar must be positive")
    ys = np.linspace(0.0, 1.0, grid + 1)
    f = _fixed_point_residual(ys, kbar)
    hits = np.flatnonzero((f[:-1] == 0) | (np.sign(f[:-1]) * np.sign(f[1:]) < 0))
    if f[-1] == 0 and not hits.size:
        return 1.0
    if not hits.size:
        raise ArithmeticError(f"no root of the fixed-point equation in [0, 1] for kbar={kbar}")
    i = int(hits[0])
    lo, hi = float(ys[i]), float(ys[i + 1])
    flo = float(f[i])
    if flo == 0:
        return lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = float(_fixed_point_residual(mid, kbar))
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def karp_sipser_expected(n: int, kbar: float) -> float:
    """Expected maximum matching size of an ER graph with mean degree ``kbar``."""
    y = solve_fixed_point(kbar)
    return 0.5 * n * (2.0 - y - (1.0 + kbar * y) * math.exp(-kbar * y))


# --- G versus B(G) scatter -----------------------------------------------------


@dataclass(frozen=True)
class ScatterRecord:
    model: str
    n_nodes: int
    param: float
    realization: int
    graph_matching: int
    cover_matching: int


def matching_scatter(model: str, n: int, params: Sequence[float], realizations: int,
                     seed: int, require_connected: bool = False) -> list[ScatterRecord]:
    """
    Maximum matching of G and of B(G) for every realization of a sweep.

    ``model`` is ``"er"`` (params are edge probabilities) or ``"ba"``
    (params are attachment counts). Realization ``r`` of parameter ``k``
    uses the seed derived from ``(seed, k, r)``.
    """
    out = []
    for k, param in enumerate(params):
        for r in range(realizations):
            s = derive_seed(seed, k, r)
            if model == "er":
                g = generate_er(n, float(param), s, require_connected=require_connected)
            elif model == "ba":
                g = generate_ba(n, int(param), s)
            else:
                raise ValueError(f"unknown model {model!r}")
            out.append(ScatterRecord(model, n, float(param), r, len(max_matching_general(g)),
                                     len(max_matching_bipartite(bipartite_double_cover(g)))))
    return out


def default_scatter_params(model: str, n: int) -> list[float]:
    """
    Default sweep grid: mean degree 0.25 .. 6 for ER (20 points at n=25,
    10 otherwise) and m = 1 .. 6 for BA.
    """
    if model == "er":
        return (np.linspace(0.25, 6.0, 20 if n == 25 else 10) / (n - 1)).tolist()
    if model == "ba":
        return [m for m in range(1, 7) if m < n]
    raise ValueError(f"unknown model {model!r}")


def scatter_averages(records: Sequence[ScatterRecord]) -> list[tuple[int, float, float, float]]:
    """``(n_nodes, param, mean |M*(G)|, mean |M*(B(G))|)`` per sweep point, in first-seen order."""
    groups: dict[tuple[int, float], list[ScatterRecord]] = {}
    for rec in records:
        groups.setdefault((rec.n_nodes, rec.param), []).append(rec)
    return [(n, p, float(np.mean([r.graph_matching for r in rs])), float(np.mean([r.cover_matching for r in rs])))
            for (n, p), rs in groups.items()]


def fit_slope(xs, ys) -> float:
    """Ordinary least-squares slope of ``ys`` against ``xs``."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    dx = xs - xs.mean()
    den = float(dx @ dx)
    if den == 0:
        raise ValueError("xs have zero variance")
    return float(dx @ (ys - ys.mean()) / den)
