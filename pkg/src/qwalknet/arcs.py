"""
Arc space (symmetric digraph) and bipartite double cover of a graph.

Every undirected edge ``{u, v}`` becomes the two arcs ``u->v`` and ``v->u``.
Arcs are indexed in lexicographic ``(tail, head)`` order, so the outgoing
arcs of node ``n`` form the contiguous block ``offsets[n]:offsets[n+1]``
sorted by head. This index is the basis of every amplitude vector.

The double cover keeps sources and targets in two separate index ranges of
size ``N``; cover edge ``(n, m)`` means source ``n+`` joined to target ``m-``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .graphs import Graph

__all__ = ["ArcSpace", "BipartiteCover", "symmetric_digraph", "bipartite_double_cover", "arc_of"]


@dataclass(frozen=True, eq=False)
class ArcSpace:
    """
    Indexed arcs of the symmetric digraph of ``graph``.

    Attributes
    ----------
    graph : Graph
    arcs : ndarray, shape (2|E|, 2)
        ``arcs[i] = (tail, head)``, lexicographically sorted.
    offsets : ndarray, shape (N + 1,)
        CSR offsets; ``out_arcs(n) == range(offsets[n], offsets[n+1])``.
    reverse_of : ndarray, shape (2|E|,)
        Index of the reversed arc ``(head, tail)``.
    """

    graph: Graph
    arcs: np.ndarray
    offsets: np.ndarray
    reverse_of: np.ndarray

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    @property
    def n_nodes(self) -> int:
        return self.graph.n_nodes

    @property
    def tails(self) -> np.ndarray:
        return self.arcs[:, 0]

    @property
    def heads(self) -> np.ndarray:
        return self.arcs[:, 1]

    def out_arcs(self, n: int) -> np.ndarray:
        return np.arange(self.offsets[n], self.offsets[n + 1])

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    @cached_property
    def _index(self) -> dict[tuple[int, int], int]:
        return {(int(t), int(h)): i for i, (t, h) in enumerate(self.arcs)}

    def arc_of(self, tail: int, head: int) -> int:
        try:
            return self._index[(int(tail), int(head))]
        except KeyError:
            raise KeyError(f"no arc {tail}->{head}") from None

    def arc_table(self) -> str:
        """CSV dump ``index,tail,head,reverse`` for debugging."""
        rows = ["index,tail,head,reverse"]
        rows += [f"{i},{t},{h},{r}" for i, ((t, h), r) in enumerate(zip(self.arcs.tolist(), self.reverse_of.tolist()))]
        return "\n".join(rows) + "\n"


@dataclass(frozen=True)
class BipartiteCover:
    """Double cover B(G): edge ``(s, t)`` joins source ``s+`` to target ``t-``."""

    n_sources: int
    n_targets: int
    edges: tuple[tuple[int, int], ...]

    def source_adjacency(self) -> list[list[int]]:
        adj = [[] for _ in range(self.n_sources)]
        for s, t in self.edges:
            adj[s].append(t)
        return adj


def symmetric_digraph(g: Graph) -> ArcSpace:
    n = g.n_nodes
    if g.n_edges:
        e = np.asarray(g.edges, dtype=np.int64)
        both = np.concatenate([e, e[:, ::-1]])
        order = np.lexsort((both[:, 1], both[:, 0]))
        arcs = both[order]
    else:
        arcs = np.zeros((0, 2), dtype=np.int64)
    counts = np.bincount(arcs[:, 0], minlength=n) if len(arcs) else np.zeros(n, dtype=np.int64)
    offsets = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    # lexicographic keys make reverse lookup a sorted search
    keys = arcs[:, 0] * max(n, 1) + arcs[:, 1]
    rev_keys = arcs[:, 1] * max(n, 1) + arcs[:, 0]
    reverse_of = np.searchsorted(keys, rev_keys).astype(np.int64)
    for a in (arcs, offsets, reverse_of):
        a.setflags(write=False)
    return ArcSpace(graph=g, arcs=arcs, offsets=offsets, reverse_of=reverse_of)


def bipartite_double_cover(g: Graph) -> BipartiteCover:
    """Cover edges listed in arc-index order, so edge ``i`` is arc ``i``."""
    space = symmetric_digraph(g)
    return BipartiteCover(g.n_nodes, g.n_nodes, tuple(map(tuple, space.arcs.tolist())))


def arc_of(space: ArcSpace, tail: int, head: int) -> int:
    return space.arc_of(tail, head)
