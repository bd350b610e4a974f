"""
Hadamard walk on a line segment, seen through both bipartitions.

The standard walk uses a spin-1/2 coin: ``up`` moves right and ``down``
moves left. Identifying ``|n, up> = |n -> n+1>`` and ``|n, down> = |n -> n-1>``
puts the same state on the arcs of a path graph, where the source-target
entropy is defined. The coin-walker entropy comes from the ``L x 2``
position/coin matrix.

The infinite line is replaced by ``n_sites >= 2 t_max + 3`` sites with the
walker starting in the middle, so amplitude never reaches the end sites and
the truncation is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arcs import symmetric_digraph
from .entanglement import entropy_from_values, schmidt_decompose, source_target_entropy
from .graphs import generate_path
from .walk import WalkerState

__all__ = ["HadamardSeries", "HADAMARD", "hadamard_line_walk", "line_coin_matrix"]

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)


@dataclass
class HadamardSeries:
    coin_walker: np.ndarray
    source_target: np.ndarray
    norm: np.ndarray
    final_coin_matrix: np.ndarray


def line_coin_matrix(state: WalkerState) -> np.ndarray:
    """``L x 2`` matrix ``[psi(n->n+1), psi(n->n-1)]`` of a path-graph state."""
    space = state.space
    phi = np.zeros((space.n_nodes, 2), dtype=np.complex128)
    right = space.heads > space.tails
    phi[space.tails[right], 0] = state.amplitudes[right]
    phi[space.tails[~right], 1] = state.amplitudes[~right]
    return phi


def hadamard_line_walk(n_sites: int, t_max: int, log_base="e",
                       initial_coin=(1 / np.sqrt(2), 1j / np.sqrt(2))) -> HadamardSeries:
    """
    Evolve the Hadamard walk from the middle site and record both entropies.

    The default initial coin is ``(|up> + i|down>)/sqrt(2)``. Returns series
    of length ``t_max + 1``.
    """
    if n_sites < 2 * t_max + 3:
        raise ValueError(f"segment of {n_sites} sites is too short for {t_max} steps; need {2 * t_max + 3}")
    space = symmetric_digraph(generate_path(n_sites))
    up = np.array([space.arc_of(x, x + 1) for x in range(n_sites - 1)])
    down = np.array([space.arc_of(x, x - 1) for x in range(1, n_sites)])

    phi = np.zeros((n_sites, 2), dtype=np.complex128)
    phi[n_sites // 2] = initial_coin
    cw, st, nrm = [], [], []
    for t in range(t_max + 1):
        if t:
            phi = phi @ HADAMARD.T
            moved = np.zeros_like(phi)
            moved[1:, 0] = phi[:-1, 0]
            moved[:-1, 1] = phi[1:, 1]
            phi = moved
        if phi[0].any() or phi[-1].any():
            raise RuntimeError("walker reached the end of the segment")
        amps = np.zeros(space.n_arcs, dtype=np.complex128)
        amps[up] = phi[:-1, 0]
        amps[down] = phi[1:, 1]
        state = WalkerState(space, amps)
        cw.append(entropy_from_values(schmidt_decompose(phi).values, log_base))
        st.append(source_target_entropy(state, log_base))
        nrm.append(state.norm)
    return HadamardSeries(np.array(cw), np.array(st), np.array(nrm), phi)
