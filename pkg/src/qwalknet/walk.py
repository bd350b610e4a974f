"""
Coined discrete-time quantum walks in the arc basis.

A walker state is a unit vector of complex amplitudes indexed by the arcs of
an :class:`~qwalknet.arcs.ArcSpace`. One time step applies a node-local coin
to the outgoing arcs of every node and then the flip-flop shift, which sends
``n->m`` to ``m->n``.

The Grover coin convention is ``(2/d) J - I``. Degree-1 nodes receive the
1x1 identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import numpy as np

from .arcs import ArcSpace
from .graphs import make_rng

__all__ = [
    "WalkerState",
    "CoinOperator",
    "Trajectory",
    "NORM_TOL",
    "GROVER_CONVENTION",
    "basis_state",
    "state_from_amplitudes",
    "haar_random_state",
    "grover_coin",
    "identity_coin",
    "apply_coin",
    "apply_shift",
    "step",
    "evolve",
    "walk_matrix",
]

NORM_TOL = 1e-9
GROVER_CONVENTION = "(2/d)J - I; degree-1 nodes use the 1x1 identity"


@dataclass(frozen=True, eq=False)
class WalkerState:
    space: ArcSpace
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (self.space.n_arcs,):
            raise ValueError(f"expected {self.space.n_arcs} amplitudes, got shape {amps.shape}")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def check_normalized(self, tol: float = NORM_TOL) -> None:
        if abs(self.norm - 1.0) > tol:
            raise ValueError(f"state norm {self.norm!r} deviates from 1 by more than {tol}")


@dataclass(frozen=True, eq=False)
class CoinOperator:
    """Per-node unitary blocks acting on ``out_arcs(n)`` in canonical order."""

    blocks: tuple[np.ndarray, ...]
    kind: str = "custom"

    def check_unitary(self, tol: float = 1e-12) -> None:
        for n, b in enumerate(self.blocks):
            err = np.abs(b.conj().T @ b - np.eye(len(b))).max() if b.size else 0.0
            if err > tol:
                raise ValueError(f"coin block {n} is not unitary (error {err:.2e})")


@dataclass
class Trajectory:
    """Per-step observer outputs and, on request, the full states."""

    observations: list = field(default_factory=list)
    states: list = field(default_factory=list)
    final: Optional[WalkerState] = None


def state_from_amplitudes(space: ArcSpace, amplitudes, normalize: bool = False) -> WalkerState:
    amps = np.asarray(amplitudes, dtype=np.complex128)
    if normalize:
        nrm = np.linalg.norm(amps)
        if nrm == 0:
            raise ValueError("cannot normalize the zero vector")
        amps = amps / nrm
    state = WalkerState(space, amps)
    state.check_normalized()
    return state


def basis_state(space: ArcSpace, arc: int) -> WalkerState:
    if not 0 <= arc < space.n_arcs:
        raise IndexError(f"arc index {arc} out of range [0, {space.n_arcs})")
    amps = np.zeros(space.n_arcs, dtype=np.complex128)
    amps[arc] = 1.0
    return WalkerState(space, amps)


def haar_random_state(space: ArcSpace, seed: int) -> WalkerState:
    """Haar-random unit vector: i.i.d. complex Gaussians, normalized."""
    if space.n_arcs < 1:
        raise ValueError("arc space is empty")
    rng = make_rng(seed)
    z = rng.standard_normal(space.n_arcs) + 1j * rng.standard_normal(space.n_arcs)
    return WalkerState(space, z / np.linalg.norm(z))


def grover_coin(space: ArcSpace) -> CoinOperator:
    deg = space.degrees
    if (deg == 0).any():
        raise ValueError(f"node {int(np.argmin(deg))} is isolated; the Grover coin needs degree >= 1")
    blocks = tuple((2.0 / d) * np.ones((d, d)) - np.eye(d) for d in deg.tolist())
    return CoinOperator(blocks, kind="grover")


def identity_coin(space: ArcSpace) -> CoinOperator:
    return CoinOperator(tuple(np.eye(d) for d in space.degrees.tolist()), kind="identity")


def apply_coin(state: WalkerState, coin: CoinOperator) -> WalkerState:
    space = state.space
    deg = space.degrees
    if len(coin.blocks) != space.n_nodes or any(b.shape != (d, d) for b, d in zip(coin.blocks, deg.tolist())):
        raise ValueError("coin blocks do not match the node degrees of the arc space")
    psi = state.amplitudes
    if coin.kind == "identity":
        return WalkerState(space, psi.copy())
    if coin.kind == "grover" and len(psi):
        # (2/d) J - I  ==  2 * mean(block) - psi
        tails = space.tails
        sums = np.add.reduceat(psi, space.offsets[:-1][deg > 0])
        full = np.zeros(space.n_nodes, dtype=np.complex128)
        full[deg > 0] = sums
        return WalkerState(space, 2.0 * full[tails] / deg[tails] - psi)
    out = np.empty_like(psi)
    off = space.offsets
    for n, b in enumerate(coin.blocks):
        out[off[n]:off[n + 1]] = b @ psi[off[n]:off[n + 1]]
    return WalkerState(space, out)


def apply_shift(state: WalkerState) -> WalkerState:
    """Flip-flop shift: amplitude of ``m->n`` becomes that of ``n->m``."""
    return WalkerState(state.space, state.amplitudes[state.space.reverse_of])


def step(state: WalkerState, coin: CoinOperator) -> WalkerState:
    return apply_shift(apply_coin(state, coin))


def evolve(state: WalkerState, coin: CoinOperator, t_max: int,
           observer: Optional[Callable[[int, WalkerState], Any]] = None,
           keep_states: bool = False) -> Trajectory:
    """
    Apply ``t_max`` coin-then-shift steps.

    ``observer(t, state)`` is called for t = 0 .. t_max (the initial state
    included); its return values are collected in ``observations``.
    """
    if t_max < 0:
        raise ValueError("t_max must be >= 0")
    traj = Trajectory()
    for t in range(t_max + 1):
        if t:
            state = step(state, coin)
        if observer is not None:
            traj.observations.append(observer(t, state))
        if keep_states:
            traj.states.append(state)
    traj.final = state
    return traj


def walk_matrix(space: ArcSpace, coin: CoinOperator) -> np.ndarray:
    """Dense one-step unitary ``S C``; for small graphs and cross-checks."""
    a = space.n_arcs
    c = np.zeros((a, a), dtype=np.complex128)
    off = space.offsets
    for n, b in enumerate(coin.blocks):
        c[off[n]:off[n + 1], off[n]:off[n + 1]] = b
    s = np.zeros((a, a))
    s[np.arange(a), space.reverse_of] = 1.0
    return s @ c
