"""
Source-target and coin-walker entanglement of walker states.

A walker state embeds in the double cover as the ``N x N`` amplitude matrix
``Psi[n, m] = psi(n->m)`` (zero where no arc exists). Its singular values
are the Schmidt coefficients across the source/target cut, and the
source-target entropy is the von Neumann entropy of their squares.

Coin-walker entropy needs a d-regular graph and an explicit coin
assignment: a per-node bijection between outgoing arcs and coin labels.
Different assignments give different coin-walker entropies for the same
state, while the source-target value does not depend on any labeling.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .arcs import ArcSpace
from .walk import WalkerState

__all__ = [
    "SchmidtSpectrum",
    "CoinAssignment",
    "SweepResult",
    "RANK_TOL",
    "SUPPORT_TOL",
    "SWEEP_BUDGET",
    "log_fn",
    "amplitude_matrix",
    "schmidt_decompose",
    "entropy_from_values",
    "entropy_from_density",
    "source_target_entropy",
    "matching_state",
    "coin_walker_matrix",
    "coin_walker_entropy",
    "direction_assignment",
    "canonical_assignment",
    "assignment_count",
    "assignment_from_index",
    "coin_assignment_sweep",
]

RANK_TOL = 1e-10
SUPPORT_TOL = 1e-12
SWEEP_BUDGET = 10**7


def log_fn(log_base):
    """Return ``log`` for base ``"e"`` or ``2``."""
    if log_base in ("e", None) or (isinstance(log_base, float) and log_base == math.e):
        return np.log
    if log_base in (2, "2"):
        return np.log2
    raise ValueError(f"log base must be 'e' or 2, got {log_base!r}")


@dataclass(frozen=True)
class SchmidtSpectrum:
    values: np.ndarray
    rank: int

    @property
    def probabilities(self) -> np.ndarray:
        return self.values ** 2


def amplitude_matrix(state: WalkerState) -> np.ndarray:
    space = state.space
    psi = np.zeros((space.n_nodes, space.n_nodes), dtype=np.complex128)
    psi[space.tails, space.heads] = state.amplitudes
    return psi


def schmidt_decompose(matrix: np.ndarray, rank_tolerance: float = RANK_TOL) -> SchmidtSpectrum:
    """
    Singular values of ``matrix`` in nonincreasing order.

    ``rank`` counts values above ``rank_tolerance * values[0]``.
    """
    sv = np.linalg.svd(np.asarray(matrix), compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return SchmidtSpectrum(sv, 0)
    return SchmidtSpectrum(sv, int((sv > rank_tolerance * sv[0]).sum()))


def _entropy_of_probs(p: np.ndarray, log_base="e") -> float:
    log = log_fn(log_base)
    p = p[p > 0]  # 0 log 0 = 0
    if p.size == 1:
        return 0.0  # pure reduced state; avoids rounding noise from 1 - eps
    s = float(-(p * log(p)).sum())
    return s if s > 0 else 0.0


def entropy_from_values(values, log_base="e") -> float:
    """Von Neumann entropy ``-sum l^2 log l^2`` of Schmidt coefficients."""
    return _entropy_of_probs(np.asarray(values, dtype=np.float64) ** 2, log_base)


def entropy_from_density(matrix: np.ndarray, log_base="e") -> float:
    """Entropy via eigenvalues of the reduced density matrix ``M M^dagger``."""
    m = np.asarray(matrix)
    rho = m @ m.conj().T
    ev = np.linalg.eigvalsh(rho)
    return _entropy_of_probs(np.clip(ev, 0.0, None), log_base)


def source_target_entropy(state: WalkerState, log_base="e") -> float:
    return entropy_from_values(schmidt_decompose(amplitude_matrix(state)).values, log_base)


def matching_state(space: ArcSpace, arcs: Sequence[int], phases: Optional[Sequence[float]] = None) -> WalkerState:
    """
    Equal-weight superposition ``sum_k exp(i phi_k) |arc_k> / sqrt(|M|)``.

    Raises ``ValueError`` if two arcs share a tail or a head.
    """
    arcs = [int(a) for a in arcs]
    if not arcs:
        raise ValueError("matching must be nonempty")
    if phases is None:
        phases = np.zeros(len(arcs))
    phases = np.asarray(phases, dtype=np.float64)
    if phases.shape != (len(arcs),):
        raise ValueError("need one phase per matching arc")
    tails = space.tails[arcs]
    heads = space.heads[arcs]
    if len(set(tails.tolist())) != len(arcs) or len(set(heads.tolist())) != len(arcs):
        raise ValueError("arcs share a head or a tail; not a matching")
    amps = np.zeros(space.n_arcs, dtype=np.complex128)
    amps[arcs] = np.exp(1j * phases) / math.sqrt(len(arcs))
    return WalkerState(space, amps)


# --- coin assignments ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CoinAssignment:
    """
    ``labels[n, c]`` is the arc leaving node ``n`` that carries coin label ``c``.

    Only defined on d-regular graphs, where every row is a permutation of
    ``out_arcs(n)``.
    """

    space: ArcSpace
    labels: np.ndarray

    def __post_init__(self):
        space = self.space
        deg = space.degrees
        if len(deg) == 0 or (deg != deg[0]).any():
            raise ValueError("coin assignments need a regular graph")
        lab = np.asarray(self.labels, dtype=np.int64)
        if lab.shape != (space.n_nodes, int(deg[0])):
            raise ValueError(f"labels must have shape (N, d) = ({space.n_nodes}, {int(deg[0])})")
        for n in range(space.n_nodes):
            if sorted(lab[n].tolist()) != space.out_arcs(n).tolist():
                raise ValueError(f"labels at node {n} are not a bijection onto its outgoing arcs")
        object.__setattr__(self, "labels", lab)

    @property
    def degree(self) -> int:
        return self.labels.shape[1]


def canonical_assignment(space: ArcSpace) -> CoinAssignment:
    """Label ``c`` at node ``n`` is the c-th outgoing arc in head order."""
    d = int(space.degrees[0]) if space.n_nodes else 0
    return CoinAssignment(space, space.offsets[:-1, None] + np.arange(d)[None, :])


def direction_assignment(space: ArcSpace, flipped: Sequence[int] = ()) -> CoinAssignment:
    """
    Left/right labels on a cycle ``0-1-...-(N-1)-0``.

    Label 0 ("up") is the arc to ``n+1 mod N`` and label 1 ("down") the arc
    to ``n-1 mod N``. Nodes listed in ``flipped`` swap the two labels.
    """
    n = space.n_nodes
    g = space.graph
    if n < 3 or any(not g.has_edge(i, (i + 1) % n) for i in range(n)) or (space.degrees != 2).any():
        raise ValueError("direction assignment needs a cycle graph")
    flip = set(int(f) for f in flipped)
    labels = np.empty((n, 2), dtype=np.int64)
    for i in range(n):
        up, down = space.arc_of(i, (i + 1) % n), space.arc_of(i, (i - 1) % n)
        labels[i] = (down, up) if i in flip else (up, down)
    return CoinAssignment(space, labels)


def coin_walker_matrix(state: WalkerState, assignment: CoinAssignment) -> np.ndarray:
    if assignment.space is not state.space and assignment.space.graph != state.space.graph:
        raise ValueError("assignment belongs to a different graph")
    return state.amplitudes[assignment.labels]


def coin_walker_entropy(state: WalkerState, assignment: CoinAssignment, log_base="e") -> float:
    """Entropy across the position/coin cut of the ``N x d`` matrix ``Phi[n, c]``."""
    return entropy_from_values(schmidt_decompose(coin_walker_matrix(state, assignment)).values, log_base)


def assignment_count(space: ArcSpace) -> int:
    deg = space.degrees
    if len(deg) == 0 or (deg != deg[0]).any():
        raise ValueError("coin assignments need a regular graph")
    return math.factorial(int(deg[0])) ** space.n_nodes


def _local_perms(d: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(d))), dtype=np.int64).reshape(-1, d)


def _label_tables(space: ArcSpace, indices: np.ndarray) -> np.ndarray:
    # mixed radix in d!, node 0 most significant (itertools.product order)
    d = int(space.degrees[0])
    perms = _local_perms(d)
    radix = len(perms)
    n = space.n_nodes
    digits = np.empty((len(indices), n), dtype=np.int64)
    rest = indices.astype(np.int64)
    for node in range(n - 1, -1, -1):
        digits[:, node] = rest % radix
        rest //= radix
    return space.offsets[:-1][None, :, None] + perms[digits]


def assignment_from_index(space: ArcSpace, index: int) -> CoinAssignment:
    """The ``index``-th assignment in the deterministic sweep order."""
    total = assignment_count(space)
    if not 0 <= index < total:
        raise IndexError(f"assignment index {index} out of range [0, {total})")
    return CoinAssignment(space, _label_tables(space, np.array([index]))[0])


@dataclass
class SweepResult:
    source_target: float
    entropies: Optional[np.ndarray]
    minimum: float
    maximum: float
    mean: float
    count: int


def coin_assignment_sweep(space: ArcSpace, states: Sequence[WalkerState], log_base="e",
                          keep_all: bool = True, budget: int = SWEEP_BUDGET,
                          index_range: Optional[tuple[int, int]] = None,
                          chunk: int = 20_000) -> list[SweepResult]:
    """
    Coin-walker entropy of each state under every coin assignment.

    Assignments are visited in index order ``0 .. (d!)^N - 1``; a worker can
    take a contiguous ``index_range``. Raises ``ValueError`` when the count
    exceeds ``budget``.
    """
    total = assignment_count(space)
    if total > budget:
        raise ValueError(f"{total} coin assignments exceed the enumeration budget {budget}")
    lo, hi = index_range if index_range is not None else (0, total)
    if not 0 <= lo <= hi <= total:
        raise ValueError("index_range outside the assignment range")
    log = log_fn(log_base)
    results = []
    for state in states:
        if state.space.graph != space.graph:
            raise ValueError("state lives on a different graph")
        parts = []
        for start in range(lo, hi, chunk):
            idx = np.arange(start, min(start + chunk, hi))
            phi = state.amplitudes[_label_tables(space, idx)]
            sv = np.linalg.svd(phi, compute_uv=False)
            p = sv ** 2
            with np.errstate(divide="ignore", invalid="ignore"):
                terms = np.where(p > 0, -p * log(np.where(p > 0, p, 1.0)), 0.0)
            parts.append(np.maximum(terms.sum(axis=1), 0.0) + 0.0)
        ent = np.concatenate(parts) if parts else np.zeros(0)
        results.append(SweepResult(
            source_target=source_target_entropy(state, log_base),
            entropies=ent if keep_all else None,
            minimum=float(ent.min()) if ent.size else math.nan,
            maximum=float(ent.max()) if ent.size else math.nan,
            mean=float(ent.mean()) if ent.size else math.nan,
            count=int(ent.size),
        ))
    return results
