"""
Ensemble experiments: random graphs, Grover walks and plateau statistics.

For every parameter value and realization a graph is drawn, a walker is
started on a single arc (or a Haar state) and evolved with the Grover coin.
The source-target entropy series, its plateau average and the graph's
clustering are recorded. Everything is a pure function of the config, so
identical configs give byte-identical output regardless of worker count.

The JSON config carries ``"schema": 1``::

    {"schema": 1, "model": "er", "params": [0.2, 0.4], "n_nodes": 100,
     "realizations": 20, "steps": 100, "base_seed": 1,
     "log_base": "e", "start_rule": "first-arc", "plateau_window": [20, 100]}
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .arcs import symmetric_digraph
from .entanglement import log_fn, source_target_entropy
from .graphs import Graph, average_clustering, derive_seed, generate_ba, generate_cycle, generate_er, make_rng, parse_edge_list
from .matching import entanglement_capacity, largest_matching_in_support
from .walk import GROVER_CONVENTION, basis_state, evolve, grover_coin, haar_random_state

__all__ = [
    "SCHEMA_VERSION",
    "ExperimentConfig",
    "RunRecord",
    "EnsembleResult",
    "load_config",
    "build_graph",
    "run_realization",
    "run_ensemble",
    "plateau_average",
    "pearson",
    "series_csv",
    "summary_csv",
    "result_json",
    "emit",
    "load_result",
]

SCHEMA_VERSION = 1
MODELS = ("er", "ba", "cycle", "file")
START_RULES = ("first-arc", "arc", "haar", "random-arc")
METADATA = {
    "coin": "grover",
    "coin_convention": GROVER_CONVENTION,
    "ba_seed_graph": "star on m+1 nodes",
    "er_connectivity": "whole-graph rejection sampling",
    "seed_derivation": "numpy SeedSequence(base_seed, spawn_key=(param_index, realization))",
}


@dataclass
class ExperimentConfig:
    model: str = "er"
    params: list = field(default_factory=lambda: [0.2, 0.4, 0.6, 0.8])
    n_nodes: int = 100
    realizations: int = 100
    steps: int = 100
    base_seed: int = 0
    log_base: str = "e"
    start_rule: str = "first-arc"
    start_arc: Optional[list] = None
    plateau_window: Optional[list] = None
    graph_file: Optional[str] = None
    series_csv: Optional[str] = None
    summary_csv: Optional[str] = None
    json_path: Optional[str] = None
    schema: int = SCHEMA_VERSION

    def __post_init__(self):
        self.log_base = str(self.log_base)
        if self.plateau_window is None:
            self.plateau_window = [min(20, self.steps), self.steps]
        self.plateau_window = [int(x) for x in self.plateau_window]
        self.validate()

    @property
    def window(self) -> tuple[int, int]:
        return self.plateau_window[0], self.plateau_window[1]

    def validate(self) -> None:
        if self.schema != SCHEMA_VERSION:
            raise ValueError(f"unsupported config schema {self.schema}; expected {SCHEMA_VERSION}")
        if self.model not in MODELS:
            raise ValueError(f"model must be one of {MODELS}")
        if self.start_rule not in START_RULES:
            raise ValueError(f"start_rule must be one of {START_RULES}")
        if self.start_rule == "arc" and (self.start_arc is None or len(self.start_arc) != 2):
            raise ValueError("start_rule 'arc' needs start_arc = [tail, head]")
        if self.model == "file" and not self.graph_file:
            raise ValueError("model 'file' needs graph_file")
        if self.model != "file" and not self.params:
            raise ValueError("params must be a nonempty list")
        if self.realizations < 1:
            raise ValueError("realizations must be >= 1")
        t0, t1 = self.window
        if not 0 <= t0 <= t1 <= self.steps:
            raise ValueError("need 0 <= plateau start <= plateau end <= steps")
        log_fn(self.log_base)

    def to_dict(self) -> dict:
        d = asdict(self)
        return {"schema": d.pop("schema"), **d}

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        if "schema" not in data:
            raise ValueError("config lacks the top-level 'schema' field")
        return cls(**data)


def load_config(path) -> ExperimentConfig:
    return ExperimentConfig.from_dict(json.loads(Path(path).read_text()))


@dataclass
class RunRecord:
    param_index: int
    param: float
    realization: int
    seed: int
    n_edges: int
    mean_degree: float
    avg_clustering: float
    capacity: float
    series: list
    plateau_mean: float
    plateau_std: float
    norm_error: float
    support_matching: Optional[list] = None


@dataclass
class EnsembleResult:
    config: ExperimentConfig
    records: list
    mean_series: dict

    def records_for(self, param_index: int) -> list:
        return [r for r in self.records if r.param_index == param_index]

    def plateau_means(self) -> dict:
        """Mean plateau per parameter index."""
        return {k: float(np.mean([r.plateau_mean for r in self.records_for(k)])) for k in self.mean_series}


def plateau_average(series: Sequence[float], window: tuple[int, int]) -> tuple[float, float]:
    """Mean and population standard deviation over ``series[t0:t1+1]``."""
    t0, t1 = window
    if not 0 <= t0 <= t1 < len(series):
        raise ValueError(f"window {window} is empty or outside a series of length {len(series)}")
    seg = np.asarray(series[t0:t1 + 1], dtype=np.float64)
    return float(seg.mean()), float(seg.std())


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape or x.size < 2:
        raise ValueError("pearson needs two equal-length sequences of at least 2 values")
    dx, dy = x - x.mean(), y - y.mean()
    den = math.sqrt(float(dx @ dx) * float(dy @ dy))
    if den == 0:
        raise ValueError("degenerate variance")
    return float(np.clip(dx @ dy / den, -1.0, 1.0))


def _params(cfg: ExperimentConfig) -> list:
    return list(cfg.params) if cfg.model != "file" else [0]


def build_graph(cfg: ExperimentConfig, param, seed: int) -> Graph:
    if cfg.model == "er":
        return generate_er(cfg.n_nodes, float(param), seed, require_connected=True)
    if cfg.model == "ba":
        return generate_ba(cfg.n_nodes, int(param), seed)
    if cfg.model == "cycle":
        return generate_cycle(int(param))
    return parse_edge_list(Path(cfg.graph_file).read_text())


def run_realization(cfg: ExperimentConfig, param_index: int, realization: int,
                    track_support: bool = False) -> RunRecord:
    param = _params(cfg)[param_index]
    seed = derive_seed(cfg.base_seed, param_index, realization)
    g = build_graph(cfg, param, seed)
    space = symmetric_digraph(g)
    if cfg.start_rule == "first-arc":
        start = basis_state(space, 0)
    elif cfg.start_rule == "arc":
        start = basis_state(space, space.arc_of(*cfg.start_arc))
    elif cfg.start_rule == "random-arc":
        start = basis_state(space, int(make_rng(seed, 2).integers(space.n_arcs)))
    else:
        start = haar_random_state(space, derive_seed(seed, 1))

    def observe(t, state):
        s = largest_matching_in_support(state) if track_support else None
        return source_target_entropy(state, cfg.log_base), state.norm, s

    obs = evolve(start, grover_coin(space), cfg.steps, observer=observe).observations
    series = [o[0] for o in obs]
    mean, std = plateau_average(series, cfg.window)
    return RunRecord(
        param_index=param_index,
        param=float(param),
        realization=realization,
        seed=seed,
        n_edges=g.n_edges,
        mean_degree=2.0 * g.n_edges / g.n_nodes,
        avg_clustering=average_clustering(g),
        capacity=entanglement_capacity(g, cfg.log_base).capacity,
        series=series,
        plateau_mean=mean,
        plateau_std=std,
        norm_error=float(max(abs(o[1] - 1.0) for o in obs)),
        support_matching=[o[2] for o in obs] if track_support else None,
    )


def _task(args):
    cfg, k, r, track = args
    return run_realization(cfg, k, r, track)


def run_ensemble(cfg: ExperimentConfig, workers: int = 1, track_support: bool = False) -> EnsembleResult:
    """
    Run every (parameter, realization) pair of ``cfg``.

    Realizations are independent; with ``workers > 1`` they run in separate
    processes and are sorted by (parameter, realization) afterwards.
    """
    tasks = [(cfg, k, r, track_support) for k in range(len(_params(cfg))) for r in range(cfg.realizations)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        records = [_task(t) for t in tasks]
    records.sort(key=lambda r: (r.param_index, r.realization))
    mean_series = {
        k: np.mean([r.series for r in records if r.param_index == k], axis=0).tolist()
        for k in range(len(_params(cfg)))
    }
    return EnsembleResult(cfg, records, mean_series)


# --- persistence ---------------------------------------------------------------


def _header(cfg: ExperimentConfig) -> str:
    return f"# qwalknet schema={SCHEMA_VERSION}; log_base={cfg.log_base}; coin=grover {GROVER_CONVENTION}\n"


def series_csv(result: EnsembleResult) -> str:
    """One row per (parameter, realization, t)."""
    buf = io.StringIO()
    buf.write(_header(result.config))
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["param_index", "param", "realization", "t", "S_st"])
    for r in result.records:
        for t, s in enumerate(r.series):
            w.writerow([r.param_index, repr(r.param), r.realization, t, repr(s)])
    return buf.getvalue()


def summary_csv(result: EnsembleResult) -> str:
    """One row per realization."""
    buf = io.StringIO()
    buf.write(_header(result.config))
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["param_index", "param", "realization", "seed", "n_edges", "mean_degree",
                "avg_clustering", "capacity", "plateau_mean", "plateau_std"])
    for r in result.records:
        w.writerow([r.param_index, repr(r.param), r.realization, r.seed, r.n_edges, repr(r.mean_degree),
                    repr(r.avg_clustering), repr(r.capacity), repr(r.plateau_mean), repr(r.plateau_std)])
    return buf.getvalue()


def result_json(result: EnsembleResult) -> str:
    cfg = result.config
    doc = {
        "schema": SCHEMA_VERSION,
        "config": cfg.to_dict(),
        "metadata": {**METADATA, "log_base": cfg.log_base, "plateau_window": list(cfg.window)},
        "records": [asdict(r) for r in result.records],
        "mean_series": {str(k): v for k, v in result.mean_series.items()},
    }
    return json.dumps(doc, indent=1)


def load_result(text: str) -> EnsembleResult:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA_VERSION:
        raise ValueError("unsupported result schema")
    cfg = ExperimentConfig.from_dict(doc["config"])
    records = [RunRecord(**r) for r in doc["records"]]
    return EnsembleResult(cfg, records, {int(k): v for k, v in doc["mean_series"].items()})


def emit(result: EnsembleResult, fmt: str = "csv", path=None) -> list[Path]:
    """
    Write results; returns the written paths.

    ``csv`` writes ``<stem>_series.csv`` and ``<stem>_summary.csv``; ``json``
    writes one structured dump. Without ``path`` the config's output paths
    are used.
    """
    cfg = result.config
    written = []
    if fmt == "csv":
        if path is not None:
            p = Path(path)
            targets = [(p.with_name(p.stem + "_series.csv"), series_csv), (p.with_name(p.stem + "_summary.csv"), summary_csv)]
        else:
            targets = [(Path(q), fn) for q, fn in ((cfg.series_csv, series_csv), (cfg.summary_csv, summary_csv)) if q]
        for target, fn in targets:
            target.write_text(fn(result))
            written.append(target)
    elif fmt == "json":
        target = Path(path) if path is not None else (Path(cfg.json_path) if cfg.json_path else None)
        if target is not None:
            target.write_text(result_json(result))
            written.append(target)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return written
