"""Command line interface: ``qwalknet <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import entanglement as ent
from .arcs import symmetric_digraph
from .experiments import emit, load_config, result_json, run_ensemble, series_csv
from .graphs import (
    Graph,
    complete_graph,
    format_edge_list,
    generate_ba,
    generate_cycle,
    generate_er,
    generate_path,
    parse_edge_list,
    petersen_graph,
    prism_graph,
    star_graph,
)
from .hadamard import hadamard_line_walk
from .matching import (
    default_scatter_params,
    entanglement_capacity,
    fit_slope,
    karp_sipser_expected,
    matching_scatter,
    scatter_averages,
    solve_fixed_point,
)
from .walk import GROVER_CONVENTION, basis_state, evolve, grover_coin, haar_random_state, state_from_amplitudes

def graph_from_spec(spec: str, seed: int) -> Graph:
    """
    Read a graph from an edge-list file or a generator spec.

    Specs: ``er:n=100,p=0.2[,connected=1]``, ``ba:n=100,m=2``, ``cycle:n=6``,
    ``path:n=5``, ``complete:n=4``, ``star:k=3``, ``prism``, ``petersen``.
    """
    path = Path(spec)
    if path.is_file():
        return parse_edge_list(path.read_text())
    name, _, rest = spec.partition(":")
    kw = {}
    for item in filter(None, rest.split(",")):
        key, _, val = item.partition("=")
        kw[key.strip()] = val.strip()
    try:
        if name == "er":
            return generate_er(int(kw["n"]), float(kw["p"]), seed, require_connected=kw.get("connected", "0") == "1")
        if name == "ba":
            return generate_ba(int(kw["n"]), int(kw["m"]), seed)
        if name == "cycle":
            return generate_cycle(int(kw["n"]))
        if name == "path":
            return generate_path(int(kw["n"]))
        if name == "complete":
            return complete_graph(int(kw["n"]))
        if name == "star":
            return star_graph(int(kw["k"]))
        if name == "prism":
            return prism_graph()
        if name == "petersen":
            return petersen_graph()
    except KeyError as exc:
        raise SystemExit(f"graph spec {spec!r} is missing parameter {exc}") from None
    raise SystemExit(f"{spec!r} is neither a file nor a known graph spec")


def _write(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _log_base(value: str):
    ent.log_fn(value)
    return value


# --- subcommands ---------------------------------------------------------------


def cmd_gen(args) -> None:
    _write(args, format_edge_list(graph_from_spec(args.graph, args.seed)))


def cmd_walk(args) -> None:
    g = graph_from_spec(args.graph, args.seed)
    space = symmetric_digraph(g)
    if args.dump_arcs:
        Path(args.dump_arcs).write_text(space.arc_table())
    if args.start_arc:
        tail, head = (int(x) for x in args.start_arc.split())
        start = basis_state(space, space.arc_of(tail, head))
    else:
        start = basis_state(space, 0)
    traj = evolve(start, grover_coin(space), args.steps,
                  observer=lambda t, s: (t, ent.source_target_entropy(s, args.log_base), s.norm))
    buf = io.StringIO()
    buf.write(f"# log_base={args.log_base}; coin=grover {GROVER_CONVENTION}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "S_st", "norm"])
    for t, s, n in traj.observations:
        w.writerow([t, repr(s), repr(n)])
    _write(args, buf.getvalue())


def _read_state(path: str, space):
    amps = np.zeros(space.n_arcs, dtype=np.complex128)
    for row in csv.reader(line for line in Path(path).read_text().splitlines() if line and not line.startswith("#")):
        if row[0].strip() == "arc":
            continue
        amps[int(row[0])] = float(row[1]) + 1j * float(row[2])
    return state_from_amplitudes(space, amps, normalize=True)


def cmd_entropy(args) -> None:
    g = graph_from_spec(args.graph, args.seed)
    space = symmetric_digraph(g)
    state = _read_state(args.state, space) if args.state else haar_random_state(space, args.seed)
    spec = ent.schmidt_decompose(ent.amplitude_matrix(state))
    doc = {
        "log_base": args.log_base,
        "schmidt_values": spec.values.tolist(),
        "schmidt_rank": spec.rank,
        "S_st": ent.entropy_from_values(spec.values, args.log_base),
    }
    _write(args, json.dumps(doc, indent=1) + "\n")


def cmd_capacity(args) -> None:
    g = graph_from_spec(args.graph, args.seed)
    rep = entanglement_capacity(g, args.log_base)
    doc = {
        "n_nodes": g.n_nodes,
        "n_edges": g.n_edges,
        "log_base": args.log_base,
        "max_matching_size": rep.max_matching_size,
        "capacity": rep.capacity,
        "witness": [list(p) for p in rep.witness.pairs],
    }
    _write(args, json.dumps(doc, indent=1) + "\n")


def cmd_coin_sweep(args) -> None:
    g = graph_from_spec(args.graph, args.seed)
    space = symmetric_digraph(g)
    states = [haar_random_state(space, args.seed + i) for i in range(args.states)]
    results = ent.coin_assignment_sweep(space, states, args.log_base)
    buf = io.StringIO()
    buf.write(f"# log_base={args.log_base}; assignments={results[0].count}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["state", "assignment", "S_cw", "S_st"])
    for i, res in enumerate(results):
        st = repr(res.source_target)
        for k, s in enumerate(res.entropies.tolist()):
            w.writerow([i, k, repr(s), st])
    _write(args, buf.getvalue())
    for i, res in enumerate(results):
        print(f"state {i}: S_st={res.source_target:.6f} S_cw min={res.minimum:.6f} "
              f"mean={res.mean:.6f} max={res.maximum:.6f}", file=sys.stderr)


def cmd_hadamard_line(args) -> None:
    sites = args.sites or 2 * args.steps + 3
    h = hadamard_line_walk(sites, args.steps, args.log_base)
    buf = io.StringIO()
    buf.write(f"# log_base={args.log_base}; sites={sites}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "S_cw", "S_st", "norm"])
    for t, row in enumerate(zip(h.coin_walker, h.source_target, h.norm)):
        w.writerow([t, *map(repr, map(float, row))])
    _write(args, buf.getvalue())


def cmd_karp_sipser(args) -> None:
    y = solve_fixed_point(args.kbar)
    doc = {"n": args.n, "kbar": args.kbar, "y": y, "expected_max_matching": karp_sipser_expected(args.n, args.kbar)}
    _write(args, json.dumps(doc, indent=1) + "\n")


def cmd_matching_scatter(args) -> None:
    sizes = [int(s) for s in args.sizes.split(",")]
    records = []
    for n in sizes:
        params = ([float(p) for p in args.params.split(",")] if args.params
                  else default_scatter_params(args.model, n))
        records += matching_scatter(args.model, n, params, args.realizations, args.seed)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["model", "n_nodes", "param", "realization", "M_G", "M_BG"])
    for r in records:
        w.writerow([r.model, r.n_nodes, repr(r.param), r.realization, r.graph_matching, r.cover_matching])
    _write(args, buf.getvalue())
    av = scatter_averages(records)
    print(f"slope of averages: {fit_slope([a[2] for a in av], [a[3] for a in av]):.4f}", file=sys.stderr)


def cmd_ensemble(args) -> None:
    cfg = load_config(args.config)
    result = run_ensemble(cfg, workers=args.workers)
    written = emit(result, args.format, args.out)
    if not written:
        sys.stdout.write(series_csv(result) if args.format == "csv" else result_json(result))
    for p in written:
        print(f"wrote {p}", file=sys.stderr)
    for k, mean in result.plateau_means().items():
        print(f"param {cfg.params[k] if cfg.model != 'file' else '-'}: mean plateau {mean:.6f}", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--log-base", type=_log_base, default="e", help="'e' or '2'")
    common.add_argument("--out", default=None, help="output path (stdout if omitted)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = argparse.ArgumentParser(prog="qwalknet", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a graph as an edge list")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("walk", parents=[common], help="Grover walk; CSV of t, S_st, norm")
    p.add_argument("--graph", required=True)
    p.add_argument("--coin", choices=("grover",), default="grover")
    p.add_argument("--start-arc", default=None, help='"u v"; default is the first arc')
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--dump-arcs", default=None, help="write the arc table CSV here")
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("entropy", parents=[common], help="Schmidt spectrum and S_st of a state")
    p.add_argument("--graph", required=True)
    p.add_argument("--state", default=None, help="CSV of arc,re,im (Haar state if omitted)")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("capacity", parents=[common], help="entanglement capacity and witness matching")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("coin-sweep", parents=[common], help="coin-walker entropy over all coin assignments")
    p.add_argument("--graph", default="prism")
    p.add_argument("--states", type=int, default=10)
    p.set_defaults(func=cmd_coin_sweep)

    p = sub.add_parser("hadamard-line", parents=[common], help="Hadamard walk on a line segment")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--sites", type=int, default=None)
    p.set_defaults(func=cmd_hadamard_line)

    p = sub.add_parser("karp-sipser", parents=[common], help="expected ER maximum matching size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kbar", type=float, required=True)
    p.set_defaults(func=cmd_karp_sipser)

    p = sub.add_parser("matching-scatter", parents=[common], help="|M*(G)| versus |M*(B(G))|")
    p.add_argument("--model", choices=("er", "ba"), required=True)
    p.add_argument("--sizes", default="25,100")
    p.add_argument("--params", default=None, help="comma-separated p or m values")
    p.add_argument("--realizations", type=int, default=50)
    p.set_defaults(func=cmd_matching_scatter)

    p = sub.add_parser("ensemble", parents=[common], help="run an ensemble from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_ensemble)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.func(args)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
