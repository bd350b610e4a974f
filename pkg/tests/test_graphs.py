import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qwalknet.graphs import (
    ConnectivityError,
    Graph,
    GraphError,
    average_clustering,
    complete_graph,
    generate_ba,
    generate_cycle,
    generate_er,
    generate_path,
    is_connected,
    metrics,
    parse_edge_list,
    format_edge_list,
    star_graph,
)


def test_graph_canonicalizes_edges():
    g = Graph(3, ((1, 0), (0, 1), (2, 1)))
    assert g.edges == ((0, 1), (1, 2))


@pytest.mark.parametrize("edges", [((0, 0),), ((0, 3),), ((-1, 0),)])
def test_graph_rejects_bad_edges(edges):
    with pytest.raises(GraphError):
        Graph(3, edges)


def test_er_connected_n100():
    g = generate_er(100, 0.2, seed=5, require_connected=True)
    assert g.n_nodes == 100
    assert is_connected(g)


def test_er_p_one_gives_k2():
    assert generate_er(2, 1.0, seed=123).edges == ((0, 1),)


def test_er_p_zero_connected_hits_cap():
    with pytest.raises(ConnectivityError):
        generate_er(5, 0.0, seed=1, require_connected=True, retry_cap=50)


@pytest.mark.parametrize("p", [-0.1, 1.5])
def test_er_invalid_p(p):
    with pytest.raises(GraphError):
        generate_er(5, p, seed=1)


def test_er_seed_determinism():
    a = generate_er(60, 0.1, seed=42, require_connected=True)
    b = generate_er(60, 0.1, seed=42, require_connected=True)
    c = generate_er(60, 0.1, seed=43, require_connected=True)
    assert a == b
    assert a != c


def test_er_edge_density_concentrates():
    n, p, seeds = 30, 0.3, 400
    pairs = n * (n - 1) // 2
    frac = np.array([generate_er(n, p, s).n_edges / pairs for s in range(seeds)])
    se = math.sqrt(p * (1 - p) / pairs / seeds)
    assert abs(frac.mean() - p) < 3 * se


@pytest.mark.parametrize("n,m", [(100, 2), (100, 8), (10, 1), (7, 6), (50, 3)])
def test_ba_edge_count_matches_growth_rule(n, m):
    g = generate_ba(n, m, seed=3)
    # star seed contributes m edges, each of the n-m-1 later nodes m more
    assert g.n_edges == m + m * (n - m - 1)
    assert is_connected(g)


def test_ba_small_tree():
    g = generate_ba(3, 1, seed=9)
    assert g.n_edges == 2 and is_connected(g)


def test_ba_has_hubs():
    mt = metrics(generate_ba(100, 8, seed=1))
    assert mt.max_degree > 2 * mt.mean_degree


def test_ba_max_degree_grows_with_n():
    small = np.mean([metrics(generate_ba(50, 2, s)).max_degree for s in range(20)])
    large = np.mean([metrics(generate_ba(800, 2, s)).max_degree for s in range(20)])
    assert large > small


@pytest.mark.parametrize("m", [0, 5, 6])
def test_ba_invalid_m(m):
    with pytest.raises(GraphError):
        generate_ba(5, m, seed=1)


def test_ba_seed_determinism():
    assert generate_ba(80, 3, seed=7) == generate_ba(80, 3, seed=7)


@pytest.mark.parametrize("n", [3, 5, 6])
def test_cycle(n):
    g = generate_cycle(n)
    assert g.n_edges == n
    assert (g.degrees == 2).all()
    assert is_connected(g)
    assert average_clustering(g) == (1.0 if n == 3 else 0.0)


def test_cycle_too_small():
    with pytest.raises(GraphError):
        generate_cycle(2)


def test_parse_edge_list():
    assert parse_edge_list("0 1\n1 2") == generate_path(3)
    assert parse_edge_list("# header\n0 1\n1 0\n").edges == ((0, 1),)
    assert parse_edge_list("0 3\n").n_nodes == 4


@pytest.mark.parametrize("text", ["0 0", "0 x", "1 2 3"])
def test_parse_edge_list_errors(text):
    with pytest.raises(GraphError):
        parse_edge_list(text)


def test_edge_list_round_trip():
    g = generate_er(20, 0.3, seed=2)
    assert parse_edge_list(format_edge_list(g)).edges == g.edges


@pytest.mark.parametrize("g,expected", [
    (generate_cycle(3), 1.0),
    (generate_path(3), 0.0),
    (complete_graph(4), 1.0),
    (star_graph(5), 0.0),
])
def test_average_clustering_examples(g, expected):
    assert average_clustering(g) == expected


def test_average_clustering_matches_networkx():
    for seed in range(10):
        g = generate_er(40, 0.2, seed)
        ref = nx.Graph()
        ref.add_nodes_from(range(g.n_nodes))
        ref.add_edges_from(g.edges)
        assert average_clustering(g) == pytest.approx(nx.average_clustering(ref), abs=1e-12)


def test_connectivity_examples():
    assert not is_connected(Graph(4, ((0, 1), (2, 3))))
    assert is_connected(generate_cycle(5))
    assert metrics(Graph(2, ((0, 1),))).mean_degree == 1.0


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 15), p=st.floats(0, 1), seed=st.integers(0, 2**32))
def test_metric_invariants(n, p, seed):
    g = generate_er(n, p, seed)
    mt = metrics(g)
    assert mt.mean_degree == pytest.approx(2 * g.n_edges / n)
    assert 0.0 <= mt.avg_clustering <= 1.0
