import itertools
import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_graphs, graph_to_labeled_mask, labeled_class_keys, labeled_graph
from spectral_turan.constructions import complete, cycle, path, turan
from spectral_turan.graph import (
    Graph,
    GraphError,
    VertexSet,
    canonical_form,
    certificate,
    common_intersection_lower_bound,
    graph_from_edges,
    is_isomorphic,
    parse_edge_list,
    parse_graph6,
    read_graphs,
    to_graph6,
)


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return graph_from_edges(n, chosen)


def test_graph_from_edges_triangle():
    g = graph_from_edges(3, [(0, 1), (1, 2), (2, 0)])
    assert g.edge_count == 3
    assert all(g.degree(v) == 2 for v in range(3))


def test_graph_from_edges_collapses_duplicates():
    g = graph_from_edges(4, [(0, 1), (1, 0), (0, 1)])
    assert g.edge_count == 1
    assert graph_from_edges(4, []).edge_count == 0


@pytest.mark.parametrize("edges", [[(0, 3)], [(-1, 0)], [(1, 1)]])
def test_graph_from_edges_rejects_bad_pairs(edges):
    with pytest.raises(GraphError):
        graph_from_edges(3, edges)


def test_five_cycle_degrees():
    g = graph_from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    assert g.degrees() == [2] * 5


def test_rows_must_be_symmetric():
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0b00))
    with pytest.raises(GraphError):
        Graph(1, (0b1,))


# --- graph6 --------------------------------------------------------------------


def test_graph6_single_vertex():
    assert to_graph6(Graph.empty(1)) == "@"
    assert parse_graph6("@") == Graph.empty(1)


def test_graph6_matches_reference_encoder_small():
    # every labelled graph on up to 5 vertices against networkx's encoder
    for n in range(1, 6):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = [p for b, p in enumerate(pairs) if mask >> b & 1]
            g = graph_from_edges(n, edges)
            h = nx.Graph()
            h.add_nodes_from(range(n))
            h.add_edges_from(edges)
            ref = nx.to_graph6_bytes(h, header=False).decode().strip()
            assert to_graph6(g) == ref
            assert parse_graph6(ref) == g


def test_graph6_round_trip_all_small_classes():
    for n in range(1, 9):
        for g in all_graphs(n):
            s = to_graph6(g)
            assert parse_graph6(s) == g
            assert to_graph6(parse_graph6(s)) == s


@pytest.mark.parametrize("n", [62, 63, 70, 300])
def test_graph6_large_header(n):
    g = cycle(n)
    s = to_graph6(g)
    ref = nx.to_graph6_bytes(nx.cycle_graph(n), header=False).decode().strip()
    assert s == ref
    assert (s[0] == "~") == (n >= 63)
    assert parse_graph6(s) == g


def test_graph6_accepts_header_prefix():
    assert parse_graph6(">>graph6<<Bw") == complete(3)


@pytest.mark.parametrize("bad", ["", "B", "Bww", "B\x7f", "Bx"])
def test_graph6_rejects_malformed(bad):
    # "Bx" sets a padding bit after the three pair bits of n = 3
    with pytest.raises(GraphError):
        parse_graph6(bad)


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=40))
def test_graph6_round_trip_property(g):
    assert parse_graph6(to_graph6(g)) == g


def test_edge_list_input():
    g = parse_edge_list("4\n0 1\n1 2\n2 3\n")
    assert g == path(4)
    assert read_graphs("3\n0 1\n1 2\n2 0\n") == [complete(3)]
    assert read_graphs("Bw\nBW\n") == [complete(3), parse_graph6("BW")]


# --- queries -----------------------------------------------------------------------


def test_basic_queries_k4():
    g = complete(4)
    assert g.edge_count == 6
    assert [g.degree(v) for v in range(4)] == [3, 3, 3, 3]


def test_turan_side_queries():
    g = turan(6, 2)
    side = VertexSet.of([0, 1, 2])
    assert g.edges_within(side) == 0
    assert g.cut_edges(side, VertexSet.of([3, 4, 5])) == 9


def test_d_within_cycle():
    assert cycle(5).d_within(0, VertexSet.of([0, 1])) == 1


def test_range_checks():
    g = cycle(5)
    with pytest.raises(GraphError):
        g.degree(5)
    with pytest.raises(GraphError):
        g.neighbors(-1)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=14), st.randoms(use_true_random=False))
def test_edge_decomposition_identity(g, rnd):
    s = VertexSet.of(v for v in range(g.n) if rnd.random() < 0.5)
    t = VertexSet.of(v for v in range(g.n) if v not in s)
    assert g.edge_count == g.edges_within(s) + g.edges_within(t) + g.cut_edges(s, t)


def test_induced_subgraph_examples():
    assert complete(5).induced_subgraph([1, 3, 4]) == complete(3)
    assert cycle(5).induced_subgraph([0, 1, 2, 3]) == path(4)
    assert cycle(5).induced_subgraph([]) == Graph.empty(0)


def test_induced_subgraph_keeps_order():
    g = graph_from_edges(5, [(4, 1), (1, 3)])
    h = g.induced_subgraph([4, 1, 3])  # relabelled 1->0, 3->1, 4->2
    assert sorted(h.edges()) == [(0, 1), (0, 2)]


# --- canonical forms ------------------------------------------------------------------


def test_canonical_form_invariant_on_cycle_labellings():
    base = canonical_form(cycle(5))
    for perm in itertools.permutations(range(5)):
        assert canonical_form(cycle(5).relabel(list(perm))) == base


def test_canonical_form_separates_small_examples():
    k3_k1 = graph_from_edges(4, [(0, 1), (1, 2), (0, 2)])
    assert canonical_form(k3_k1) != canonical_form(path(4))


def test_eleven_classes_on_four_vertices():
    certs = set()
    for mask in range(1 << 6):
        certs.add(certificate(labeled_graph(4, mask)))
    assert len(certs) == 11


def test_canonical_form_agrees_with_bruteforce_classes_n6():
    n = 6
    masks = np.arange(1 << 15)
    keys = labeled_class_keys(n, masks)
    ours = {}
    for m in range(1 << 15):
        ours.setdefault(certificate(labeled_graph(n, m)), set()).add(int(keys[m]))
    # each certificate class is a single brute-force class and vice versa
    assert all(len(v) == 1 for v in ours.values())
    assert len(ours) == len(set(keys.tolist())) == 156


def test_canonical_form_separates_n7():
    reps = all_graphs(7)
    masks = np.array([graph_to_labeled_mask(g) for g in reps])
    keys = labeled_class_keys(7, masks)
    assert len(set(keys.tolist())) == len(reps) == 1044


def test_canonical_form_invariant_random_relabel():
    rng = random.Random(7)
    for _ in range(150):
        n = rng.randint(6, 12)
        g = graph_from_edges(n, [p for p in itertools.combinations(range(n), 2) if rng.random() < 0.45])
        perm = list(range(n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        assert canonical_form(g) == canonical_form(h)
        assert is_isomorphic(g, h)


def test_canonical_form_limit():
    with pytest.raises(GraphError):
        canonical_form(cycle(17))


# --- intersection bound ---------------------------------------------------------------


def test_intersection_bound_examples():
    assert common_intersection_lower_bound([3, 3], 4) == 2
    assert common_intersection_lower_bound([5], 5) == 5


def test_intersection_bound_exhaustive():
    rng = random.Random(3)
    for _ in range(3000):
        points = rng.randint(1, 8)
        p = rng.randint(1, 4)
        sets = [frozenset(x for x in range(points) if rng.random() < 0.6) for _ in range(p)]
        union = frozenset().union(*sets)
        inter = frozenset(range(points)).intersection(*sets)
        bound = common_intersection_lower_bound([len(s) for s in sets], len(union))
        assert bound <= len(inter)


def test_intersection_bound_validation():
    with pytest.raises(ValueError):
        common_intersection_lower_bound([], 3)
    with pytest.raises(ValueError):
        common_intersection_lower_bound([4], 3)
