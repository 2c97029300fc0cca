import itertools
import random

import pytest

from conftest import all_graphs, graphs_upto
from spectral_turan.constructions import (
    FlowerSpec,
    complete,
    cycle,
    disjoint_copies,
    extremal_family_member,
    flower,
    matching,
    petersen,
    star,
    turan,
)
from spectral_turan.detection import (
    contains_flower,
    contains_flower_at,
    contains_flower_oracle,
    has_path_on,
    side_freeness_check,
    subgraph_iso_oracle,
    triangle_count,
)
from spectral_turan.graph import GraphError, VertexSet, graph_from_edges


def test_containment_examples():
    assert contains_flower(cycle(5), FlowerSpec(0, [5])) is not None
    for spec in (FlowerSpec(1), FlowerSpec(0, [5]), FlowerSpec(2, [7])):
        assert contains_flower(turan(10, 2), spec) is None
    emb = contains_flower(complete(5), FlowerSpec(2))
    assert emb is not None and emb.verify(complete(5), FlowerSpec(2))


def test_apex_pinned():
    spec = FlowerSpec(1, [5])
    g = flower(spec)
    assert contains_flower_at(g, 0, spec) is not None
    assert contains_flower_at(g, 3, spec) is None
    emb = contains_flower_at(complete(7), 0, spec)
    assert emb is not None and emb.apex == 0
    assert subgraph_iso_oracle(complete(7), g)
    with pytest.raises(GraphError):
        contains_flower_at(g, 7, spec)


@pytest.mark.parametrize(
    "spec",
    [FlowerSpec(s, ls) for s in range(4) for r in range(3) for ls in itertools.combinations_with_replacement([5, 7], r) if s + r],
)
def test_finds_itself(spec):
    g = flower(spec)
    emb = contains_flower(g, spec)
    assert emb is not None
    assert emb.verify(g, spec)


def test_embedding_verify_rejects_tampering():
    spec = FlowerSpec(1, [5])
    g = flower(spec)
    emb = contains_flower(g, spec)
    assert not emb.verify(g.with_edges(remove=[emb.triangles[0]]), spec)
    assert not emb.verify(g, FlowerSpec(1, [7]))


SMALL_SPECS = [FlowerSpec(1), FlowerSpec(2), FlowerSpec(3), FlowerSpec(0, [5]), FlowerSpec(1, [5])]


def test_oracle_equivalence_upto_6():
    for g in graphs_upto(6):
        for spec in SMALL_SPECS:
            emb = contains_flower(g, spec)
            assert (emb is not None) == contains_flower_oracle(g, spec)
            if emb is not None:
                assert emb.verify(g, spec)


def test_oracle_equivalence_random_long_cycles():
    specs = [FlowerSpec(0, [5, 5]), FlowerSpec(1, [7]), FlowerSpec(0, [9]), FlowerSpec(2, [5]), FlowerSpec(4)]
    rng = random.Random(2024)
    positives = 0
    for _ in range(300):
        n = rng.randint(7, 11)
        p = rng.uniform(0.2, 0.7)
        g = graph_from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])
        for spec in specs:
            if flower(spec).n > n:
                continue
            emb = contains_flower(g, spec)
            positives += emb is not None
            assert (emb is not None) == contains_flower_oracle(g, spec)
    assert positives > 50


@pytest.mark.parametrize("n", [40, 60])
def test_family_members_free_at_scale(n):
    for s, lengths in [(1, [5]), (2, [7]), (0, [5, 5])]:
        spec = FlowerSpec(s, lengths)
        g = extremal_family_member(n, s, spec.k)
        assert contains_flower(g, spec) is None
        # one more edge inside the side holding Q creates the flower
        a = spec.petals - 1
        extra = g.with_edges(add=[(0, 2 * a)] if a else [(0, 1)])
        assert contains_flower(extra, spec) is not None


def test_triangle_count_examples():
    assert triangle_count(complete(4)) == 4
    assert triangle_count(turan(12, 2)) == 0
    assert triangle_count(petersen()) == 0
    brute = sum(1 for a, b, c in itertools.combinations(range(10), 3)
                if petersen().has_edge(a, b) and petersen().has_edge(b, c) and petersen().has_edge(a, c))
    assert brute == 0


def test_triangle_neighbourhood_identity_upto_8():
    for g in graphs_upto(8):
        total = sum(g.edges_within(VertexSet(g.rows[v])) for v in range(g.n))
        assert 3 * triangle_count(g) == total


def test_has_path_examples():
    assert has_path_on(cycle(5), 5) is not None
    assert has_path_on(matching(3), 3) is None
    k4s = disjoint_copies(complete(4), 2)
    assert has_path_on(k4s, 5) is None
    p = has_path_on(k4s, 4)
    assert p is not None and all(k4s.has_edge(a, b) for a, b in zip(p, p[1:]))
    with pytest.raises(ValueError):
        has_path_on(cycle(5), 0)


def test_side_freeness_examples():
    g = extremal_family_member(20, 1, 1)
    side = VertexSet.of(range(10))
    rep = side_freeness_check(g, side, 2)
    assert rep.star_free and rep.matching_free
    rep = side_freeness_check(star(3), VertexSet.of(range(4)), 3)
    assert not rep.star_free and rep.star_center == 0
    assert rep.matching_free
    rep = side_freeness_check(turan(10, 2), VertexSet.of(range(5)), 1)
    assert rep.star_free and rep.matching_free


def test_side_freeness_matching_witness():
    rep = side_freeness_check(matching(3), VertexSet.of(range(6)), 2)
    assert not rep.matching_free
    assert len(rep.matching_witness) == 2


def test_oracle_examples():
    assert subgraph_iso_oracle(complete(5), cycle(5))
    assert not subgraph_iso_oracle(turan(8, 2), complete(3))
    assert subgraph_iso_oracle(petersen(), cycle(5))
    assert not subgraph_iso_oracle(petersen(), cycle(4))
    with pytest.raises(ValueError):
        subgraph_iso_oracle(complete(12), complete(11))


def test_no_flower_in_too_small_graphs():
    for g in all_graphs(4):
        assert contains_flower(g, FlowerSpec(0, [5])) is None
