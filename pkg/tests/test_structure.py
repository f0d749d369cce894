import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings

from graphaxial.core.algebra import GraphAlgebra
from graphaxial.core.exactfield import FieldCtx
from graphaxial.core.graph import LabeledDigraph, complete_graph
from graphaxial.core.structure import (
    Case,
    Verdict,
    cross_check_simplicity,
    find_ideal_subgraphs,
    ideal_closure,
    is_complete_graph_case,
    matches_contraction,
    oracle_is_simple,
    quotient_algebra,
    simplicity_verdict,
    verify_ideal,
)
from graphaxial.errors import NotAnIdeal, NotWeaklyConnected

from strategies import labeled_digraphs

F5 = FieldCtx.prime(5)
F5_LABELS = (1, 2, 3, 4)


def test_heawood_is_simple(heawood, heawood_ab):
    assert simplicity_verdict(heawood).verdict == Verdict.SIMPLE
    assert simplicity_verdict(heawood_ab).is_simple


def test_complete_graph_case(q):
    g = complete_graph(5, q.parse("-1/3"), q)
    assert is_complete_graph_case(g)
    report = simplicity_verdict(g)
    assert report.verdict == Verdict.COMPLETE_GRAPH
    assert report.cases == [Case.COMPLETE_GRAPH]
    assert report.ideals_found == [[{x: "1" for x in g.vertices}]]
    algebra = GraphAlgebra(g)
    assert len(ideal_closure(algebra, algebra.element({x: 1 for x in g.vertices}))) == 1


def test_other_complete_labels_are_simple(q):
    assert simplicity_verdict(complete_graph(5, q.parse("-1/2"), q)).is_simple


def test_ideal_subgraph_case(ideal_instance):
    report = simplicity_verdict(ideal_instance)
    assert report.verdict == Verdict.IDEAL_SUBGRAPH
    assert report.ideal_subgraphs == [{"Y": ["y1", "y2"], "external_labels": {"x": ["2", "4"]}}]
    assert report.ideals_found == [[{"y1": "4", "y2": "1"}]]


def test_half_labeled_edge_is_an_ideal_subgraph(f5):
    g = complete_graph(2, f5.half(), f5)
    report = simplicity_verdict(g)
    assert report.verdict == Verdict.IDEAL_SUBGRAPH
    assert not is_complete_graph_case(g)


def test_both_cases(f3):
    # ½ = 2 = 1/(2 - 3) in F_3
    g = complete_graph(3, f3.half(), f3)
    report = simplicity_verdict(g)
    assert report.verdict == Verdict.BOTH
    assert report.cases == [Case.IDEAL_SUBGRAPH, Case.COMPLETE_GRAPH]
    assert report.ideal_subgraphs[0]["Y"] == ["x1", "x2", "x3"]


def test_contraction_matches_quotient(ideal_instance):
    algebra = GraphAlgebra(ideal_instance)
    (witness,) = find_ideal_subgraphs(ideal_instance)
    assert matches_contraction(algebra, witness)
    quotient = quotient_algebra(algebra, witness.ideal_basis(algebra))
    assert quotient.dimension == 2
    assert quotient.basis == ("y2", "x")


def test_quotient_of_complete_graph_case(q):
    g = complete_graph(5, q.parse("-1/3"), q)
    algebra = GraphAlgebra(g)
    total = algebra.element({x: 1 for x in g.vertices})
    quotient = quotient_algebra(algebra, [total])
    assert quotient.dimension == 4
    # x1 + ... + x5 ≡ 0, so x1 = -(x2 + ... + x5) in the quotient
    assert quotient.project(algebra.vertex("x1")) == {f"x{i}": -1 for i in range(2, 6)}
    assert quotient.product("x2", "x3") == {"x2": Fraction(-1, 3), "x3": Fraction(-1, 3)}


def test_quotient_rejects_non_ideal(heawood_algebra):
    with pytest.raises(NotAnIdeal):
        quotient_algebra(heawood_algebra, [heawood_algebra.vertex("1")])


def test_disconnected_graph(f7):
    with pytest.raises(NotWeaklyConnected):
        simplicity_verdict(LabeledDigraph(["a", "b"], {}, f7))


def test_closure_of_a_vertex_is_everything(heawood_algebra):
    assert len(ideal_closure(heawood_algebra, heawood_algebra.vertex("1"))) == 14


def test_zero_sum_ideal_is_closed(ideal_instance):
    algebra = GraphAlgebra(ideal_instance)
    assert len(ideal_closure(algebra, algebra.vertex("y1") - algebra.vertex("y2"))) == 1
    assert verify_ideal(algebra, [algebra.vertex("y1") - algebra.vertex("y2")])
    assert not verify_ideal(algebra, [algebra.vertex("x")])


def test_oracle_agrees_on_fixed_cases(heawood_algebra, ideal_instance, q):
    assert oracle_is_simple(heawood_algebra)
    assert not oracle_is_simple(GraphAlgebra(ideal_instance))
    assert not oracle_is_simple(GraphAlgebra(complete_graph(5, q.parse("-1/3"), q)))


SYMMETRIC_LABELS = [(a, b) for a in F5_LABELS for b in F5_LABELS]


def verdict_agrees(g):
    return simplicity_verdict(g).is_simple == oracle_is_simple(GraphAlgebra(g))


def symmetric_graphs(n, pair_options):
    """Every weakly connected graph on n vertices whose pairs are joined both ways or not at all."""
    vertices = [f"v{i}" for i in range(n)]
    pairs = list(itertools.combinations(vertices, 2))
    for choice in itertools.product([None] + pair_options, repeat=len(pairs)):
        edges = {}
        for (x, y), labels in zip(pairs, choice):
            if labels is not None:
                edges[(x, y)], edges[(y, x)] = labels
        g = LabeledDigraph(vertices, edges, F5)
        if g.is_weakly_connected():
            yield g


def test_verdict_agrees_with_oracle_up_to_three_vertices():
    graphs = [g for n in (1, 2, 3) for g in symmetric_graphs(n, SYMMETRIC_LABELS)]
    assert len(graphs) == 1 + 16 + 4864
    mismatches = [g.to_json() for g in graphs if not verdict_agrees(g)]
    assert mismatches == []


@pytest.mark.slow
def test_verdict_agrees_with_oracle_on_four_vertices():
    graphs = list(symmetric_graphs(4, [(a, a) for a in F5_LABELS]))
    assert len(graphs) == 16 * 4**3 + 15 * 4**4 + 6 * 4**5 + 4**6
    mismatches = [g.to_json() for g in graphs if not verdict_agrees(g)]
    assert mismatches == []


def random_connected_graph(rng, n):
    vertices = [f"v{i}" for i in range(n)]
    while True:
        edges = {}
        for x, y in itertools.combinations(vertices, 2):
            if rng.random() < 0.5:
                edges[(x, y)], edges[(y, x)] = rng.choice(SYMMETRIC_LABELS)
        g = LabeledDigraph(vertices, edges, F5)
        if g.is_weakly_connected():
            return g


def test_verdict_agrees_with_oracle_on_random_five_vertex_graphs():
    rng = random.Random(20240)
    mismatches = []
    for _ in range(200):
        g = random_connected_graph(rng, 5)
        if not verdict_agrees(g):
            mismatches.append(g.to_json())
    assert mismatches == []


@settings(max_examples=100, deadline=None)
@given(labeled_digraphs(field=F5, labels=F5_LABELS, min_vertices=2, max_vertices=4))
def test_verdict_agrees_with_oracle_on_directed_graphs(g):
    assume(g.is_weakly_connected())
    assert verdict_agrees(g)


def test_cross_check_with_random_elements(heawood, ideal_instance):
    check = cross_check_simplicity(heawood, random_samples=20, seed=1)
    assert check.agrees
    assert check.oracle_simple
    assert check.seeds_closed >= 14 + 91 + 1
    broken = cross_check_simplicity(ideal_instance, random_samples=5)
    assert broken.agrees
    assert not broken.oracle_simple
    assert broken.proper_ideal_seed is not None
