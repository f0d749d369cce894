import pytest
from hypothesis import given, settings

from graphaxial.core.algebra import GraphAlgebra
from graphaxial.core.autgrp import (
    PermGroup,
    Theorem,
    automorphism_group,
    check_theorem_hypotheses,
    group_order,
    is_algebra_automorphism,
    is_graph_automorphism,
)
from graphaxial.core.graph import LabeledDigraph, cayley_graph, incidence_graph
from graphaxial.generators.groups import CayleyTable
from graphaxial.generators.providers import complete_graph_space, gq22

from strategies import labeled_digraphs


def cycle(n, field, symmetric=False, label=2):
    vertices = [str(i) for i in range(n)]
    edges = {(str(i), str((i + 1) % n)): label for i in range(n)}
    if symmetric:
        edges.update({(b, a): label for a, b in list(edges)})
    return LabeledDigraph(vertices, edges, field)


def test_directed_triangle(f7, naive_automorphism_count):
    g = cycle(3, f7)
    assert automorphism_group(g).order == 3
    assert naive_automorphism_count(g) == 3


def test_single_vertex(f7):
    group = automorphism_group(LabeledDigraph(["x"], {}, f7))
    assert group.order == 1
    assert group.generators == []


def test_heawood_orders(heawood, heawood_ab):
    assert automorphism_group(heawood).order == 336
    assert automorphism_group(heawood_ab).order == 168


@pytest.mark.slow
def test_heawood_orders_match_naive_count(heawood, heawood_ab, naive_automorphism_count):
    assert naive_automorphism_count(heawood) == 336
    assert naive_automorphism_count(heawood_ab) == 168


def test_tutte_coxeter_orders(f7):
    assert automorphism_group(incidence_graph(gq22(), 3, 3, f7)).order == 1440
    assert group_order(automorphism_group(incidence_graph(gq22(), 3, 5, f7))) == 720


def test_order_agrees_with_schreier_sims(heawood_ab):
    group = automorphism_group(heawood_ab)
    assert group.schreier_sims_order() == group.order
    assert all(group.contains(p) for p in group.generators)


def test_group_order_from_cycles():
    assert PermGroup.from_cycles(3, [[[0, 1]], [[0, 1, 2]]]).order == 6
    assert PermGroup.from_cycles(3, []).order == 1


def test_generators_are_algebra_automorphisms(heawood_ab):
    algebra = GraphAlgebra(heawood_ab)
    group = automorphism_group(heawood_ab)
    for perm in group.generators:
        assert is_graph_automorphism(heawood_ab, perm)
        assert is_algebra_automorphism(algebra, perm)


def test_non_automorphisms_are_rejected(heawood_algebra):
    identity = {x: x for x in heawood_algebra.basis}
    assert is_algebra_automorphism(heawood_algebra, identity)
    assert not is_algebra_automorphism(heawood_algebra, {"1": "2", "2": "1"})
    assert not is_algebra_automorphism(heawood_algebra, {"1": "[1,2,3]", "[1,2,3]": "1"})


def test_label_breaking_transposition(f7):
    g = LabeledDigraph(["a", "b"], {("a", "b"): 2, ("b", "a"): 3}, f7)
    assert automorphism_group(g).order == 1
    assert not is_algebra_automorphism(GraphAlgebra(g), [1, 0])


def test_cycle_notation_uses_vertex_names(f7):
    group = automorphism_group(cycle(3, f7))
    assert group.to_json()["generators"]
    assert set(group.to_json()["generators"]) <= {"(0 1 2)", "(0 2 1)"}


@settings(max_examples=80, deadline=None)
@given(labeled_digraphs(labels=(2, 3), max_vertices=6))
def test_order_matches_naive_backtracking(g):
    from conftest import count_automorphisms

    group = automorphism_group(g)
    assert group.order == count_automorphisms(g)
    algebra = GraphAlgebra(g)
    for perm in group.generators:
        assert is_algebra_automorphism(algebra, perm)


# -- hypotheses --------------------------------------------------------------------


def test_heawood_hypotheses(heawood):
    status = check_theorem_hypotheses(heawood)
    assert status.girth == 6
    assert status.k_min == status.k_max == 3
    assert all(status.checks.values())
    assert status.applicable == [Theorem.GRAPH_DEGREE_GIRTH]
    # the Fano plane has three lines per point
    assert status.origin["pls_three_points_per_line"]
    assert not status.origin["pls_four_lines_per_point"]


def test_hypotheses_use_recovered_origin(heawood):
    loaded = LabeledDigraph.from_json(heawood.to_json())
    status = check_theorem_hypotheses(loaded)
    assert status.origin["recovered"]
    assert status.applicable == [Theorem.GRAPH_DEGREE_GIRTH]


def test_k4_over_f2(k4_incidence_f2):
    status = check_theorem_hypotheses(k4_incidence_f2)
    assert status.labels_all_one_over_f2
    assert status.applicable == [Theorem.INCIDENCE_F2]


def test_subdivided_k5(f5):
    status = check_theorem_hypotheses(incidence_graph(complete_graph_space(5), 2, 3, f5))
    assert status.applicable == [Theorem.INCIDENCE]
    assert not status.checks["k_min_above_2"]


def test_symmetric_square_fails(f7):
    status = check_theorem_hypotheses(cycle(4, f7, symmetric=True))
    assert status.applicable == []
    assert not status.checks["k_min_above_2"]


def test_tutte_coxeter_hypotheses(f7):
    status = check_theorem_hypotheses(incidence_graph(gq22(), 3, 3, f7))
    assert status.girth == 8
    assert status.applicable == [Theorem.GRAPH_DEGREE_GIRTH]


def test_cayley_graph_of_transpositions(f7):
    group, gens = CayleyTable.from_permutations([[1, 0, 2], [0, 2, 1], [2, 1, 0]])
    g = cayley_graph(group, gens, {s: 3 for s in gens}, f7)
    status = check_theorem_hypotheses(g)
    assert status.symmetric
    assert status.k_min == status.k_max == 3
    assert status.girth == 4
    assert not status.checks["k_min_at_most_girth_minus_3"]
    assert status.applicable == []
