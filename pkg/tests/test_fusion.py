import pytest
from hypothesis import given, settings

from graphaxial.core.algebra import GraphAlgebra, Side
from graphaxial.core.fusion import FusionLaw, axis_spectrum, check_fusion
from graphaxial.core.graph import LabeledDigraph, complete_graph
from graphaxial.errors import NotSemisimple, SpectrumOutsideLaw

from strategies import labeled_digraphs, symmetric_digraphs


def cells(report, axis, side=Side.LEFT):
    entry = next(a for a in report.axes if a.axis == axis and a.side == side)
    return {(c.left, c.right): c.observed for c in entry.cells}


def test_graph_type_law(f7):
    law = FusionLaw.graph_type(f7, [0, 3, 5])
    assert law.eigenvalues == [1, 3, 5, 0]
    assert law.allowed(1, 3) == {3}
    assert law.allowed(0, 0) == {0}
    assert law.allowed(3, 3) == {1, 3}
    assert law.allowed(3, 5) == {1, 3, 5}
    assert law.allowed(5, 0) == {1, 5, 0}
    assert all(law.allowed(a, b) == law.allowed(b, a) for a in law.eigenvalues for b in law.eigenvalues)


def test_spectra(heawood_algebra, f7):
    assert axis_spectrum(heawood_algebra, "1") == [1, 3, 0]
    assert axis_spectrum(GraphAlgebra(complete_graph(3, 4, f7)), "x1") == [1, 4]
    edge = GraphAlgebra(LabeledDigraph(["x", "y"], {("x", "y"): 2, ("y", "x"): 2}, f7))
    assert axis_spectrum(edge, "x") == [1, 2]


def test_heawood_commutative(heawood_algebra):
    report = check_fusion(heawood_algebra, sides=(Side.LEFT, Side.RIGHT))
    assert report.law_satisfied
    assert not report.violations
    observed = cells(report, "1")
    assert observed[("1", "1")] == ["1"]
    assert observed[("3", "3")] == ["1", "3"]
    assert observed[("3", "0")] == ["1", "3", "0"]
    assert observed[("0", "0")] == ["0"]
    assert observed[("1", "0")] == []


def test_left_and_right_agree_when_commutative(heawood_algebra):
    report = check_fusion(heawood_algebra, axes=["1", "[1,2,3]"], sides=(Side.LEFT, Side.RIGHT))
    for axis in ("1", "[1,2,3]"):
        assert cells(report, axis, Side.LEFT) == cells(report, axis, Side.RIGHT)


def test_heawood_noncommutative(heawood_ab):
    algebra = GraphAlgebra(heawood_ab)
    report = check_fusion(algebra, sides=(Side.LEFT, Side.RIGHT))
    assert report.law_satisfied
    assert report.law["eigenvalues"] == ["1", "3", "5", "0"]
    point_left = next(a for a in report.axes if a.axis == "1" and a.side == Side.LEFT)
    point_right = next(a for a in report.axes if a.axis == "1" and a.side == Side.RIGHT)
    assert point_left.spectrum == ["1", "3", "0"]
    assert point_right.spectrum == ["1", "5", "0"]


def test_two_vertex_edge(f5):
    algebra = GraphAlgebra(LabeledDigraph(["x", "y"], {("x", "y"): 2, ("y", "x"): 2}, f5))
    report = check_fusion(algebra)
    assert report.law_satisfied
    assert set(cells(report, "x")[("2", "2")]) <= {"1", "2"}


def test_label_one_raises(f7):
    algebra = GraphAlgebra(LabeledDigraph(["x", "y"], {("x", "y"): 1, ("y", "x"): 1}, f7))
    with pytest.raises(NotSemisimple):
        check_fusion(algebra)


def test_spectrum_outside_law(heawood_algebra, f7):
    with pytest.raises(SpectrumOutsideLaw):
        check_fusion(heawood_algebra, law=FusionLaw.from_option(f7, "1,0"))


def test_law_must_hold_every_eigenvalue(heawood_algebra, f7):
    with pytest.raises(SpectrumOutsideLaw):
        check_fusion(heawood_algebra, law=FusionLaw.from_option(f7, "1,3"))
    report = check_fusion(GraphAlgebra(complete_graph(3, 4, f7)), law=FusionLaw.from_option(f7, "1,4"))
    assert report.law_satisfied
    assert not report.missing_zero


@settings(max_examples=50, deadline=None)
@given(labeled_digraphs(max_vertices=7))
def test_random_graphs_satisfy_graph_type_law(g):
    report = check_fusion(GraphAlgebra(g), sides=(Side.LEFT, Side.RIGHT))
    assert report.law_satisfied, report.violations


@settings(max_examples=100, deadline=None)
@given(symmetric_digraphs(max_vertices=8))
def test_random_symmetric_graphs_satisfy_graph_type_law(g):
    algebra = GraphAlgebra(g)
    report = check_fusion(algebra, sides=(Side.LEFT, Side.RIGHT))
    assert report.law_satisfied, report.violations
    assert len(report.axes) == 2 * len(g)
    for entry in report.axes:
        assert sum(entry.dimensions.values()) == algebra.dimension


def test_zero_cells_come_from_products(heawood_algebra, f7):
    observed = cells(check_fusion(heawood_algebra), "1")
    assert observed[("1", "0")] == []
    assert observed[("0", "1")] == []
    assert observed[("0", "0")] == ["0"]

    path = ["a", "b", "c", "d"]
    edges = {}
    for x, y in zip(path, path[1:]):
        edges[(x, y)] = 3
        edges[(y, x)] = 3
    observed = cells(check_fusion(GraphAlgebra(LabeledDigraph(path, edges, f7)), axes=["a"]), "a")
    assert observed[("1", "0")] == []
    assert observed[("0", "0")] == ["0"]


def test_isolated_axis_has_only_a_one_cell(f7):
    algebra = GraphAlgebra(LabeledDigraph(["x"], {}, f7))
    observed = cells(check_fusion(algebra), "x")
    assert observed == {("1", "1"): ["1"]}
