import pytest
from hypothesis import given, settings

from graphaxial.core.algebra import GraphAlgebra, Side
from graphaxial.core.graph import LabeledDigraph
from graphaxial.errors import FieldMismatch, NotSemisimple, ParseError

from strategies import algebras_with_elements, labeled_digraphs


def test_basis_products(f7):
    g = LabeledDigraph(["x", "y", "z"], {("x", "y"): 3}, f7)
    algebra = GraphAlgebra(g)
    x, y, z = (algebra.vertex(v) for v in "xyz")
    assert algebra.multiply(x, x) == x
    assert algebra.multiply(x, y) == algebra.element({"x": 3, "y": 3})
    assert algebra.multiply(y, x).is_zero()
    assert algebra.multiply(x, z).is_zero()


def test_elements_drop_zero_coefficients(f7):
    algebra = GraphAlgebra(LabeledDigraph(["x", "y"], {}, f7))
    a = algebra.element({"x": 7, "y": 2})
    assert a.support == frozenset({"y"})
    assert a.to_json() == {"y": "2"}


def test_unknown_vertex(f7):
    algebra = GraphAlgebra(LabeledDigraph(["x"], {}, f7))
    with pytest.raises(ParseError):
        algebra.element({"w": 1})


def test_field_mismatch(f5, f7):
    algebra = GraphAlgebra(LabeledDigraph(["x"], {}, f7))
    other = GraphAlgebra(LabeledDigraph(["x"], {}, f5))
    with pytest.raises(FieldMismatch):
        algebra.multiply(algebra.vertex("x"), other.vertex("x"))


@settings(max_examples=60, deadline=None)
@given(algebras_with_elements(count=3))
def test_product_is_bilinear(data):
    algebra, a, b, c = data
    assert algebra.multiply(a + b, c) == algebra.multiply(a, c) + algebra.multiply(b, c)
    assert algebra.multiply(c, a + b) == algebra.multiply(c, a) + algebra.multiply(c, b)
    assert algebra.multiply(a.scale(3), b) == algebra.multiply(a, b).scale(3)


@settings(max_examples=60, deadline=None)
@given(algebras_with_elements(count=2))
def test_opposite_algebra_swaps_factors(data):
    algebra, a, b = data
    opposite = algebra.opposite()
    assert opposite.multiply(a, b) == algebra.multiply(b, a)


@settings(max_examples=60, deadline=None)
@given(algebras_with_elements(count=2))
def test_dense_and_sparse_products_agree(data):
    algebra, a, b = data
    dense = algebra.multiply_vectors(algebra.to_vector(a), algebra.to_vector(b))
    assert algebra.from_vector(dense) == algebra.multiply(a, b)


@settings(max_examples=60, deadline=None)
@given(labeled_digraphs())
def test_adjoint_rank_of_a_vertex(g):
    algebra = GraphAlgebra(g)
    for x in g.vertices:
        assert algebra.adjoint(algebra.vertex(x), Side.LEFT).rank == 1 + g.out_degree(x)
        assert algebra.adjoint(algebra.vertex(x), Side.RIGHT).rank == 1 + g.in_degree(x)


@settings(max_examples=60, deadline=None)
@given(labeled_digraphs())
def test_axis_eigenvectors(g):
    algebra = GraphAlgebra(g)
    for side in Side:
        for x in g.vertices:
            spaces = algebra.axis_eigenspaces(x, side)
            assert sum(len(vs) for vs in spaces.values()) == len(g)
            for lam, vectors in spaces.items():
                for v in vectors:
                    product = algebra.multiply(algebra.vertex(x), v) if side == Side.LEFT else algebra.multiply(v, algebra.vertex(x))
                    assert product == v.scale(lam)


@settings(max_examples=40, deadline=None)
@given(labeled_digraphs(min_vertices=2))
def test_nonassociative_when_there_is_an_edge(g):
    witness = GraphAlgebra(g).nonassociativity_witness()
    assert (witness is None) == (len(g.edges) == 0)


def test_commutativity(heawood, heawood_ab):
    assert GraphAlgebra(heawood).is_commutative()
    algebra = GraphAlgebra(heawood_ab)
    assert not algebra.is_commutative()
    x, line = algebra.vertex("1"), algebra.vertex("[1,2,3]")
    assert algebra.multiply(x, line) != algebra.multiply(line, x)


def test_vertices_are_primitive_axes(heawood_algebra):
    for x in heawood_algebra.basis:
        assert heawood_algebra.is_primitive_axis(heawood_algebra.vertex(x))


def test_heawood_point_eigenspaces(heawood_algebra, f7):
    spaces = heawood_algebra.axis_eigenspaces("1")
    assert list(spaces) == [1, 3, 0]
    assert [len(vs) for vs in spaces.values()] == [1, 3, 10]


def test_label_one_is_not_semisimple(f7):
    algebra = GraphAlgebra(LabeledDigraph(["x", "y"], {("x", "y"): 1, ("y", "x"): 2}, f7))
    with pytest.raises(NotSemisimple):
        algebra.axis_eigenspaces("x", Side.LEFT)
    assert list(algebra.axis_eigenspaces("x", Side.RIGHT)) == [1, 2]


def test_eigenvectors_must_span_the_algebra(f7, monkeypatch):
    algebra = GraphAlgebra(LabeledDigraph(["x", "y", "z"], {("x", "y"): 3, ("x", "z"): 3}, f7))
    edges = algebra.side_edges("x", Side.LEFT)
    monkeypatch.setattr(algebra, "side_edges", lambda x, side: edges + edges[:1])
    with pytest.raises(NotSemisimple) as excinfo:
        algebra.axis_eigenspaces("x", Side.LEFT)
    assert excinfo.value.witness == {"axis": "x", "eigenvectors": 4}
