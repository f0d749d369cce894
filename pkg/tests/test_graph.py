import json

import networkx as nx
import pytest

from graphaxial.core.graph import (
    INFINITY,
    GraphDocument,
    LabeledDigraph,
    PartialLinearSpace,
    cayley_graph,
    complete_graph,
    contract_ideal_subgraph,
    girth,
    incidence_graph,
    profile,
    recover_incidence_origin,
    validate,
)
from graphaxial.errors import InvalidGraph, InvalidLabel, NotGenerating, NotIdealSubgraph, ParseError
from graphaxial.generators.groups import CayleyTable
from graphaxial.generators.providers import complete_graph_space, gq22


def document(edges, vertices=("a", "b", "c"), field=None):
    return GraphDocument(field=field or {"kind": "Fp", "p": 7}, vertices=list(vertices), edges=edges)


def test_rejects_loop(f7):
    with pytest.raises(InvalidGraph):
        LabeledDigraph(["a", "b"], [("a", "a", 2)], f7)


def test_rejects_zero_label(f7):
    with pytest.raises(InvalidGraph):
        LabeledDigraph(["a", "b"], [("a", "b", 7)], f7)


def test_rejects_multi_edge(f7):
    with pytest.raises(InvalidGraph):
        LabeledDigraph(["a", "b"], [("a", "b", 2), ("a", "b", 3)], f7)


def test_validate_reports_every_violation():
    report = validate(document([["a", "a", "2"], ["a", "b", "0"], ["b", "c", "2"], ["b", "c", "3"], ["c", "z", "1"]]))
    assert not report.valid
    assert report.loops == [["a", "a", "2"]]
    assert report.zero_labels == [["a", "b", "0"]]
    assert report.multi_edges == [["b", "c", "3"]]
    assert report.unknown_vertices == [["c", "z", "1"]]


def test_validate_connectivity():
    report = validate(document([["a", "b", "2"]]))
    assert report.valid
    assert not report.weakly_connected


def test_document_edges_need_three_fields():
    with pytest.raises(ParseError):
        GraphDocument.parse(json.dumps({"field": {"kind": "Q"}, "vertices": ["a"], "edges": [["a", "b"]]}))


def test_json_round_trip(heawood_ab):
    again = LabeledDigraph.from_json(heawood_ab.to_json())
    assert again == heawood_ab
    assert again.to_json() == heawood_ab.to_json()


def test_dot_carries_labels(heawood_ab):
    dot = heawood_ab.to_dot()
    assert dot.startswith('digraph "G" {')
    assert '"1" -> "[1,2,3]" [label="3"];' in dot
    assert '"[1,2,3]" -> "1" [label="5"];' in dot


def test_heawood_profile(heawood):
    data = profile(heawood)
    assert data.is_symmetric
    assert data.weakly_connected
    assert data.girth == 6
    assert data.k_min == data.k_max == 3
    assert data.per_vertex_degrees["1"] == (3, 3)


def test_tree_has_infinite_girth(f7):
    path = LabeledDigraph(["a", "b", "c"], {("a", "b"): 2, ("b", "c"): 2}, f7)
    assert girth(path) == INFINITY
    assert not path.is_symmetric()


def test_incidence_graph_of_fano(heawood_ab, fano):
    assert len(heawood_ab) == 14
    assert len(heawood_ab.edges) == 42
    assert heawood_ab.vertices[:7] == fano.points
    assert heawood_ab.label("1", "[1,2,3]") == 3
    assert heawood_ab.label("[1,2,3]", "1") == 5
    assert heawood_ab.origin.line_vertices == tuple(fano.line_names)


def test_incidence_graph_rejects_zero_label(fano, f7):
    with pytest.raises(InvalidLabel):
        incidence_graph(fano, 0, 3, f7)


def test_partial_linear_space_rejects_two_common_lines():
    with pytest.raises(InvalidGraph):
        PartialLinearSpace(["1", "2", "3"], [("1", "2", "3"), ("1", "2")])


def test_incidence_graph_of_a_graph_subdivides_it(f5):
    g = incidence_graph(nx.relabel_nodes(nx.complete_graph(4), str), 2, 2, f5)
    assert len(g) == 10
    assert sorted(d for _, d in g.underlying().degree()) == [2] * 6 + [3] * 4


def test_cayley_graph_of_cyclic_group(z3, f7):
    group, gens = z3
    g = cayley_graph(group, gens, {"1": 4}, f7)
    assert set(g.edges) == {("0", "1"), ("1", "2"), ("2", "0")}
    assert g.labels() == {4}


def test_cayley_graph_rejects_non_generating(s3, f7):
    group, gens = s3
    with pytest.raises(NotGenerating):
        cayley_graph(group, gens[:1], {gens[0]: 2}, f7)


def test_complete_graph(q):
    g = complete_graph(5, q.parse("-1/3"), q)
    assert len(g.edges) == 20
    assert g.is_symmetric()


def test_contract_ideal_subgraph(ideal_instance):
    contracted = contract_ideal_subgraph(ideal_instance, ["y1", "y2"])
    assert contracted.vertices == ("{y1,y2}", "x")
    assert contracted.label("x", "{y1,y2}") == 2
    assert contracted.label("{y1,y2}", "x") == 4


def test_contract_rejects_non_ideal_subgraph(ideal_instance):
    with pytest.raises(NotIdealSubgraph):
        contract_ideal_subgraph(ideal_instance, ["y1", "x"])


def test_recover_fano_from_json(heawood):
    loaded = LabeledDigraph.from_json(heawood.to_json())
    assert loaded.origin is None
    (origin,) = recover_incidence_origin(loaded)
    assert origin.recovered
    assert origin.kind == "pls"
    assert len(origin.space.points) == 7
    assert len(origin.space.lines) == 7
    assert origin.alpha == origin.beta == 3


def test_recover_graph_origin(f5):
    g = incidence_graph(complete_graph_space(4), 2, 3, f5)
    loaded = LabeledDigraph.from_json(g.to_json())
    (origin,) = recover_incidence_origin(loaded)
    assert origin.kind == "graph"
    assert set(origin.line_vertices) == set(g.origin.line_vertices)
    assert origin.alpha == 2 and origin.beta == 3


def test_no_origin_for_odd_cycles(f7):
    triangle = complete_graph(3, 2, f7)
    assert recover_incidence_origin(triangle) == []


def test_gq22_is_a_generalized_quadrangle():
    space = gq22()
    assert len(space.points) == len(space.lines) == 15
    assert set(space.point_degrees().values()) == {3}
    underlying = nx.Graph()
    for i, line in enumerate(space.lines):
        underlying.add_edges_from((p, f"L{i}") for p in line)
    assert nx.girth(underlying) == 8


def test_group_table_validation():
    with pytest.raises(ValueError):
        CayleyTable(["e", "a"], [["e", "a"], ["a", "a"]])
