"""
Labeled directed graphs and the constructions built on them.

A ``LabeledDigraph`` has string vertices in a fixed order (the basis order of
the algebra), no loops, at most one edge per ordered pair and nonzero labels
in an exact field.  Structural queries on the underlying undirected graph go
through networkx.
"""

import json
import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from types import MappingProxyType
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

import networkx as nx
from pydantic import BaseModel, Field, ValidationError, field_validator

from graphaxial.core.exactfield import FieldCtx, Scalar
from graphaxial.errors import (
    DivisionByZero,
    InvalidGraph,
    InvalidLabel,
    NotIdealSubgraph,
    ParseError,
)
from graphaxial.generators.groups import CayleyTable

logger = logging.getLogger(__name__)


class Infinity(str, Enum):
    """Value of girth or degree bounds that are not attained by any integer."""

    INFINITY = "inf"


INFINITY = Infinity.INFINITY

Extent = Union[int, Infinity]


# -- JSON documents ------------------------------------------------------------


class GraphDocument(BaseModel):
    """The JSON graph format, before any graph rule is checked."""

    field: Dict[str, Any]
    vertices: List[str]
    edges: List[List[str]] = Field(default_factory=list)

    @field_validator("edges")
    def validate_edges(cls, v):
        for edge in v:
            if len(edge) != 3:
                raise ValueError(f"edge must be [tail, head, label], got {edge}")
        return v

    @classmethod
    def parse(cls, text: str) -> "GraphDocument":
        try:
            return cls.model_validate_json(text)
        except ValidationError as e:
            raise ParseError(f"Invalid graph document: {e}")


class PLSDocument(BaseModel):
    """The JSON format of a partial linear space."""

    points: List[str]
    lines: List[List[str]]


class PartialLinearSpace:
    """Points and lines, every line has at least two points and two points share at most one line."""

    def __init__(self, points: Sequence[str], lines: Sequence[Iterable[str]]):
        self.points: Tuple[str, ...] = tuple(str(p) for p in points)
        if len(set(self.points)) != len(self.points):
            raise InvalidGraph("duplicate point names")
        point_set = set(self.points)
        self.lines: Tuple[Tuple[str, ...], ...] = tuple(tuple(str(p) for p in line) for line in lines)
        seen_pairs: Dict[Tuple[str, str], int] = {}
        for i, line in enumerate(self.lines):
            if len(line) < 2 or len(set(line)) != len(line):
                raise InvalidGraph(f"line {list(line)} needs at least two distinct points")
            for p in line:
                if p not in point_set:
                    raise InvalidGraph(f"line {list(line)} has unknown point {p!r}")
            for pair in combinations(sorted(line), 2):
                if pair in seen_pairs:
                    raise InvalidGraph(
                        f"points {pair[0]!r} and {pair[1]!r} lie on two lines",
                        witness=[list(self.lines[seen_pairs[pair]]), list(line)],
                    )
                seen_pairs[pair] = i

    @classmethod
    def from_graph(cls, g: nx.Graph) -> "PartialLinearSpace":
        """A simple graph as a partial linear space whose lines are its edges."""
        if nx.number_of_selfloops(g):
            raise InvalidGraph("a simple graph has no loops")
        return cls([str(v) for v in g.nodes], [(str(u), str(v)) for u, v in g.edges])

    @classmethod
    def from_document(cls, doc: PLSDocument) -> "PartialLinearSpace":
        return cls(doc.points, doc.lines)

    def to_document(self) -> PLSDocument:
        return PLSDocument(points=list(self.points), lines=[list(line) for line in self.lines])

    @staticmethod
    def line_name(line: Sequence[str]) -> str:
        return "[" + ",".join(line) + "]"

    @property
    def line_names(self) -> List[str]:
        return [self.line_name(line) for line in self.lines]

    @property
    def is_graph(self) -> bool:
        """True when every line has exactly two points."""
        return all(len(line) == 2 for line in self.lines)

    def lines_through(self, point: str) -> List[int]:
        return [i for i, line in enumerate(self.lines) if point in line]

    def point_degrees(self) -> Dict[str, int]:
        degrees = {p: 0 for p in self.points}
        for line in self.lines:
            for p in line:
                degrees[p] += 1
        return degrees


@dataclass(frozen=True)
class IncidenceOrigin:
    """Construction metadata of an incidence graph."""

    space: PartialLinearSpace
    line_vertices: Tuple[str, ...]
    alpha: Optional[Scalar] = None
    beta: Optional[Scalar] = None
    recovered: bool = False

    @property
    def kind(self) -> str:
        return "graph" if self.space.is_graph else "pls"


# -- the graph type -------------------------------------------------------------


class LabeledDigraph:
    """An edge-labeled digraph over an exact field.  Immutable after construction."""

    def __init__(
        self,
        vertices: Iterable[str],
        edges: Union[Mapping[Tuple[str, str], Scalar], Iterable[Tuple[str, str, Scalar]]],
        field: FieldCtx,
        origin: Optional[IncidenceOrigin] = None,
    ):
        self.field = field
        self.vertices: Tuple[str, ...] = tuple(str(v) for v in vertices)
        if not self.vertices:
            raise InvalidGraph("a graph needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidGraph("duplicate vertex names")
        self.index: Mapping[str, int] = MappingProxyType({v: i for i, v in enumerate(self.vertices)})
        self.origin = origin

        items = edges.items() if isinstance(edges, Mapping) else (((x, y), a) for x, y, a in edges)
        stored: Dict[Tuple[str, str], Scalar] = {}
        for (x, y), label in items:
            x, y = str(x), str(y)
            if x not in self.index or y not in self.index:
                raise InvalidGraph(f"edge ({x}, {y}) has an unknown endpoint")
            if x == y:
                raise InvalidGraph(f"loop at {x}")
            if (x, y) in stored:
                raise InvalidGraph(f"multiple edges ({x}, {y})")
            label = field.element(label)
            if label == 0:
                raise InvalidGraph(f"edge ({x}, {y}) has label 0")
            stored[(x, y)] = label
        # canonical edge order: by tail index, then head index
        ordered = sorted(stored.items(), key=lambda kv: (self.index[kv[0][0]], self.index[kv[0][1]]))
        self._edges: Dict[Tuple[str, str], Scalar] = dict(ordered)
        self.edges: Mapping[Tuple[str, str], Scalar] = MappingProxyType(self._edges)

        n = len(self.vertices)
        self.out_adj: List[List[Tuple[int, Scalar]]] = [[] for _ in range(n)]
        self.in_adj: List[List[Tuple[int, Scalar]]] = [[] for _ in range(n)]
        for (x, y), label in self._edges.items():
            i, j = self.index[x], self.index[y]
            self.out_adj[i].append((j, label))
            self.in_adj[j].append((i, label))

    # -- basic queries ----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.vertices)

    def __reduce__(self):
        return (LabeledDigraph, (self.vertices, dict(self._edges), self.field, self.origin))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledDigraph):
            return NotImplemented
        return self.field == other.field and self.vertices == other.vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.field, self.vertices, tuple(self._edges.items())))

    def __repr__(self) -> str:
        return f"LabeledDigraph({len(self.vertices)} vertices, {len(self._edges)} edges over {self.field})"

    def has_edge(self, x: str, y: str) -> bool:
        return (x, y) in self._edges

    def label(self, x: str, y: str) -> Optional[Scalar]:
        return self._edges.get((x, y))

    def out_degree(self, x: str) -> int:
        return len(self.out_adj[self.index[x]])

    def in_degree(self, x: str) -> int:
        return len(self.in_adj[self.index[x]])

    def neighbors(self, x: str) -> Set[str]:
        """Vertices joined to ``x`` in either direction."""
        i = self.index[x]
        return {self.vertices[j] for j, _ in self.out_adj[i]} | {self.vertices[j] for j, _ in self.in_adj[i]}

    def labels(self) -> Set[Scalar]:
        return set(self._edges.values())

    def underlying(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self._edges.keys())
        return g

    def is_symmetric(self) -> bool:
        return all((y, x) in self._edges for x, y in self._edges)

    def is_weakly_connected(self) -> bool:
        return nx.is_connected(self.underlying())

    def reversed(self) -> "LabeledDigraph":
        """The graph with every edge turned around, keeping its label."""
        return LabeledDigraph(self.vertices, {(y, x): a for (x, y), a in self._edges.items()}, self.field)

    def relabeled(self, labels: Mapping[Tuple[str, str], Scalar]) -> "LabeledDigraph":
        edges = dict(self._edges)
        edges.update(labels)
        return LabeledDigraph(self.vertices, edges, self.field, self.origin)

    # -- serialization --------------------------------------------------------------

    def to_document(self) -> GraphDocument:
        render = self.field.render
        return GraphDocument(
            field=self.field.to_json(),
            vertices=list(self.vertices),
            edges=[[x, y, render(a)] for (x, y), a in self._edges.items()],
        )

    def to_json(self) -> str:
        return self.to_document().model_dump_json()

    @classmethod
    def from_document(cls, doc: GraphDocument) -> "LabeledDigraph":
        report = validate(doc)
        if not report.valid:
            raise InvalidGraph(f"Invalid graph: {report.summary()}", witness=report.model_dump())
        ctx = FieldCtx.from_json(doc.field)
        return cls(doc.vertices, [(x, y, ctx.parse(a)) for x, y, a in doc.edges], ctx)

    @classmethod
    def from_json(cls, text: str) -> "LabeledDigraph":
        return cls.from_document(GraphDocument.parse(text))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"digraph {json.dumps(name)} {{"]
        for v in self.vertices:
            lines.append(f"  {json.dumps(v)};")
        for (x, y), a in self._edges.items():
            lines.append(f"  {json.dumps(x)} -> {json.dumps(y)} [label={json.dumps(self.field.render(a))}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- validation and profile --------------------------------------------------------


class ValidationReport(BaseModel):
    """Graph-rule violations of a document; empty lists mean none."""

    valid: bool
    weakly_connected: bool
    duplicate_vertices: List[str] = Field(default_factory=list)
    unknown_vertices: List[List[str]] = Field(default_factory=list)
    loops: List[List[str]] = Field(default_factory=list)
    multi_edges: List[List[str]] = Field(default_factory=list)
    zero_labels: List[List[str]] = Field(default_factory=list)
    bad_labels: List[List[str]] = Field(default_factory=list)

    def summary(self) -> str:
        problems = []
        for name in ("duplicate_vertices", "unknown_vertices", "loops", "multi_edges", "zero_labels", "bad_labels"):
            items = getattr(self, name)
            if items:
                problems.append(f"{name.replace('_', ' ')}: {items}")
        return "; ".join(problems) or "valid"


def validate(g: Union[LabeledDigraph, GraphDocument]) -> ValidationReport:
    """Check the loop, multi-edge and zero-label rules and weak connectivity.

    A constructed ``LabeledDigraph`` already satisfies the rules, so only its
    connectivity is reported.  A raw ``GraphDocument`` is checked rule by rule.
    """
    if isinstance(g, LabeledDigraph):
        return ValidationReport(valid=True, weakly_connected=g.is_weakly_connected())

    ctx = FieldCtx.from_json(g.field)
    report = ValidationReport(valid=True, weakly_connected=False)
    seen_vertices: Set[str] = set()
    for v in g.vertices:
        if v in seen_vertices:
            report.duplicate_vertices.append(v)
        seen_vertices.add(v)

    underlying = nx.Graph()
    underlying.add_nodes_from(g.vertices)
    seen_pairs: Set[Tuple[str, str]] = set()
    for x, y, text in g.edges:
        edge = [x, y, text]
        if x not in seen_vertices or y not in seen_vertices:
            report.unknown_vertices.append(edge)
            continue
        if x == y:
            report.loops.append(edge)
            continue
        if (x, y) in seen_pairs:
            report.multi_edges.append(edge)
        seen_pairs.add((x, y))
        try:
            label = ctx.parse(text)
        except (ParseError, DivisionByZero):
            report.bad_labels.append(edge)
            continue
        if label == 0:
            report.zero_labels.append(edge)
            continue
        underlying.add_edge(x, y)

    report.valid = not (
        report.duplicate_vertices
        or report.unknown_vertices
        or report.loops
        or report.multi_edges
        or report.zero_labels
        or report.bad_labels
        or not g.vertices
    )
    report.weakly_connected = bool(g.vertices) and nx.is_connected(underlying)
    return report


class GraphProfile(BaseModel):
    """Degree and girth data used by the hypothesis checkers."""

    is_symmetric: bool
    weakly_connected: bool
    girth: Extent
    k_min: Extent
    k_max: Extent
    per_vertex_degrees: Dict[str, Tuple[int, int]]


def girth(g: LabeledDigraph) -> Extent:
    value = nx.girth(g.underlying())
    return INFINITY if value == float("inf") else int(value)


def profile(g: LabeledDigraph) -> GraphProfile:
    underlying = g.underlying()
    degrees = [d for _, d in underlying.degree()]
    return GraphProfile(
        is_symmetric=g.is_symmetric(),
        weakly_connected=nx.is_connected(underlying),
        girth=girth(g),
        k_min=min(degrees) if degrees else INFINITY,
        k_max=max(degrees) if degrees else INFINITY,
        per_vertex_degrees={v: (g.in_degree(v), g.out_degree(v)) for v in g.vertices},
    )


# -- constructions -------------------------------------------------------------------


def incidence_graph(
    d: Union[PartialLinearSpace, nx.Graph],
    alpha: Scalar,
    beta: Scalar,
    field: FieldCtx,
) -> LabeledDigraph:
    """Directed incidence graph: points first, then lines.

    Every incident pair (p, l) gives the edge (p, l) labeled ``alpha`` and the
    edge (l, p) labeled ``beta``.
    """
    space = d if isinstance(d, PartialLinearSpace) else PartialLinearSpace.from_graph(d)
    alpha, beta = field.element(alpha), field.element(beta)
    if alpha == 0 or beta == 0:
        raise InvalidLabel("incidence labels must be nonzero")
    names = space.line_names
    clash = set(names) & set(space.points)
    if clash or len(set(names)) != len(names):
        raise InvalidGraph(f"line names collide with points: {sorted(clash)}")
    edges: Dict[Tuple[str, str], Scalar] = {}
    for name, line in zip(names, space.lines):
        for p in line:
            edges[(p, name)] = alpha
            edges[(name, p)] = beta
    logger.debug(f"Incidence graph on {len(space.points)} points and {len(space.lines)} lines")
    return LabeledDigraph(
        list(space.points) + names,
        edges,
        field,
        origin=IncidenceOrigin(space=space, line_vertices=tuple(names), alpha=alpha, beta=beta),
    )


def cayley_graph(
    group: CayleyTable,
    gens: Sequence[str],
    labels: Mapping[str, Scalar],
    field: FieldCtx,
) -> LabeledDigraph:
    """Edges (g, g·s) labeled ``labels[s]`` for every element g and generator s."""
    group.check_generators(gens)
    edges: Dict[Tuple[str, str], Scalar] = {}
    for s in gens:
        if s not in labels:
            raise InvalidLabel(f"no label for generator {s!r}")
        label = field.element(labels[s])
        if label == 0:
            raise InvalidLabel(f"generator {s!r} has label 0")
        for g in group.elements:
            edges[(g, group.multiply(g, s))] = label
    return LabeledDigraph(group.elements, edges, field)


def complete_graph(n: int, label: Scalar, ctx: FieldCtx) -> LabeledDigraph:
    """Symmetric complete digraph on vertices ``x1..xn`` with one label."""
    if n < 1:
        raise InvalidGraph("a complete graph needs n >= 1")
    label = ctx.element(label)
    if label == 0:
        raise InvalidLabel("complete graph label must be nonzero")
    vertices = [f"x{i}" for i in range(1, n + 1)]
    edges = {(x, y): label for x in vertices for y in vertices if x != y}
    return LabeledDigraph(vertices, edges, ctx)


def contracted_name(g: LabeledDigraph, y: Iterable[str]) -> str:
    members = sorted(y, key=g.index.__getitem__)
    return "{" + ",".join(members) + "}"


def contract_ideal_subgraph(g: LabeledDigraph, y: Iterable[str]) -> LabeledDigraph:
    """The graph Γ/Y with the ideal subgraph Y shrunk to one vertex.

    The new vertex takes the basis position of the first member of Y.  An
    outside vertex x keeps its edge into Y with label α_x and its edge out of Y
    with label β_x.
    """
    from graphaxial.core.structure import ideal_subgraph_witness

    y = set(y)
    witness = ideal_subgraph_witness(g, y)
    if witness is None:
        raise NotIdealSubgraph(f"{sorted(y)} is not an ideal subgraph")
    name = contracted_name(g, y)
    if name in g.index and name not in y:
        raise InvalidGraph(f"contracted vertex name {name!r} already in use")

    first = min(y, key=g.index.__getitem__)
    vertices = [name if v == first else v for v in g.vertices if v == first or v not in y]
    edges: Dict[Tuple[str, str], Scalar] = {}
    for (a, b), label in g.edges.items():
        if a not in y and b not in y:
            edges[(a, b)] = label
    for x, (alpha_x, beta_x) in witness.external_labels.items():
        if alpha_x is not None:
            edges[(x, name)] = alpha_x
        if beta_x is not None:
            edges[(name, x)] = beta_x
    return LabeledDigraph(vertices, edges, g.field)


def recover_incidence_origin(g: LabeledDigraph) -> List[IncidenceOrigin]:
    """Read a symmetric connected bipartite graph of girth >= 6 back as an incidence graph.

    Lines are the vertices at odd distance from a vertex of largest degree.  A
    candidate is kept when all lines have two points (a graph) or all have
    three (a partial linear space).  Labels are recorded when they are
    constant on point-to-line and on line-to-point edges.
    """
    if not g.is_symmetric():
        return []
    underlying = g.underlying()
    if not nx.is_connected(underlying) or not nx.is_bipartite(underlying) or len(g) < 3:
        return []
    value = girth(g)
    if value != INFINITY and value < 6:
        return []

    start = max(g.vertices, key=lambda v: (underlying.degree(v), -g.index[v]))
    distance = nx.single_source_shortest_path_length(underlying, start)
    points = [v for v in g.vertices if distance[v] % 2 == 0]
    lines = [v for v in g.vertices if distance[v] % 2 == 1]
    sizes = {underlying.degree(v) for v in lines}
    if sizes not in ({2}, {3}):
        return []
    space = PartialLinearSpace(points, [sorted(underlying.neighbors(v), key=g.index.__getitem__) for v in lines])
    alphas = {g.label(p, l) for l in lines for p in underlying.neighbors(l)}
    betas = {g.label(l, p) for l in lines for p in underlying.neighbors(l)}
    origin = IncidenceOrigin(
        space=space,
        line_vertices=tuple(lines),
        alpha=alphas.pop() if len(alphas) == 1 else None,
        beta=betas.pop() if len(betas) == 1 else None,
        recovered=True,
    )
    logger.debug(f"Recovered a {origin.kind} with {len(points)} points and {len(lines)} lines")
    return [origin]
