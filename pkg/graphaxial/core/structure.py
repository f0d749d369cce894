"""
Ideals of A_Γ: ideal subgraphs, the simplicity verdict, the closure oracle
and quotient algebras.
"""

import logging
import random
from collections import deque
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from pydantic import BaseModel, Field

from graphaxial.core import linalg
from graphaxial.core.algebra import AlgebraElement, GraphAlgebra
from graphaxial.core.exactfield import Scalar
from graphaxial.core.graph import LabeledDigraph, contract_ideal_subgraph, contracted_name
from graphaxial.errors import DivisionByZero, NotAnIdeal, NotWeaklyConnected

logger = logging.getLogger(__name__)

# Subsets of a ½-clique are tried exhaustively up to this size
CLIQUE_SUBSET_LIMIT = 16


class Verdict(str, Enum):
    SIMPLE = "Simple"
    IDEAL_SUBGRAPH = "IdealSubgraphCase"
    COMPLETE_GRAPH = "CompleteGraphCase"
    BOTH = "Both"


class Case(str, Enum):
    IDEAL_SUBGRAPH = "ideal-subgraph"
    COMPLETE_GRAPH = "complete-graph"


@dataclass(frozen=True)
class IdealSubgraphWitness:
    """A vertex set Y with ½-labeled mutual edges and uniform outside attachment.

    ``external_labels[x]`` is ``(α_x, β_x)``: the label of the edges from x into
    Y and of the edges from Y to x, ``None`` when that direction is absent.
    """

    y: Tuple[str, ...]
    external_labels: Dict[str, Tuple[Optional[Scalar], Optional[Scalar]]]

    def ideal_basis(self, algebra: GraphAlgebra) -> List[AlgebraElement]:
        """Basis y_k − y_0 of the zero-sum span I_Y."""
        first = algebra.vertex(self.y[0])
        return [algebra.vertex(v) - first for v in self.y[1:]]

    def to_json(self, g: LabeledDigraph) -> dict:
        render = g.field.render
        return {
            "Y": list(self.y),
            "external_labels": {
                x: [render(a) if a is not None else None, render(b) if b is not None else None]
                for x, (a, b) in self.external_labels.items()
            },
        }


def ideal_subgraph_witness(g: LabeledDigraph, y: Iterable[str]) -> Optional[IdealSubgraphWitness]:
    """Return the witness when ``y`` is an ideal subgraph of ``g``, else None."""
    members = sorted(set(y), key=g.index.__getitem__)
    if len(members) < 2 or g.field.characteristic == 2:
        return None
    half = g.field.half()
    for a, b in combinations(members, 2):
        if g.label(a, b) != half or g.label(b, a) != half:
            return None
    member_set = set(members)
    external: Dict[str, Tuple[Optional[Scalar], Optional[Scalar]]] = {}
    for x in g.vertices:
        if x in member_set:
            continue
        into = {g.label(x, v) for v in members}
        out_of = {g.label(v, x) for v in members}
        if len(into) != 1 or len(out_of) != 1:
            return None
        alpha_x, beta_x = into.pop(), out_of.pop()
        if alpha_x is not None or beta_x is not None:
            external[x] = (alpha_x, beta_x)
    return IdealSubgraphWitness(y=tuple(members), external_labels=external)


def half_graph(g: LabeledDigraph) -> nx.Graph:
    """Undirected graph of the vertex pairs joined both ways with label ½."""
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    if g.field.characteristic == 2:
        return h
    half = g.field.half()
    for (x, y), label in g.edges.items():
        if label == half and g.label(y, x) == half:
            h.add_edge(x, y)
    return h


def find_ideal_subgraphs(g: LabeledDigraph) -> List[IdealSubgraphWitness]:
    """All inclusion-maximal ideal subgraphs, in graph order of their first vertex.

    Empty in characteristic 2.
    """
    if g.field.characteristic == 2:
        return []
    h = half_graph(g)
    found: Dict[frozenset, IdealSubgraphWitness] = {}
    for component in nx.connected_components(h):
        if len(component) < 2:
            continue
        for clique in nx.find_cliques(h.subgraph(component)):
            if len(clique) < 2:
                continue
            if len(clique) > CLIQUE_SUBSET_LIMIT:
                logger.warning(f"½-clique of size {len(clique)}; only the full clique is tested")
                candidates: Iterable[Sequence[str]] = [clique]
            else:
                candidates = (
                    subset for size in range(len(clique), 1, -1) for subset in combinations(clique, size)
                )
            for subset in candidates:
                key = frozenset(subset)
                if key in found:
                    continue
                witness = ideal_subgraph_witness(g, subset)
                if witness is not None:
                    found[key] = witness
    maximal = [w for key, w in found.items() if not any(key < other for other in found)]
    maximal.sort(key=lambda w: [g.index[v] for v in w.y])
    logger.debug(f"Found {len(maximal)} maximal ideal subgraphs")
    return maximal


def complete_graph_label(g: LabeledDigraph) -> Optional[Scalar]:
    """The label 1/(2−|X|) when it exists in the field and |X| >= 2."""
    n = len(g)
    f = g.field
    if n < 2:
        return None
    try:
        return f.inv(f.element(2 - n))
    except DivisionByZero:
        return None


def is_complete_graph_case(g: LabeledDigraph) -> bool:
    """Complete symmetric digraph with every label equal to 1/(2−|X|)."""
    label = complete_graph_label(g)
    n = len(g)
    if label is None or len(g.edges) != n * (n - 1):
        return False
    return all(a == label for a in g.edges.values())


# -- ideals ---------------------------------------------------------------------------


def _unit(algebra: GraphAlgebra, i: int) -> linalg.Vector:
    v = linalg.zero_vector(algebra.field, algebra.dimension)
    v[i] = algebra.field.one
    return v


def ideal_closure(algebra: GraphAlgebra, seed: AlgebraElement) -> List[AlgebraElement]:
    """Smallest two-sided ideal containing ``seed``, as an echelon basis.

    New vectors are multiplied by every vertex on both sides and reduced
    against the current basis until nothing new appears.
    """
    span = linalg.Subspace(algebra.field, algebra.dimension)
    start = algebra.to_vector(seed)
    if not span.add(start):
        return []
    units = [_unit(algebra, i) for i in range(algebra.dimension)]
    queue = deque([start])
    while queue and not span.is_full():
        v = queue.popleft()
        for e in units:
            for product in (algebra.multiply_vectors(e, v), algebra.multiply_vectors(v, e)):
                if span.add(product):
                    queue.append(product)
    return [algebra.from_vector(b) for b in span.basis]


def verify_ideal(algebra: GraphAlgebra, basis: Sequence[AlgebraElement]) -> bool:
    """True iff the span of ``basis`` is closed under multiplication by every vertex."""
    span = linalg.Subspace(algebra.field, algebra.dimension, [algebra.to_vector(b) for b in basis])
    for b in span.basis:
        for i in range(algebra.dimension):
            e = _unit(algebra, i)
            if not span.contains(algebra.multiply_vectors(e, b)):
                return False
            if not span.contains(algebra.multiply_vectors(b, e)):
                return False
    return True


# -- the verdict -------------------------------------------------------------------------


class SimplicityReport(BaseModel):
    """Outcome of the simplicity classification with the ideals that break simplicity."""

    verdict: Verdict
    cases: List[Case] = Field(default_factory=list)
    ideal_subgraphs: List[dict] = Field(default_factory=list)
    ideals_found: List[List[Dict[str, str]]] = Field(default_factory=list)
    note: Optional[str] = None

    @property
    def is_simple(self) -> bool:
        return self.verdict == Verdict.SIMPLE


def simplicity_verdict(g: LabeledDigraph) -> SimplicityReport:
    """Classify A_Γ as simple, or name the ideal-subgraph and complete-graph cases."""
    if not g.is_weakly_connected():
        raise NotWeaklyConnected("the simplicity verdict needs a weakly connected graph")
    algebra = GraphAlgebra(g)
    report = SimplicityReport(verdict=Verdict.SIMPLE)

    for witness in find_ideal_subgraphs(g):
        basis = witness.ideal_basis(algebra)
        if not verify_ideal(algebra, basis):
            logger.warning(f"zero-sum span over {list(witness.y)} is not an ideal")
            continue
        report.ideal_subgraphs.append(witness.to_json(g))
        report.ideals_found.append([b.to_json(algebra.basis) for b in basis])
    if report.ideal_subgraphs:
        report.cases.append(Case.IDEAL_SUBGRAPH)
        report.note = "every subspace of a listed zero-sum ideal is itself an ideal"

    if is_complete_graph_case(g):
        total = algebra.element({x: g.field.one for x in g.vertices})
        if verify_ideal(algebra, [total]):
            report.cases.append(Case.COMPLETE_GRAPH)
            report.ideals_found.append([total.to_json(algebra.basis)])

    if len(report.cases) == 2:
        report.verdict = Verdict.BOTH
    elif report.cases == [Case.IDEAL_SUBGRAPH]:
        report.verdict = Verdict.IDEAL_SUBGRAPH
    elif report.cases == [Case.COMPLETE_GRAPH]:
        report.verdict = Verdict.COMPLETE_GRAPH
    logger.info(f"Simplicity verdict: {report.verdict.value}")
    return report


def oracle_seeds(algebra: GraphAlgebra) -> List[AlgebraElement]:
    """Vertices, differences of two vertices and the sum of all vertices."""
    vertices = [algebra.vertex(x) for x in algebra.basis]
    seeds = list(vertices)
    seeds.extend(a - b for a, b in combinations(vertices, 2))
    if algebra.dimension > 1:
        seeds.append(algebra.element({x: algebra.field.one for x in algebra.basis}))
    return seeds


def oracle_is_simple(algebra: GraphAlgebra) -> bool:
    """Simplicity decided by closing every oracle seed."""
    return all(len(ideal_closure(algebra, s)) == algebra.dimension for s in oracle_seeds(algebra))


class OracleCheck(BaseModel):
    verdict: Verdict
    oracle_simple: bool
    seeds_closed: int
    proper_ideal_seed: Optional[Dict[str, str]] = None

    @property
    def agrees(self) -> bool:
        return (self.verdict == Verdict.SIMPLE) == self.oracle_simple


def _random_element(algebra: GraphAlgebra, rng: random.Random) -> AlgebraElement:
    f = algebra.field
    if f.is_finite:
        coeffs = {x: rng.randrange(f.p) for x in algebra.basis}
    else:
        coeffs = {x: rng.randint(-3, 3) for x in algebra.basis}
    return algebra.element(coeffs)


def cross_check_simplicity(g: LabeledDigraph, random_samples: int = 0, seed: int = 0) -> OracleCheck:
    """Compare the verdict with ideal closures of the oracle seeds and of random elements."""
    report = simplicity_verdict(g)
    algebra = GraphAlgebra(g)
    rng = random.Random(seed)
    seeds = oracle_seeds(algebra)
    seeds.extend(_random_element(algebra, rng) for _ in range(random_samples))
    check = OracleCheck(verdict=report.verdict, oracle_simple=True, seeds_closed=0)
    for s in seeds:
        if s.is_zero():
            continue
        check.seeds_closed += 1
        if len(ideal_closure(algebra, s)) < algebra.dimension:
            check.oracle_simple = False
            check.proper_ideal_seed = s.to_json(list(algebra.basis))
            break
    if not check.agrees:
        logger.error(f"Verdict {report.verdict.value} disagrees with the closure oracle")
    logger.info(f"Closure oracle checked {check.seeds_closed} seeds")
    return check


# -- quotients ------------------------------------------------------------------------------


class QuotientAlgebra:
    """A/I on the vertices that are not pivots of the echelonized ideal."""

    def __init__(self, algebra: GraphAlgebra, ideal: Sequence[AlgebraElement]):
        if not verify_ideal(algebra, ideal):
            raise NotAnIdeal("the given span is not a two-sided ideal")
        self.algebra = algebra
        self.field = algebra.field
        self._ideal = linalg.Subspace(self.field, algebra.dimension, [algebra.to_vector(b) for b in ideal])
        pivots = {next(i for i, c in enumerate(row) if c != 0) for row in self._ideal.basis}
        self._positions = [i for i in range(algebra.dimension) if i not in pivots]
        self.basis: Tuple[str, ...] = tuple(algebra.basis[i] for i in self._positions)
        self.dimension = len(self.basis)

    def project(self, a: AlgebraElement) -> Dict[str, Scalar]:
        """Coordinates of a + I on the quotient basis, zeros dropped."""
        reduced = self._ideal.reduce(self.algebra.to_vector(a))
        return {self.algebra.basis[i]: reduced[i] for i in self._positions if reduced[i] != 0}

    def product(self, u: str, v: str) -> Dict[str, Scalar]:
        alg = self.algebra
        return self.project(alg.multiply(alg.vertex(u), alg.vertex(v)))

    def structure_constants(self) -> Dict[Tuple[str, str], Dict[str, Scalar]]:
        return {(u, v): self.product(u, v) for u in self.basis for v in self.basis}

    def to_json(self) -> dict:
        render = self.field.render
        return {
            "basis": list(self.basis),
            "products": [
                {"left": u, "right": v, "value": {x: render(c) for x, c in value.items()}}
                for (u, v), value in self.structure_constants().items()
            ],
        }


def quotient_algebra(algebra: GraphAlgebra, ideal: Sequence[AlgebraElement]) -> QuotientAlgebra:
    return QuotientAlgebra(algebra, ideal)


def matches_contraction(algebra: GraphAlgebra, witness: IdealSubgraphWitness) -> bool:
    """Compare A/I_Y with A_{Γ/Y} structure constant by structure constant.

    The quotient keeps one member of Y as the representative of the
    contracted vertex.
    """
    g = algebra.graph
    quotient = quotient_algebra(algebra, witness.ideal_basis(algebra))
    contracted = GraphAlgebra(contract_ideal_subgraph(g, witness.y))
    name = contracted_name(g, witness.y)
    members = set(witness.y)
    rename = {v: (name if v in members else v) for v in quotient.basis}
    if sorted(rename.values()) != sorted(contracted.basis):
        return False
    for (u, v), value in quotient.structure_constants().items():
        expected = contracted.multiply(contracted.vertex(rename[u]), contracted.vertex(rename[v]))
        if {rename[x]: c for x, c in value.items()} != expected.coeffs:
            return False
    return True
