"""
Automorphism groups of labeled digraphs and the hypotheses under which
they coincide with the automorphism groups of the algebras.

The search refines vertex colors by labeled in- and out-neighborhoods,
individualizes the first smallest non-singleton cell and backtracks.  One
automorphism is searched per new point of each basic orbit, which yields
a stabilizer chain along the first path of the search tree.
"""

import logging
from enum import Enum
from math import prod
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx
from pydantic import BaseModel, Field
from sympy.combinatorics import Permutation, PermutationGroup

from graphaxial.core.algebra import GraphAlgebra
from graphaxial.core.graph import (
    INFINITY,
    Extent,
    IncidenceOrigin,
    LabeledDigraph,
    girth,
    recover_incidence_origin,
)

logger = logging.getLogger(__name__)

Coloring = List[int]


class _RefinementSearch:
    """Color refinement and individualization on one labeled digraph."""

    def __init__(self, g: LabeledDigraph):
        self.n = len(g)
        self.out_adj = g.out_adj
        self.in_adj = g.in_adj
        self.edge_labels: Dict[Tuple[int, int], object] = {
            (g.index[x], g.index[y]): label for (x, y), label in g.edges.items()
        }

    def _signatures(self, colors: Coloring) -> list:
        return [
            (
                colors[v],
                tuple(sorted((colors[u], label) for u, label in self.out_adj[v])),
                tuple(sorted((colors[u], label) for u, label in self.in_adj[v])),
            )
            for v in range(self.n)
        ]

    def refine_pair(self, a: Coloring, b: Coloring) -> Optional[Tuple[Coloring, Coloring]]:
        """Refine two colorings with shared color ids; None when they diverge."""
        count = len(set(a))
        while True:
            sig_a, sig_b = self._signatures(a), self._signatures(b)
            ids = {sig: i for i, sig in enumerate(sorted(set(sig_a) | set(sig_b)))}
            a = [ids[s] for s in sig_a]
            b = [ids[s] for s in sig_b]
            if sorted(a) != sorted(b):
                return None
            new_count = len(ids)
            if new_count == count:
                return a, b
            count = new_count

    def refine(self, colors: Coloring) -> Coloring:
        refined = self.refine_pair(colors, colors)
        return refined[0]

    @staticmethod
    def individualize(colors: Coloring, v: int) -> Coloring:
        out = list(colors)
        out[v] = -1
        return out

    @staticmethod
    def target_cell(colors: Coloring) -> Optional[List[int]]:
        """First smallest non-singleton cell, vertices in index order."""
        cells: Dict[int, List[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        candidates = [(len(members), c) for c, members in cells.items() if len(members) > 1]
        if not candidates:
            return None
        _, color = min(candidates)
        return cells[color]

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        labels = self.edge_labels
        return all(labels.get((perm[i], perm[j])) == label for (i, j), label in labels.items())

    def find_mapping(self, a: Coloring, b: Coloring) -> Optional[List[int]]:
        """An automorphism carrying the colored graph ``a`` onto ``b``, if any."""
        pair = self.refine_pair(a, b)
        if pair is None:
            return None
        a, b = pair
        cell = self.target_cell(a)
        if cell is None:
            position = {c: v for v, c in enumerate(b)}
            perm = [position[a[v]] for v in range(self.n)]
            return perm if self.is_automorphism(perm) else None
        color = a[cell[0]]
        anchor = cell[0]
        for image in (v for v in range(self.n) if b[v] == color):
            perm = self.find_mapping(self.individualize(a, anchor), self.individualize(b, image))
            if perm is not None:
                return perm
        return None


def _orbit(point: int, generators: Sequence[Sequence[int]]) -> List[int]:
    orbit = [point]
    seen = {point}
    for x in orbit:
        for gen in generators:
            y = gen[x]
            if y not in seen:
                seen.add(y)
                orbit.append(y)
    return orbit


class PermGroup:
    """A permutation group on the vertices of a graph.

    Generators are 0-based one-line permutations of the vertex sequence.  The
    stabilizer chain comes from the search when available and from sympy's
    Schreier-Sims otherwise.
    """

    def __init__(
        self,
        vertices: Sequence[str],
        generators: Sequence[Sequence[int]],
        base: Optional[Sequence[int]] = None,
        basic_orbit_lengths: Optional[Sequence[int]] = None,
    ):
        self.vertices: Tuple[str, ...] = tuple(vertices)
        self.degree = len(self.vertices)
        self.generators: List[List[int]] = [list(p) for p in generators]
        self._base = list(base) if base is not None else None
        self._basic_orbit_lengths = list(basic_orbit_lengths) if basic_orbit_lengths is not None else None
        perms = [Permutation(p) for p in self.generators] or [Permutation(list(range(self.degree)))]
        self.sympy_group = PermutationGroup(perms)

    @classmethod
    def from_cycles(cls, degree: int, cycles: Sequence[Sequence[Sequence[int]]]) -> "PermGroup":
        """Build from generators given as lists of 0-based cycles."""
        generators = [Permutation(list(c), size=degree).array_form for c in cycles]
        return cls([str(i + 1) for i in range(degree)], generators)

    @property
    def base(self) -> List[int]:
        if self._base is not None:
            return self._base
        return list(self.sympy_group.base)

    @property
    def basic_orbit_lengths(self) -> List[int]:
        if self._basic_orbit_lengths is not None:
            return self._basic_orbit_lengths
        return [len(orbit) for orbit in self.sympy_group.basic_orbits]

    @property
    def order(self) -> int:
        return prod(self.basic_orbit_lengths)

    def schreier_sims_order(self) -> int:
        return int(self.sympy_group.order())

    def contains(self, perm: Sequence[int]) -> bool:
        return bool(self.sympy_group.contains(Permutation(list(perm))))

    def cycle_notation(self, perm: Sequence[int]) -> str:
        seen = set()
        cycles = []
        for i in range(len(perm)):
            if i in seen or perm[i] == i:
                continue
            cycle = []
            j = i
            while j not in seen:
                seen.add(j)
                cycle.append(self.vertices[j])
                j = perm[j]
            cycles.append("(" + " ".join(cycle) + ")")
        return "".join(cycles) or "()"

    def as_mapping(self, perm: Sequence[int]) -> Dict[str, str]:
        return {self.vertices[i]: self.vertices[j] for i, j in enumerate(perm)}

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "order": self.order,
            "base": [self.vertices[i] for i in self.base],
            "generators": [self.cycle_notation(p) for p in self.generators],
        }


def automorphism_group(g: LabeledDigraph) -> PermGroup:
    """Label- and direction-preserving automorphisms of ``g``."""
    search = _RefinementSearch(g)
    colors = search.refine([0] * search.n)

    path: List[Tuple[Coloring, int, List[int]]] = []
    while True:
        cell = search.target_cell(colors)
        if cell is None:
            break
        point = cell[0]
        path.append((colors, point, cell))
        colors = search.refine(search.individualize(colors, point))
    logger.debug(f"Search base of length {len(path)} for {search.n} vertices")

    generators: List[List[int]] = []
    lengths: List[int] = []
    for level in range(len(path) - 1, -1, -1):
        colors, point, cell = path[level]
        orbit = set(_orbit(point, generators))
        for candidate in cell:
            if candidate in orbit:
                continue
            perm = search.find_mapping(
                search.individualize(colors, point), search.individualize(colors, candidate)
            )
            if perm is not None:
                generators.append(perm)
                orbit = set(_orbit(point, generators))
        lengths.append(len(orbit))
        logger.debug(f"Level {level}: basic orbit of length {len(orbit)}")
    lengths.reverse()

    group = PermGroup(g.vertices, generators, [p for _, p, _ in path], lengths)
    logger.info(f"Automorphism group of order {group.order} with {len(generators)} generators")
    return group


def group_order(group: PermGroup) -> int:
    return group.order


def is_graph_automorphism(g: LabeledDigraph, perm: Union[Sequence[int], Mapping[str, str]]) -> bool:
    perm = _as_index_perm(g, perm)
    return _RefinementSearch(g).is_automorphism(perm)


def _as_index_perm(g: LabeledDigraph, perm: Union[Sequence[int], Mapping[str, str]]) -> List[int]:
    if isinstance(perm, Mapping):
        return [g.index[perm.get(v, v)] for v in g.vertices]
    return list(perm)


def is_algebra_automorphism(algebra: GraphAlgebra, perm: Union[Sequence[int], Mapping[str, str]]) -> bool:
    """True iff the linear extension of ``perm`` preserves every product of basis vectors.

    Basis pairs that are not edges multiply to 0, so it is enough to compare
    the products along edges and the number of edges.
    """
    g = algebra.graph
    index_perm = _as_index_perm(g, perm)
    if sorted(index_perm) != list(range(algebra.dimension)):
        return False
    image = {x: g.vertices[index_perm[i]] for i, x in enumerate(g.vertices)}
    mapped_edges = {(image[x], image[y]) for x, y in g.edges}
    if mapped_edges != set(g.edges):
        return False
    for x, y in g.edges:
        product = algebra.multiply(algebra.vertex(x), algebra.vertex(y))
        moved = algebra.element({image[v]: c for v, c in product.items()})
        if moved != algebra.multiply(algebra.vertex(image[x]), algebra.vertex(image[y])):
            return False
    return True


# -- theorem hypotheses ---------------------------------------------------------------


class Theorem(str, Enum):
    """Conditions under which Aut(A_Γ) equals Aut(Γ)."""

    GRAPH_DEGREE_GIRTH = "graph-degree-girth"
    INCIDENCE = "incidence"
    INCIDENCE_F2 = "incidence-f2"


class HypothesisStatus(BaseModel):
    symmetric: bool
    weakly_connected: bool
    labels_avoid_zero_one: bool
    labels_all_one_over_f2: bool
    girth: Extent
    k_min: Extent
    k_max: Extent
    checks: Dict[str, bool] = Field(default_factory=dict)
    origin: Optional[dict] = None
    applicable: List[Theorem] = Field(default_factory=list)


def _origin_checks(g: LabeledDigraph, origin: IncidenceOrigin) -> Dict[str, bool]:
    space = origin.space
    degrees = space.point_degrees()
    min_degree = min(degrees.values()) if degrees else 0
    sizes = {len(line) for line in space.lines}
    return {
        "origin_matches_vertices": set(g.vertices) == set(space.points) | set(origin.line_vertices),
        "graph_min_degree_3": space.is_graph and bool(space.lines) and min_degree >= 3,
        "pls_three_points_per_line": sizes == {3},
        "pls_four_lines_per_point": sizes == {3} and min_degree >= 4,
    }


def check_theorem_hypotheses(g: LabeledDigraph, origin: Optional[IncidenceOrigin] = None) -> HypothesisStatus:
    """Evaluate the hypotheses of the automorphism theorems exactly.

    Without explicit ``origin`` the graph's construction metadata is used, and
    failing that the incidence structure is recovered from the bipartition.
    """
    f = g.field
    underlying = g.underlying()
    degrees = [d for _, d in underlying.degree()]
    k_min: Extent = min(degrees) if degrees else INFINITY
    k_max: Extent = max(degrees) if degrees else INFINITY
    g_value = girth(g)
    labels = g.labels()
    status = HypothesisStatus(
        symmetric=g.is_symmetric(),
        weakly_connected=nx.is_connected(underlying),
        labels_avoid_zero_one=bool(labels) and f.one not in labels,
        labels_all_one_over_f2=f.characteristic == 2 and labels == {f.one},
        girth=g_value,
        k_min=k_min,
        k_max=k_max,
    )
    base = status.symmetric and status.weakly_connected

    finite = g_value != INFINITY
    checks = status.checks
    checks["finite_girth"] = finite
    checks["k_min_above_2"] = k_min != INFINITY and k_min > 2
    checks["k_min_at_most_girth_minus_3"] = finite and k_min != INFINITY and k_min <= g_value - 3
    checks["k_max_at_most_twice_k_min_minus_1"] = (
        k_max != INFINITY and k_min != INFINITY and k_max <= 2 * (k_min - 1)
    )
    checks["k_max_at_most_girth_minus_3"] = finite and k_max != INFINITY and k_max <= g_value - 3
    if base and status.labels_avoid_zero_one and all(checks.values()):
        status.applicable.append(Theorem.GRAPH_DEGREE_GIRTH)

    candidates = [origin] if origin is not None else ([g.origin] if g.origin is not None else recover_incidence_origin(g))
    for candidate in candidates:
        origin_checks = _origin_checks(g, candidate)
        if not origin_checks["origin_matches_vertices"]:
            continue
        status.origin = {
            "kind": candidate.kind,
            "points": len(candidate.space.points),
            "lines": len(candidate.space.lines),
            "recovered": candidate.recovered,
            **origin_checks,
        }
        delta_ok = origin_checks["graph_min_degree_3"] or origin_checks["pls_four_lines_per_point"]
        if base and status.labels_avoid_zero_one and delta_ok:
            status.applicable.append(Theorem.INCIDENCE)
        if base and status.labels_all_one_over_f2 and origin_checks["graph_min_degree_3"]:
            status.applicable.append(Theorem.INCIDENCE_F2)
        break

    logger.info(f"Applicable theorems: {[t.value for t in status.applicable] or 'none'}")
    return status


def incidence_origin_for(g: LabeledDigraph) -> Optional[IncidenceOrigin]:
    """Construction metadata of ``g`` or the recovered incidence structure."""
    if g.origin is not None:
        return g.origin
    recovered = recover_incidence_origin(g)
    return recovered[0] if recovered else None
