"""
Idempotents of A_Γ over small prime fields, axis recovery and the
rank/support analyzer.

Writing a = Σ λ_z z and w(z, y) = α_{z,y} + α_{y,z}, the z-coordinate of a² is

    λ_z (λ_z + Σ_y w(z, y) λ_y)

so every coordinate of an idempotent is 0 or 1 − s_z with s_z = Σ_y w(z, y) λ_y.
The exhaustive sweep walks the coordinates in basis order and uses this to
prune: once every neighbor of a vertex is fixed it has at most two choices,
and a vertex is checked as soon as its closed neighborhood is assigned.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from enum import Enum
from itertools import combinations, product
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
from pydantic import BaseModel, Field

from graphaxial.core import linalg
from graphaxial.core.algebra import AlgebraElement, GraphAlgebra, Side
from graphaxial.core.autgrp import HypothesisStatus, Theorem, check_theorem_hypotheses, incidence_origin_for
from graphaxial.core.graph import INFINITY, Extent, IncidenceOrigin, girth
from graphaxial.errors import BudgetExceeded, InfiniteField

logger = logging.getLogger(__name__)

DEFAULT_CAP = 2**24

Signature = Tuple[int, int, int, int, int, int]


class SearchMode(str, Enum):
    EXHAUSTIVE = "exhaustive"
    SUPPORT_BOUNDED = "support-bounded"


# -- exhaustive sweep ------------------------------------------------------------------


def _sweep_unit(task) -> List[Tuple[int, ...]]:
    """Idempotent coordinate vectors extending one fixed prefix.

    ``task`` holds only plain data so that it can be shipped to a worker process.
    """
    p, weights, closing, decided, prefix = task
    n = len(weights)
    values = [0] * n
    found: List[Tuple[int, ...]] = []

    def s(z: int) -> int:
        return sum(w * values[y] for y, w in weights[z]) % p

    def consistent(k: int) -> bool:
        for z in closing[k]:
            lam = values[z]
            if lam and (lam + s(z) - 1) % p:
                return False
        return True

    def descend(k: int):
        if k == n:
            found.append(tuple(values))
            return
        if k < len(prefix):
            candidates = (prefix[k],)
        elif decided[k]:
            c = (1 - s(k)) % p
            candidates = (0, c) if c else (0,)
        else:
            candidates = range(p)
        for v in candidates:
            values[k] = v
            if consistent(k):
                descend(k + 1)
        values[k] = 0

    descend(0)
    return found


def _sweep_data(algebra: GraphAlgebra):
    """Weights w(z, y), the vertices closed at each index, and the decided flags."""
    f = algebra.field
    g = algebra.graph
    n = algebra.dimension
    acc: List[Dict[int, int]] = [{} for _ in range(n)]
    for (x, y), label in g.edges.items():
        i, j = g.index[x], g.index[y]
        acc[i][j] = f.add(acc[i].get(j, f.zero), label)
        acc[j][i] = f.add(acc[j].get(i, f.zero), label)
    weights = [sorted((j, int(w)) for j, w in row.items() if w != 0) for row in acc]
    closing: List[List[int]] = [[] for _ in range(n)]
    for z in range(n):
        last = max([z] + [y for y, _ in weights[z]])
        closing[last].append(z)
    decided = [all(y < k for y, _ in weights[k]) for k in range(n)]
    return weights, closing, decided


def _require_finite(algebra: GraphAlgebra):
    if not algebra.field.is_finite:
        raise InfiniteField("idempotents can only be enumerated over a prime field")


def _exhaustive(algebra: GraphAlgebra, cap: int, workers: int, split_depth: int) -> List[Tuple[int, ...]]:
    p = algebra.field.p
    n = algebra.dimension
    if p**n > cap:
        raise BudgetExceeded(
            f"exhaustive sweep needs {p}^{n} candidates, cap is {cap}",
            witness={"candidates": p**n, "cap": cap},
        )
    weights, closing, decided = _sweep_data(algebra)
    depth = min(split_depth, n)
    tasks = [(p, weights, closing, decided, prefix) for prefix in product(range(p), repeat=depth)]
    logger.debug(f"Sweeping {p}^{n} candidates in {len(tasks)} units with {workers} worker(s)")
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            chunks = list(executor.map(_sweep_unit, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        chunks = [_sweep_unit(task) for task in tasks]
    return sorted(v for chunk in chunks for v in chunk)


# -- support-bounded search -------------------------------------------------------------


def _support_solutions(algebra: GraphAlgebra, support: Sequence[int], weights, cap: int) -> List[Dict[int, int]]:
    """Idempotents with support exactly ``support``: solutions of (I + W_S)λ = 1 with no zero entry."""
    f = algebra.field
    index = {v: k for k, v in enumerate(support)}
    size = len(support)
    rows = []
    for z in support:
        row = [f.zero] * size
        row[index[z]] = f.one
        for y, w in weights[z]:
            if y in index:
                row[index[y]] = f.add(row[index[y]], w)
        rows.append(row)
    columns = linalg.transpose(rows)
    particular = linalg.solve(f, columns, [f.one] * size)
    if particular is None:
        return []
    kernel = linalg.nullspace(f, rows)
    if f.p ** len(kernel) > cap:
        raise BudgetExceeded(
            f"solution space of dimension {len(kernel)} on a support of size {size} exceeds the cap",
            witness={"support": list(support), "kernel_dim": len(kernel)},
        )
    out = []
    for coeffs in product(range(f.p), repeat=len(kernel)):
        v = list(particular)
        for c, k in zip(coeffs, kernel):
            if c:
                v = linalg.axpy(f, c, k, v)
        if all(c != 0 for c in v):
            out.append({z: c for z, c in zip(support, v)})
    return out


def _support_bounded(algebra: GraphAlgebra, k: int, cap: int) -> List[Tuple[int, ...]]:
    p = algebra.field.p
    n = algebra.dimension
    k = min(k, n)
    supports = sum(comb(n, i) for i in range(k + 1))
    if p**k > cap or supports > cap:
        raise BudgetExceeded(
            f"support-bounded search with k={k} exceeds the cap {cap}",
            witness={"k": k, "supports": supports, "cap": cap},
        )
    weights, _, _ = _sweep_data(algebra)
    found = [tuple([0] * n)]
    for size in range(1, k + 1):
        for support in combinations(range(n), size):
            for solution in _support_solutions(algebra, support, weights, cap):
                vector = [0] * n
                for z, c in solution.items():
                    vector[z] = int(c)
                found.append(tuple(vector))
    return sorted(found)


def enumerate_idempotents(
    algebra: GraphAlgebra,
    mode: SearchMode = SearchMode.EXHAUSTIVE,
    support_size: Optional[int] = None,
    cap: int = DEFAULT_CAP,
    workers: int = 1,
    split_depth: int = 2,
) -> List[AlgebraElement]:
    """All idempotents (exhaustive) or those with at most ``support_size`` basis vectors.

    The zero element is included.  Results are in ascending order of their
    coordinate vectors, independent of the number of workers.
    """
    _require_finite(algebra)
    if mode == SearchMode.EXHAUSTIVE:
        vectors = _exhaustive(algebra, cap, workers, split_depth)
    else:
        if support_size is None:
            raise ValueError("support-bounded search needs a support size")
        vectors = _support_bounded(algebra, support_size, cap)
    logger.info(f"Found {len(vectors)} idempotents ({SearchMode(mode).value})")
    return [algebra.from_vector(v) for v in vectors]


# -- signatures and axis recovery -------------------------------------------------------


def axis_signature(algebra: GraphAlgebra, a: AlgebraElement) -> Signature:
    """Ranks and 1-eigenspace data of both adjoints; invariant under automorphisms."""
    one = algebra.field.one
    left, right = algebra.adjoint(a, Side.LEFT), algebra.adjoint(a, Side.RIGHT)
    return (
        left.rank,
        right.rank,
        len(left.eigenspace(one)),
        len(right.eigenspace(one)),
        left.generalized_eigenspace_dim(one),
        right.generalized_eigenspace_dim(one),
    )


def _is_vertex(a: AlgebraElement) -> bool:
    items = list(a.items())
    return len(items) == 1 and items[0][1] == 1


class TheoremRecovery(BaseModel):
    """Survivors of the filter used by one theorem and the recovered points."""

    theorem: Theorem
    survivors: List[Dict[str, str]] = Field(default_factory=list)
    exotic_idempotents: List[Dict[str, str]] = Field(default_factory=list)
    recovered_points: List[str] = Field(default_factory=list)
    unrecovered_points: List[str] = Field(default_factory=list)

    @property
    def recovered(self) -> bool:
        return not self.exotic_idempotents and not self.unrecovered_points


class AxisRecoveryReport(BaseModel):
    hypothesis_status: HypothesisStatus
    search_mode: Optional[SearchMode] = None
    idempotent_count: int = 0
    recoveries: List[TheoremRecovery] = Field(default_factory=list)
    note: Optional[str] = None

    @property
    def applicable(self) -> bool:
        return bool(self.hypothesis_status.applicable)

    @property
    def exotic_idempotents(self) -> List[Dict[str, str]]:
        return [e for r in self.recoveries for e in r.exotic_idempotents]

    @property
    def recoverable(self) -> bool:
        return self.applicable and all(r.recovered for r in self.recoveries)


def recover_points(algebra: GraphAlgebra, origin: IncidenceOrigin) -> Tuple[List[str], List[str]]:
    """Points y with im(L_e) ∩ im(L_k) = ⟨y⟩ for all lines e ≠ k through y."""
    f = algebra.field
    space = origin.space
    images = {
        name: algebra.adjoint(algebra.vertex(name), Side.LEFT).image() for name in origin.line_vertices
    }
    recovered, missing = [], []
    for y in space.points:
        through = [origin.line_vertices[i] for i in space.lines_through(y)]
        target = algebra.to_vector(algebra.vertex(y))
        ok = len(through) >= 2
        for e, k in combinations(through, 2):
            meet = linalg.intersect(f, images[e], images[k])
            if len(meet) != 1 or not linalg.Subspace(f, algebra.dimension, meet).contains(target):
                ok = False
                break
        (recovered if ok else missing).append(y)
    return recovered, missing


def verify_axes_recoverable(
    algebra: GraphAlgebra,
    mode: SearchMode = SearchMode.EXHAUSTIVE,
    support_size: Optional[int] = None,
    cap: int = DEFAULT_CAP,
    workers: int = 1,
    split_depth: int = 2,
) -> AxisRecoveryReport:
    """Enumerate idempotents and check that the theorem filters keep only basis vectors.

    For the girth and degree theorem the survivors are the primitive
    idempotents whose adjoints have rank at most 1 + k_max, and each must be a
    vertex.  For incidence graphs the survivors are the primitive idempotents
    whose adjoints have the rank of a line vertex (over F_2, whose signature
    matches a line vertex), each must be a line vertex, and every point must
    then be recovered from the images of the lines through it.
    """
    g = algebra.graph
    status = check_theorem_hypotheses(g)
    report = AxisRecoveryReport(hypothesis_status=status)
    if not status.applicable:
        report.note = "no automorphism theorem applies; nothing is claimed"
        logger.info(report.note)
        return report

    idempotents = enumerate_idempotents(algebra, mode, support_size, cap, workers, split_depth)
    report.search_mode = mode
    report.idempotent_count = len(idempotents)
    order = list(algebra.basis)
    origin = incidence_origin_for(g)

    signatures: Dict[AlgebraElement, Signature] = {}

    def signature(a: AlgebraElement) -> Signature:
        if a not in signatures:
            signatures[a] = axis_signature(algebra, a)
        return signatures[a]

    nonzero = [a for a in idempotents if not a.is_zero()]
    for theorem in status.applicable:
        recovery = TheoremRecovery(theorem=theorem)
        if theorem == Theorem.GRAPH_DEGREE_GIRTH:
            bound = 1 + status.k_max
            survivors = [
                a
                for a in nonzero
                if signature(a)[0] <= bound and signature(a)[1] <= bound and signature(a)[2:4] == (1, 1)
            ]
            allowed = set(g.vertices)
        else:
            lines = origin.line_vertices
            if theorem == Theorem.INCIDENCE:
                sizes = {len(line) for line in origin.space.lines}
                rank = 1 + sizes.pop()
                wanted = {(rank, rank, 1, 1)}
                survivors = [a for a in nonzero if signature(a)[:4] in wanted]
            else:
                wanted = {signature(algebra.vertex(name)) for name in lines}
                survivors = [a for a in nonzero if signature(a) in wanted]
            allowed = set(lines)
        for a in survivors:
            entry = a.to_json(order)
            recovery.survivors.append(entry)
            if not (_is_vertex(a) and next(iter(a.support)) in allowed):
                recovery.exotic_idempotents.append(entry)
        if theorem != Theorem.GRAPH_DEGREE_GIRTH:
            recovery.recovered_points, recovery.unrecovered_points = recover_points(algebra, origin)
            recovery.survivors.extend(algebra.vertex(y).to_json(order) for y in recovery.recovered_points)
        logger.info(
            f"{theorem.value}: {len(recovery.survivors)} survivors, "
            f"{len(recovery.exotic_idempotents)} exotic idempotents"
        )
        report.recoveries.append(recovery)
    return report


# -- rank/support analysis ---------------------------------------------------------------


class TreeData(BaseModel):
    size: int
    leaves: int
    diameter: int
    leaf_degrees: List[int]


class RankSupportAnalysis(BaseModel):
    """Support structure of an element against the ranks of its adjoints.

    ``lemma_checks`` maps each inequality to True/False, or None when its
    premises do not hold.
    """

    element: Dict[str, str]
    support_size: int
    components: int
    is_forest: bool
    trees: List[TreeData] = Field(default_factory=list)
    rank_left: int
    rank_right: int
    eigenspace_one_left: int
    eigenspace_one_right: int
    idempotent: bool
    girth: Extent
    lemma_checks: Dict[str, Optional[bool]] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.lemma_checks.values())


def _tree_data(tree: nx.Graph, underlying: nx.Graph) -> Tuple[TreeData, List[str]]:
    leaves = [v for v in tree.nodes if tree.degree(v) <= 1]
    data = TreeData(
        size=tree.number_of_nodes(),
        leaves=len(leaves),
        diameter=nx.diameter(tree) if tree.number_of_nodes() > 1 else 0,
        leaf_degrees=sorted(underlying.degree(v) for v in leaves),
    )
    return data, leaves


def rank_support_analysis(algebra: GraphAlgebra, a: AlgebraElement) -> RankSupportAnalysis:
    g = algebra.graph
    one = algebra.field.one
    underlying = g.underlying()
    support = sorted(a.support, key=g.index.__getitem__)
    induced = underlying.subgraph(support)
    parts = [induced.subgraph(c) for c in nx.connected_components(induced)]
    forest = all(nx.is_tree(part) for part in parts)
    left, right = algebra.adjoint(a, Side.LEFT), algebra.adjoint(a, Side.RIGHT)
    g_value = girth(g)
    analysis = RankSupportAnalysis(
        element=a.to_json(list(algebra.basis)),
        support_size=len(support),
        components=len(parts),
        is_forest=forest,
        rank_left=left.rank,
        rank_right=right.rank,
        eigenspace_one_left=len(left.eigenspace(one)),
        eigenspace_one_right=len(right.eigenspace(one)),
        idempotent=algebra.is_idempotent(a),
        girth=g_value,
    )
    checks = analysis.lemma_checks
    if not g.is_symmetric():
        logger.debug("Rank/support inequalities need a symmetric graph; none evaluated")
        return analysis

    ranks = (analysis.rank_left, analysis.rank_right)
    trees = []
    tree_bound = 0
    for part in parts:
        if nx.is_tree(part):
            data, leaves = _tree_data(part, underlying)
            trees.append((part, data, leaves))
            tree_bound += data.size - data.leaves + 1
    analysis.trees = [data for _, data, _ in trees]
    finite = g_value != INFINITY

    checks["tree_independence"] = all(r >= tree_bound for r in ranks)
    small = [r for r in ranks if not finite or r <= g_value - 3]
    checks["forest"] = all(forest and tree_bound <= r for r in small) if small else None
    checks["cycle_rank"] = (
        all(r >= g_value - 2 for r in ranks) if finite and not forest else None
    )

    if not analysis.idempotent:
        return analysis

    checks["components"] = all(analysis.components <= r for r in ranks)
    checks["components_eigenspace"] = analysis.components <= min(
        analysis.eigenspace_one_left, analysis.eigenspace_one_right
    )
    if finite and g_value > 4 and g_value - 2 in ranks:
        is_cycle = nx.is_connected(underlying) and all(d == 2 for _, d in underlying.degree())
        checks["special_tree"] = is_cycle or forest
    else:
        checks["special_tree"] = None

    if len(parts) == 1 and forest and support:
        tree, data, leaves = trees[0]
        d = data.diameter
        if not finite or d <= g_value - 3:
            bound = data.size - data.leaves + 1 + sum(underlying.degree(v) - 1 for v in leaves)
            checks["leaves_short"] = all(r >= bound for r in ranks)
        else:
            checks["leaves_short"] = None
        if finite and d == g_value - 2 and d >= 4:
            lengths = dict(nx.all_pairs_shortest_path_length(tree))
            ends = [(u, v) for u, v in combinations(leaves, 2) if lengths[u][v] == d]
            checks["leaves_long"] = all(
                r >= d + underlying.degree(u) + underlying.degree(v) - 4 for u, v in ends for r in ranks
            )
        else:
            checks["leaves_long"] = None
    logger.debug(f"Rank/support checks for support of size {len(support)}: {checks}")
    return analysis
