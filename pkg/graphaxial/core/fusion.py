"""
Axis spectra and the graph-type fusion law.

The law on an eigenvalue set F (containing 1, the labels and 0 unless the
graph is complete) is

    1 ⋆ λ = {λ},  0 ⋆ 0 = {0},  α ⋆ α = {1, α},  α ⋆ β = {1, α, β},  α ⋆ 0 = {1, α, 0}

for distinct α, β outside {0, 1}.  ``check_fusion`` reports the observed law:
for every pair of eigenvalues the smallest set of eigenspaces that contains
all products of eigenvectors.
"""

import logging
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from pydantic import BaseModel, Field

from graphaxial.core.algebra import AlgebraElement, GraphAlgebra, Side
from graphaxial.core.exactfield import FieldCtx, Scalar
from graphaxial.errors import NotSemisimple, ParseError, SpectrumOutsideLaw

logger = logging.getLogger(__name__)


def canonical_order(field: FieldCtx, values: Iterable[Scalar]) -> List[Scalar]:
    """1 first, then the other nonzero values in field order, then 0."""
    values = set(values)
    middle = sorted((v for v in values if v not in (field.zero, field.one)), key=field.sort_key)
    head = [field.one] if field.one in values else []
    tail = [field.zero] if field.zero in values else []
    return head + middle + tail


class FusionLaw:
    """A fusion law: an eigenvalue set and a symmetric table of allowed products."""

    def __init__(self, field: FieldCtx, eigenvalues: Iterable[Scalar], table: Dict[Tuple[Scalar, Scalar], FrozenSet[Scalar]]):
        self.field = field
        self.eigenvalues = canonical_order(field, eigenvalues)
        self.table = table

    @classmethod
    def graph_type(cls, field: FieldCtx, eigenvalues: Iterable[Scalar]) -> "FusionLaw":
        """The graph-type law G(F)."""
        one, zero = field.one, field.zero
        values = set(field.element(v) for v in eigenvalues) | {one}
        table: Dict[Tuple[Scalar, Scalar], FrozenSet[Scalar]] = {}
        for a, b in product(values, repeat=2):
            if a == one or b == one:
                allowed = {b if a == one else a}
            elif a == zero and b == zero:
                allowed = {zero}
            elif a == b:
                allowed = {one, a}
            else:
                allowed = {one, a, b}
            table[(a, b)] = frozenset(allowed)
        return cls(field, values, table)

    @classmethod
    def for_graph(cls, algebra: GraphAlgebra) -> "FusionLaw":
        """G(F) with F = {1} ∪ labels ∪ {0 unless the graph is complete}."""
        g = algebra.graph
        n = len(g)
        values = set(g.labels())
        if len(g.edges) != n * (n - 1):
            values.add(algebra.field.zero)
        return cls.graph_type(algebra.field, values)

    @classmethod
    def from_option(cls, field: FieldCtx, text: str) -> "FusionLaw":
        """Parse a comma separated eigenvalue list such as ``"0,1,3"``."""
        try:
            values = [field.parse(part) for part in text.split(",") if part.strip()]
        except ParseError as e:
            raise ParseError(f"Invalid fusion law {text!r}: {e}")
        return cls.graph_type(field, values)

    def __contains__(self, value: Scalar) -> bool:
        return value in self.eigenvalues

    def allowed(self, a: Scalar, b: Scalar) -> FrozenSet[Scalar]:
        return self.table[(a, b)]

    def to_json(self) -> dict:
        render = self.field.render
        return {
            "eigenvalues": [render(v) for v in self.eigenvalues],
            "table": [
                {"left": render(a), "right": render(b), "allowed": [render(v) for v in canonical_order(self.field, self.table[(a, b)])]}
                for a in self.eigenvalues
                for b in self.eigenvalues
            ],
        }


def axis_spectrum(algebra: GraphAlgebra, x: str, side: Side = Side.LEFT) -> List[Scalar]:
    """Eigenvalues of L_x (or R_x) in canonical order."""
    f = algebra.field
    labels = algebra.side_labels(x, side)
    if f.one in labels:
        raise NotSemisimple(f"axis {x} has an incident label 1", witness={"axis": x})
    values = {f.one} | set(labels)
    if len(labels) < algebra.dimension - 1:
        values.add(f.zero)
    return canonical_order(f, values)


class FusionCell(BaseModel):
    left: str
    right: str
    observed: List[str]
    allowed: List[str]
    ok: bool


class AxisFusion(BaseModel):
    axis: str
    side: Side
    spectrum: List[str]
    dimensions: Dict[str, int]
    cells: List[FusionCell] = Field(default_factory=list)


class FusionReport(BaseModel):
    """Observed fusion tables per axis and side, compared with a law."""

    law: dict
    axes: List[AxisFusion] = Field(default_factory=list)
    law_satisfied: bool = True
    missing_zero: bool = False
    violations: List[dict] = Field(default_factory=list)


def _components(algebra: GraphAlgebra, x: str, side_edges: Dict[str, Scalar], p: AlgebraElement) -> Set[Scalar]:
    """Eigenvalues whose eigenspace component of ``p`` is nonzero.

    In the eigenbasis x, αx + (α−1)y (y joined to x with label α) and the
    remaining vertices, a vertex coefficient c_y of a joined y belongs to the
    α-eigenvector with weight c_y/(α−1), which also moves α·c_y/(α−1) off x.
    """
    f = algebra.field
    seen: Set[Scalar] = set()
    cx = p.coefficient(x)
    for z, c in p.items():
        if z == x:
            continue
        label = side_edges.get(z)
        if label is None:
            seen.add(f.zero)
            continue
        weight = f.div(c, f.sub(label, f.one))
        seen.add(label)
        cx = f.sub(cx, f.mul(label, weight))
    if cx != 0:
        seen.add(f.one)
    return seen


def _observed_cells(
    algebra: GraphAlgebra, x: str, side: Side, spaces: Dict[Scalar, List[AlgebraElement]]
) -> Dict[Tuple[Scalar, Scalar], Set[Scalar]]:
    """Smallest eigenvalue sets S(λ, μ) holding every product of eigenvectors.

    Products with the axis itself are taken in the order of ``side``; products
    of other eigenvectors are taken in both orders.  A 0-eigenvector is a
    vertex outside the neighborhood of x, so its product with another vertex
    of that kind stays in the 0-eigenspace and only products near x are formed.
    """
    f = algebra.field
    one, zero = f.one, f.zero
    g = algebra.graph
    side_edges = dict(algebra.side_edges(x, side))
    axis = spaces[one][0]
    zero_vertices = {next(iter(v.support)) for v in spaces.get(zero, [])}
    local = [(lam, v) for lam, vectors in spaces.items() if lam not in (one, zero) for v in vectors]

    observed: Dict[Tuple[Scalar, Scalar], Set[Scalar]] = {}

    def record(lam: Scalar, mu: Scalar, result: AlgebraElement):
        cell = observed.setdefault((lam, mu), set())
        if not result.is_zero():
            cell.update(_components(algebra, x, side_edges, result))

    record(one, one, algebra.multiply(axis, axis))
    for lam, v in local:
        result = algebra.multiply(axis, v) if side == Side.LEFT else algebra.multiply(v, axis)
        record(one, lam, result)
        record(lam, one, result)
    for z in sorted(zero_vertices, key=g.index.__getitem__):
        w = algebra.vertex(z)
        result = algebra.multiply(axis, w) if side == Side.LEFT else algebra.multiply(w, axis)
        record(one, zero, result)
        record(zero, one, result)
        record(zero, zero, algebra.multiply(w, w))
        for t in sorted(g.neighbors(z) & zero_vertices, key=g.index.__getitem__):
            record(zero, zero, algebra.multiply(w, algebra.vertex(t)))
    for lam, u in local:
        for mu, v in local:
            record(lam, mu, algebra.multiply(u, v))
        near = set()
        for y in u.support:
            near |= g.neighbors(y)
        for z in sorted(near & zero_vertices, key=g.index.__getitem__):
            w = algebra.vertex(z)
            record(lam, zero, algebra.multiply(u, w))
            record(zero, lam, algebra.multiply(w, u))
    return observed


def check_fusion(
    algebra: GraphAlgebra,
    axes: Optional[Sequence[str]] = None,
    law: Optional[FusionLaw] = None,
    sides: Sequence[Side] = (Side.LEFT,),
    enforce_zero: bool = True,
) -> FusionReport:
    """Compare the observed fusion tables of ``axes`` with ``law``.

    Raises ``NotSemisimple`` for an axis with an incident label 1 and
    ``SpectrumOutsideLaw`` when an axis has an eigenvalue the law lacks.
    """
    f = algebra.field
    render = f.render
    law = law or FusionLaw.for_graph(algebra)
    axes = list(axes) if axes is not None else list(algebra.basis)
    report = FusionReport(law=law.to_json())

    n = algebra.dimension
    if enforce_zero and len(algebra.graph.edges) != n * (n - 1) and f.zero not in law:
        report.missing_zero = True
        logger.warning("fusion law lacks 0 although the graph is not complete")

    for side in sides:
        for x in axes:
            spaces = algebra.axis_eigenspaces(x, side)
            for value in spaces:
                if value not in law:
                    raise SpectrumOutsideLaw(
                        f"eigenvalue {render(value)} of axis {x} is not in the law",
                        witness={"axis": x, "eigenvalue": render(value)},
                    )
            entry = AxisFusion(
                axis=x,
                side=side,
                spectrum=[render(v) for v in spaces],
                dimensions={render(v): len(vs) for v, vs in spaces.items()},
            )
            observed = _observed_cells(algebra, x, side, spaces)
            for lam in spaces:
                for mu in spaces:
                    seen = observed.get((lam, mu), set())
                    allowed = law.allowed(lam, mu)
                    ok = seen <= allowed
                    cell = FusionCell(
                        left=render(lam),
                        right=render(mu),
                        observed=[render(v) for v in canonical_order(f, seen)],
                        allowed=[render(v) for v in canonical_order(f, allowed)],
                        ok=ok,
                    )
                    entry.cells.append(cell)
                    if not ok:
                        report.law_satisfied = False
                        report.violations.append({"axis": x, "side": side.value, **cell.model_dump()})
            report.axes.append(entry)
            logger.debug(f"Fusion of axis {x} ({side.value}): {len(entry.cells)} cells checked")
    logger.info(f"Fusion law satisfied: {report.law_satisfied}")
    return report
