"""
The algebra A_Γ of a labeled digraph.

Basis vectors are the vertices.  Products of basis vectors are

    x·x = x,   x·y = α_{x,y} (x + y) for an edge (x, y),   x·y = 0 otherwise,

extended bilinearly.  Elements are sparse, adjoint matrices are dense.
"""

import logging
import threading
from enum import Enum
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel

from graphaxial.core import linalg
from graphaxial.core.exactfield import FieldCtx, Scalar
from graphaxial.core.graph import LabeledDigraph
from graphaxial.errors import FieldMismatch, NotSemisimple, ParseError

logger = logging.getLogger(__name__)


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


class AlgebraElement:
    """A sparse linear combination of vertices.  No zero coefficient is stored."""

    __slots__ = ("field", "_coeffs")

    def __init__(self, field: FieldCtx, coeffs: Optional[Mapping[str, Scalar]] = None):
        self.field = field
        self._coeffs: Dict[str, Scalar] = {}
        for x, c in (coeffs or {}).items():
            c = field.element(c)
            if c != 0:
                self._coeffs[str(x)] = c

    @classmethod
    def _trusted(cls, field: FieldCtx, coeffs: Dict[str, Scalar]) -> "AlgebraElement":
        out = cls.__new__(cls)
        out.field = field
        out._coeffs = {x: c for x, c in coeffs.items() if c != 0}
        return out

    @property
    def coeffs(self) -> Dict[str, Scalar]:
        return dict(self._coeffs)

    @property
    def support(self) -> frozenset:
        return frozenset(self._coeffs)

    def coefficient(self, x: str) -> Scalar:
        return self._coeffs.get(x, self.field.zero)

    def items(self) -> Iterator[Tuple[str, Scalar]]:
        return iter(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def _check(self, other: "AlgebraElement"):
        if self.field != other.field:
            raise FieldMismatch(f"elements over {self.field} and {other.field}")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self._coeffs)
        for x, c in other._coeffs.items():
            out[x] = self.field.add(out.get(x, self.field.zero), c)
        return AlgebraElement._trusted(self.field, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement._trusted(self.field, {x: self.field.neg(c) for x, c in self._coeffs.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, lam: Scalar) -> "AlgebraElement":
        lam = self.field.element(lam)
        return AlgebraElement._trusted(self.field, {x: self.field.mul(lam, c) for x, c in self._coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.field == other.field and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.field, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        if not self._coeffs:
            return "0"
        return " + ".join(f"{self.field.render(c)}*{x}" for x, c in self._coeffs.items())

    def to_json(self, order: Optional[Sequence[str]] = None) -> Dict[str, str]:
        keys = [x for x in order if x in self._coeffs] if order is not None else list(self._coeffs)
        return {x: self.field.render(self._coeffs[x]) for x in keys}

    @classmethod
    def from_json(cls, field: FieldCtx, data: Mapping[str, str]) -> "AlgebraElement":
        if not isinstance(data, Mapping):
            raise ParseError(f"element must be an object, got {data!r}")
        return cls(field, {x: field.parse(text) for x, text in data.items()})


class AdjointMatrix:
    """Matrix of L_a (``side`` LEFT) or R_a (RIGHT) in the vertex basis.

    Column j is ``a·x_j`` for LEFT and ``x_j·a`` for RIGHT.
    """

    def __init__(self, side: Side, base: AlgebraElement, matrix: linalg.Matrix, field: FieldCtx):
        self.side = side
        self.base = base
        self.matrix = matrix
        self.field = field
        self._lock = threading.Lock()
        self._rank: Optional[int] = None

    @property
    def rank(self) -> int:
        if self._rank is None:
            with self._lock:
                if self._rank is None:
                    self._rank = linalg.rank(self.field, self.matrix)
        return self._rank

    def apply(self, v: Sequence[Scalar]) -> linalg.Vector:
        return linalg.mat_vec(self.field, self.matrix, v)

    def eigenspace(self, lam: Scalar) -> List[linalg.Vector]:
        return linalg.nullspace(self.field, linalg.shift(self.field, self.matrix, lam))

    def generalized_eigenspace_dim(self, lam: Scalar, power: int = 2) -> int:
        shifted = linalg.shift(self.field, self.matrix, lam)
        m = shifted
        for _ in range(power - 1):
            m = linalg.mat_mul(self.field, m, shifted)
        return len(self.matrix) - linalg.rank(self.field, m)

    def image(self) -> List[linalg.Vector]:
        return linalg.Subspace(self.field, len(self.matrix), linalg.transpose(self.matrix)).basis

    def to_json(self) -> List[List[str]]:
        return [[self.field.render(c) for c in row] for row in self.matrix]


class NonAssociativityWitness(BaseModel):
    """Basis vertices x, y with (x·x)·y ≠ x·(x·y)."""

    x: str
    y: str
    left_bracketed: Dict[str, str]
    right_bracketed: Dict[str, str]


class GraphAlgebra:
    """The algebra A_Γ with the vertices of Γ as basis in graph order."""

    def __init__(self, graph: LabeledDigraph):
        self.graph = graph
        self.field = graph.field
        self.basis: Tuple[str, ...] = graph.vertices
        self.basis_index = graph.index
        self.dimension = len(self.basis)

    def __repr__(self) -> str:
        return f"GraphAlgebra(dim={self.dimension}, field={self.field})"

    def opposite(self) -> "GraphAlgebra":
        """A_Γᵀ, the algebra of the reversed graph."""
        return GraphAlgebra(self.graph.reversed())

    # -- elements ---------------------------------------------------------------

    def element(self, coeffs: Optional[Mapping[str, Scalar]] = None) -> AlgebraElement:
        element = AlgebraElement(self.field, coeffs)
        for x in element.support:
            if x not in self.basis_index:
                raise ParseError(f"{x!r} is not a vertex")
        return element

    def vertex(self, x: str) -> AlgebraElement:
        return self.element({x: self.field.one})

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self.field)

    def to_vector(self, a: AlgebraElement) -> linalg.Vector:
        v = linalg.zero_vector(self.field, self.dimension)
        for x, c in a.items():
            v[self.basis_index[x]] = c
        return v

    def from_vector(self, v: Sequence[Scalar]) -> AlgebraElement:
        return AlgebraElement._trusted(self.field, {x: c for x, c in zip(self.basis, v)})

    def _check(self, *elements: AlgebraElement):
        for a in elements:
            if a.field != self.field:
                raise FieldMismatch(f"element over {a.field} in an algebra over {self.field}")

    # -- product ----------------------------------------------------------------

    def multiply(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        self._check(a, b)
        f = self.field
        edges = self.graph.edges
        out: Dict[str, Scalar] = {}
        for x, c in a.items():
            for y, d in b.items():
                cd = f.mul(c, d)
                if x == y:
                    out[x] = f.add(out.get(x, f.zero), cd)
                    continue
                label = edges.get((x, y))
                if label is None:
                    continue
                term = f.mul(label, cd)
                out[x] = f.add(out.get(x, f.zero), term)
                out[y] = f.add(out.get(y, f.zero), term)
        return AlgebraElement._trusted(f, out)

    def multiply_vectors(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> linalg.Vector:
        """Dense product in basis coordinates."""
        f = self.field
        out = linalg.zero_vector(f, self.dimension)
        for i, c in enumerate(u):
            if c == 0:
                continue
            if v[i] != 0:
                out[i] = f.add(out[i], f.mul(c, v[i]))
            for j, label in self.graph.out_adj[i]:
                d = v[j]
                if d == 0:
                    continue
                term = f.mul(label, f.mul(c, d))
                out[i] = f.add(out[i], term)
                out[j] = f.add(out[j], term)
        return out

    def square(self, a: AlgebraElement) -> AlgebraElement:
        return self.multiply(a, a)

    def adjoint(self, a: AlgebraElement, side: Side = Side.LEFT) -> AdjointMatrix:
        self._check(a)
        n = self.dimension
        columns = []
        for x in self.basis:
            product = self.multiply(a, self.vertex(x)) if side == Side.LEFT else self.multiply(self.vertex(x), a)
            columns.append(self.to_vector(product))
        matrix = linalg.transpose(columns) if n else []
        return AdjointMatrix(Side(side), a, matrix, self.field)

    # -- idempotents and axes -----------------------------------------------------

    def is_idempotent(self, a: AlgebraElement) -> bool:
        return self.square(a) == a

    def is_primitive_axis(self, a: AlgebraElement) -> bool:
        """Idempotent with both 1-eigenspaces equal to the span of ``a``."""
        if a.is_zero() or not self.is_idempotent(a):
            return False
        one = self.field.one
        return all(len(self.adjoint(a, side).eigenspace(one)) == 1 for side in Side)

    def side_edges(self, x: str, side: Side) -> List[Tuple[str, Scalar]]:
        i = self.basis_index[x]
        adjacency = self.graph.out_adj[i] if side == Side.LEFT else self.graph.in_adj[i]
        return [(self.basis[j], label) for j, label in adjacency]

    def side_labels(self, x: str, side: Side) -> List[Scalar]:
        return [label for _, label in self.side_edges(x, side)]

    def axis_eigenspaces(self, x: str, side: Side = Side.LEFT) -> Dict[Scalar, List[AlgebraElement]]:
        """Eigenspaces of L_x (or R_x) as an ordered mapping: 1, the labels, then 0.

        For an edge on the given side with label α the vector αx + (α−1)y is an
        α-eigenvector, and every vertex not joined on that side spans part of
        the 0-eigenspace.
        """
        f = self.field
        one = f.one
        side_edges = self.side_edges(x, side)
        for y, label in side_edges:
            if label == one:
                raise NotSemisimple(
                    f"{'L' if side == Side.LEFT else 'R'}_{x} has a Jordan block: edge to {y} has label 1",
                    witness={"axis": x, "vertex": y},
                )
        spaces: Dict[Scalar, List[AlgebraElement]] = {one: [self.vertex(x)]}
        for label in sorted({label for _, label in side_edges}, key=f.sort_key):
            spaces[label] = [
                self.element({x: label, y: f.sub(label, one)}) for y, l in side_edges if l == label
            ]
        joined = {y for y, _ in side_edges} | {x}
        non_neighbors = [self.vertex(y) for y in self.basis if y not in joined]
        if non_neighbors:
            spaces[f.zero] = non_neighbors

        count = sum(len(vectors) for vectors in spaces.values())
        if count != self.dimension:
            raise NotSemisimple(
                f"eigenvectors of axis {x} span {count} dimensions, not {self.dimension}",
                witness={"axis": x, "eigenvectors": count},
            )
        return spaces

    # -- global properties --------------------------------------------------------------

    def is_commutative(self) -> bool:
        edges = self.graph.edges
        return all(edges.get((y, x)) == label for (x, y), label in edges.items())

    def nonassociativity_witness(self) -> Optional[NonAssociativityWitness]:
        """First edge (x, y) in graph order with (x·x)·y ≠ x·(x·y)."""
        for x, y in self.graph.edges:
            vx, vy = self.vertex(x), self.vertex(y)
            left = self.multiply(self.multiply(vx, vx), vy)
            right = self.multiply(vx, self.multiply(vx, vy))
            if left != right:
                return NonAssociativityWitness(
                    x=x,
                    y=y,
                    left_bracketed=left.to_json(self.basis),
                    right_bracketed=right.to_json(self.basis),
                )
        return None
