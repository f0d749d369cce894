"""
Exact linear algebra kernel.

Matrices are lists of rows and vectors are lists of scalars, always in basis
order.  Elimination pivots on the first nonzero entry of a column, so every
result is deterministic for a fixed input.  Over Q the ``Fraction`` type keeps
intermediate values reduced.
"""

import logging
from typing import List, Optional, Sequence, Tuple

from graphaxial.core.exactfield import FieldCtx, Scalar

logger = logging.getLogger(__name__)

Vector = List[Scalar]
Matrix = List[List[Scalar]]


def zero_vector(ctx: FieldCtx, n: int) -> Vector:
    return [ctx.zero] * n


def identity_matrix(ctx: FieldCtx, n: int) -> Matrix:
    return [[ctx.one if i == j else ctx.zero for j in range(n)] for i in range(n)]


def is_zero_vector(v: Sequence[Scalar]) -> bool:
    return all(c == 0 for c in v)


def mat_vec(ctx: FieldCtx, m: Matrix, v: Sequence[Scalar]) -> Vector:
    out = []
    for row in m:
        acc = ctx.zero
        for a, b in zip(row, v):
            if a != 0 and b != 0:
                acc = ctx.add(acc, ctx.mul(a, b))
        out.append(acc)
    return out


def mat_mul(ctx: FieldCtx, a: Matrix, b: Matrix) -> Matrix:
    columns = transpose(b)
    return [[_dot(ctx, row, col) for col in columns] for row in a]


def _dot(ctx: FieldCtx, u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    acc = ctx.zero
    for a, b in zip(u, v):
        if a != 0 and b != 0:
            acc = ctx.add(acc, ctx.mul(a, b))
    return acc


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)] if m else []


def shift(ctx: FieldCtx, m: Matrix, lam: Scalar) -> Matrix:
    """Return ``m - lam * I``."""
    out = [list(row) for row in m]
    for i in range(len(out)):
        out[i][i] = ctx.sub(out[i][i], lam)
    return out


def scale(ctx: FieldCtx, lam: Scalar, v: Sequence[Scalar]) -> Vector:
    return [ctx.mul(lam, c) for c in v]


def axpy(ctx: FieldCtx, lam: Scalar, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
    """Return ``lam * x + y``."""
    return [ctx.add(ctx.mul(lam, a), b) for a, b in zip(x, y)]


def row_reduce(ctx: FieldCtx, rows: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form.

    Returns the nonzero rows of the RREF and their pivot columns.
    """
    m = [list(r) for r in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        pivot_row = None
        for i in range(r, n_rows):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = ctx.inv(m[r][c])
        m[r] = [ctx.mul(inv, a) for a in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [ctx.sub(a, ctx.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(ctx: FieldCtx, m: Matrix) -> int:
    if not m:
        return 0
    return len(row_reduce(ctx, m)[1])


def nullspace(ctx: FieldCtx, m: Matrix) -> List[Vector]:
    """Basis of ``{v : m v = 0}``, one vector per free column."""
    n_cols = len(m[0]) if m else 0
    reduced, pivots = row_reduce(ctx, m)
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        v = zero_vector(ctx, n_cols)
        v[free] = ctx.one
        for row, pc in zip(reduced, pivots):
            if row[free] != 0:
                v[pc] = ctx.neg(row[free])
        basis.append(v)
    return basis


def solve(ctx: FieldCtx, columns: Sequence[Sequence[Scalar]], target: Sequence[Scalar]) -> Optional[Vector]:
    """Coefficients ``c`` with ``sum c_j columns[j] == target``, or None.

    When the columns are dependent the returned solution sets free
    coefficients to zero.
    """
    k = len(columns)
    n = len(target)
    augmented = [[columns[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    reduced, pivots = row_reduce(ctx, augmented)
    if k in pivots:
        return None
    coeffs = zero_vector(ctx, k)
    for row, pc in zip(reduced, pivots):
        coeffs[pc] = row[k]
    return coeffs


def inverse(ctx: FieldCtx, m: Matrix) -> Optional[Matrix]:
    """Inverse of a square matrix, or None when it is singular."""
    n = len(m)
    augmented = [list(row) + [ctx.one if i == j else ctx.zero for j in range(n)] for i, row in enumerate(m)]
    reduced, pivots = row_reduce(ctx, augmented)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return [row[n:] for row in reduced[:n]]


def intersect(ctx: FieldCtx, u: Sequence[Sequence[Scalar]], w: Sequence[Sequence[Scalar]]) -> List[Vector]:
    """Basis of ``span(u) ∩ span(w)`` via the kernel of ``[U | -W]``."""
    if not u or not w:
        return []
    n = len(u[0])
    columns = [list(x) for x in u] + [[ctx.neg(c) for c in x] for x in w]
    m = [[columns[j][i] for j in range(len(columns))] for i in range(n)]
    out = Subspace(ctx, n)
    for coeffs in nullspace(ctx, m):
        v = zero_vector(ctx, n)
        for c, x in zip(coeffs[: len(u)], u):
            if c != 0:
                v = axpy(ctx, c, x, v)
        out.add(v)
    return out.basis


class Subspace:
    """An incrementally echelonized subspace of F^n.

    ``add`` reduces a vector against the stored basis and keeps the remainder
    when it is nonzero; the stored rows stay in reduced echelon form so that
    membership tests are a single reduction.
    """

    def __init__(self, ctx: FieldCtx, n: int, vectors: Sequence[Sequence[Scalar]] = ()):
        self.ctx = ctx
        self.n = n
        self._rows: List[Vector] = []
        self._pivots: List[int] = []
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def basis(self) -> List[Vector]:
        return [list(r) for r in self._rows]

    def reduce(self, v: Sequence[Scalar]) -> Vector:
        ctx = self.ctx
        out = list(v)
        for row, pc in zip(self._rows, self._pivots):
            f = out[pc]
            if f != 0:
                out = [ctx.sub(a, ctx.mul(f, b)) for a, b in zip(out, row)]
        return out

    def contains(self, v: Sequence[Scalar]) -> bool:
        return is_zero_vector(self.reduce(v))

    def add(self, v: Sequence[Scalar]) -> bool:
        """Add ``v``; return True when the dimension grew."""
        ctx = self.ctx
        rem = self.reduce(v)
        pc = next((i for i, c in enumerate(rem) if c != 0), None)
        if pc is None:
            return False
        inv = ctx.inv(rem[pc])
        rem = [ctx.mul(inv, a) for a in rem]
        # keep earlier rows reduced in the new pivot column
        for i, row in enumerate(self._rows):
            f = row[pc]
            if f != 0:
                self._rows[i] = [ctx.sub(a, ctx.mul(f, b)) for a, b in zip(row, rem)]
        position = 0
        while position < len(self._pivots) and self._pivots[position] < pc:
            position += 1
        self._rows.insert(position, rem)
        self._pivots.insert(position, pc)
        return True

    def is_full(self) -> bool:
        return self.dim == self.n
