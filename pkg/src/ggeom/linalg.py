"""Exact linear algebra over the rational-function field.

Matrices are plain lists of rows.  Entries are :class:`Scalar` (or
:class:`GaussRat` when evaluating at a point); anything supporting field
arithmetic and truthiness-as-nonzero works.

Pivot rule: among nonzero candidates choose the entry whose numerator has
the smallest total degree; ties go to the earlier column, then the earlier
row.
"""

from __future__ import annotations

import random
from fractions import Fraction
from dataclasses import dataclass
from typing import Sequence

from .symbolic import ONE, ZERO, GaussRat, PoleError, Scalar

__all__ = [
    "Matrix",
    "SingularMatrix",
    "identity",
    "zeros",
    "mat_mul",
    "mat_add",
    "mat_sub",
    "mat_neg",
    "mat_scale",
    "transpose",
    "mat_vec",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "inverse",
    "determinant",
    "first_nonzero",
    "eval_matrix",
    "generic_rank",
    "ReducedSpan",
]

Matrix = list  # list[list[Scalar]]


class SingularMatrix(ArithmeticError):
    pass


def _degree(x) -> int:
    return x.degree() if isinstance(x, Scalar) else 0


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int | None = None) -> Matrix:
    return [[ZERO] * (rows if cols is None else cols) for _ in range(rows)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = ZERO
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def mat_vec(a: Matrix, v: Sequence) -> list:
    out = []
    for row in a:
        acc = ZERO
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(a: Matrix) -> Matrix:
    return [[-x for x in row] for row in a]


def mat_scale(c, a: Matrix) -> Matrix:
    return [[c * x for x in row] for row in a]


def first_nonzero(a: Matrix):
    """(row, col, entry) of the first nonzero entry in row-major order, or None."""
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if x:
                return i, j, x
    return None


def rref(a: Matrix, ncols: int | None = None):
    """Gauss-Jordan elimination on a copy of ``a``.

    Only the first ``ncols`` columns are eligible as pivots (the rest ride
    along, e.g. an augmented right-hand side).  Returns ``(m, pivots)``
    where ``pivots`` lists ``(row, col)`` pairs in elimination order.
    """
    m = [list(row) for row in a]
    nrows = len(m)
    if not nrows:
        return m, []
    total = len(m[0])
    ncols = total if ncols is None else ncols
    pivots = []
    used_cols: set[int] = set()
    r = 0
    while r < nrows:
        best = None
        for j in range(ncols):
            if j in used_cols:
                continue
            for i in range(r, nrows):
                x = m[i][j]
                if x:
                    key = (_degree(x), j, i)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        _, j, i = best
        m[r], m[i] = m[i], m[r]
        p = m[r][j]
        inv = ONE / p if isinstance(p, Scalar) else GaussRat(1) / p
        m[r] = [x * inv if x else x for x in m[r]]
        for k in range(nrows):
            if k != r:
                f = m[k][j]
                if f:
                    m[k] = [x - f * y if y else x for x, y in zip(m[k], m[r])]
        pivots.append((r, j))
        used_cols.add(j)
        r += 1
    return m, pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def nullspace(a: Matrix, ncols: int | None = None) -> list[list]:
    """Basis of {v : a v = 0}; one vector per free column, in column order."""
    ncols = ncols if ncols is not None else (len(a[0]) if a else 0)
    m, pivots = rref(a, ncols)
    pivot_of = {j: r for r, j in pivots}
    basis = []
    for free in range(ncols):
        if free in pivot_of:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for j, r in pivot_of.items():
            v[j] = -m[r][free]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Sequence):
    """A particular solution of ``a x = b`` or None if inconsistent."""
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    m, pivots = rref(aug, ncols)
    pivot_rows = {r for r, _ in pivots}
    for r, row in enumerate(m):
        if r not in pivot_rows and row[ncols]:
            return None
    x = [ZERO] * ncols
    for r, j in pivots:
        x[j] = m[r][ncols]
    return x


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    m, pivots = rref(aug, n)
    if len(pivots) < n:
        raise SingularMatrix("matrix is singular over the function field")
    out = [None] * n
    for r, j in pivots:
        out[j] = m[r][n:]
    return out


def determinant(a: Matrix) -> Scalar:
    """Fraction-free (Bareiss) determinant; exact division via Scalar."""
    n = len(a)
    if n == 0:
        return ONE
    m = [list(row) for row in a]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def eval_matrix(a: Matrix, point) -> list[list[GaussRat]]:
    return [[x.evaluate(point) for x in row] for row in a]


def generic_rank(a: Matrix, coords: Sequence[str], seed: int = 0, tries: int = 20) -> int:
    """Rank of ``a`` at a pseudo-random rational point off its pole locus."""
    rng = random.Random(seed)
    last_error = None
    for _ in range(tries):
        point = {c: Fraction(rng.randint(-60, 60), rng.randint(1, 7)) for c in coords}
        try:
            values = eval_matrix(a, point)
        except PoleError as exc:
            last_error = exc
            continue
        return len(rref(values)[1])
    raise PoleError(f"no regular point found after {tries} tries: {last_error}")


@dataclass
class ReducedSpan:
    """Column-echelon basis of a span of coordinate vectors.

    ``basis[k]`` has entry 1 in slot ``pivots[k]`` and 0 in every other
    pivot slot.  ``combos[k]`` expresses ``basis[k]`` in the original
    generators, and ``independent`` lists the indices of generators that
    raised the rank when added in order.
    """

    basis: list
    pivots: list
    combos: list
    independent: list
    ngenerators: int

    @classmethod
    def build(cls, generators: Sequence[Sequence]) -> "ReducedSpan":
        span = cls([], [], [], [], len(generators))
        for idx, g in enumerate(generators):
            v = list(g)
            combo = [ZERO] * len(generators)
            combo[idx] = ONE
            v, combo = span._reduce(v, combo)
            slot = None
            for s, x in enumerate(v):
                if x and (slot is None or _degree(x) < _degree(v[slot])):
                    slot = s
            if slot is None:
                continue
            inv = ONE / v[slot]
            v = [x * inv if x else x for x in v]
            combo = [c * inv if c else c for c in combo]
            for k, b in enumerate(span.basis):
                f = b[slot]
                if f:
                    span.basis[k] = [x - f * y if y else x for x, y in zip(b, v)]
                    span.combos[k] = [x - f * y if y else x for x, y in zip(span.combos[k], combo)]
            span.basis.append(v)
            span.pivots.append(slot)
            span.combos.append(combo)
            span.independent.append(idx)
        return span

    def _reduce(self, v, combo):
        for b, slot, c in zip(self.basis, self.pivots, self.combos):
            f = v[slot]
            if f:
                v = [x - f * y if y else x for x, y in zip(v, b)]
                combo = [x - f * y if y else x for x, y in zip(combo, c)]
        return v, combo

    @property
    def rank(self) -> int:
        return len(self.basis)

    def residual(self, v: Sequence):
        """Normal form of ``v`` modulo the span and the generator coefficients."""
        zero_combo = [ZERO] * self.ngenerators
        res, neg = self._reduce(list(v), zero_combo)
        return res, [-c for c in neg]
