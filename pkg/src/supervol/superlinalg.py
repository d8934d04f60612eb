"""Even block supermatrices with Grassmann-valued entries.

A ``(p|q)`` supermatrix is stored as a full ``(p+q) x (p+q)`` array of
:class:`GrassmannElement` with block layout::

    [[A (p x p, even), B (p x q, odd)],
     [C (q x p, odd),  D (q x q, even)]]

All routines are exact whenever the coefficients are exact.
"""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .grassmann import (
    GrassmannElement,
    GrassmannError,
    NonInvertibleError,
    Parity,
    inverse as _ginv,
    is_zero,
    sqrt as _gsqrt,
)

Entries = list[list[GrassmannElement]]


class SuperMatrixError(ValueError):
    pass


def _body_invertible(b) -> bool:
    if isinstance(b, np.ndarray):
        return bool(np.all(b != 0))
    return not is_zero(b)


def _pivot_size(b) -> float | None:
    """Pivot quality of a body: None if not invertible, +inf for exact nonzero
    coefficients (first one wins), |b| (worst case over a batch) otherwise."""
    if not _body_invertible(b):
        return None
    if isinstance(b, np.ndarray):
        return float(np.min(np.abs(b)))
    if isinstance(b, (float, complex, np.floating, np.complexfloating)):
        return abs(b)
    return math.inf


def _choose_pivot(work: Entries, rows, col: int) -> int | None:
    """Row for the pivot in ``col``: the first exact invertible entry, or the
    largest inexact one (partial pivoting)."""
    best, best_size = None, -1.0
    for r in rows:
        size = _pivot_size(work[r][col].body)
        if size is None:
            continue
        if size == math.inf:
            return r
        if size > best_size:
            best, best_size = r, size
    return best


def _as_element(x, n: int) -> GrassmannElement:
    if isinstance(x, GrassmannElement):
        if x.n != n:
            raise SuperMatrixError(f"entry has {x.n} generators, expected {n}")
        return x
    return GrassmannElement.scalar(n, x)


class SuperMatrix:
    """Even ``(p|q) x (p|q)`` supermatrix over a Grassmann algebra."""

    __slots__ = ("p", "q", "n", "_rows")
    __array_ufunc__ = None

    def __init__(self, entries, p: int, q: int, n: int | None = None, check_parity: bool = True):
        size = p + q
        rows = [list(r) for r in entries]
        if len(rows) != size or any(len(r) != size for r in rows):
            raise SuperMatrixError(f"expected a {size}x{size} array of entries for shape ({p}|{q})")
        if n is None:
            n = next((x.n for r in rows for x in r if isinstance(x, GrassmannElement)), 0)
        self.p, self.q, self.n = p, q, n
        self._rows = [[_as_element(x, n) for x in r] for r in rows]
        if check_parity:
            for i in range(size):
                for j in range(size):
                    want = Parity.EVEN if (i < p) == (j < p) else Parity.ODD
                    e = self._rows[i][j]
                    if e.is_zero:
                        continue
                    if e.parity is not want:
                        raise SuperMatrixError(
                            f"entry ({i},{j}) must be {want.value} for an even supermatrix, got {e.parity.value}"
                        )

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, p: int, q: int, n: int = 0) -> "SuperMatrix":
        size = p + q
        return cls([[1 if i == j else 0 for j in range(size)] for i in range(size)], p, q, n)

    @classmethod
    def diag(cls, even: Sequence, odd: Sequence, n: int = 0) -> "SuperMatrix":
        vals = list(even) + list(odd)
        size = len(vals)
        return cls(
            [[vals[i] if i == j else 0 for j in range(size)] for i in range(size)], len(even), len(odd), n
        )

    @classmethod
    def from_blocks(cls, A, B, C, D, n: int | None = None) -> "SuperMatrix":
        p, q = len(A), len(D)
        rows = []
        for i in range(p):
            rows.append(list(A[i]) + (list(B[i]) if q else []))
        for i in range(q):
            rows.append((list(C[i]) if p else []) + list(D[i]))
        return cls(rows, p, q, n)

    # -- accessors ----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.p, self.q

    @property
    def entries(self) -> Entries:
        return [list(r) for r in self._rows]

    def __getitem__(self, ij) -> GrassmannElement:
        i, j = ij
        return self._rows[i][j]

    def _block(self, rows: range, cols: range) -> Entries:
        return [[self._rows[i][j] for j in cols] for i in rows]

    @property
    def blocks(self):
        p, s = self.p, self.p + self.q
        ev, od = range(0, p), range(p, s)
        return self._block(ev, ev), self._block(ev, od), self._block(od, ev), self._block(od, od)

    def body(self) -> np.ndarray:
        return np.array([[complex(e.body) for e in r] for r in self._rows], dtype=complex)

    def parity_of(self, i: int) -> int:
        return 0 if i < self.p else 1

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        return matmul(self, other)

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self._rows, other._rows) for a, b in zip(ra, rb)
        )

    __hash__ = None

    def allclose(self, other: "SuperMatrix", rtol: float = 1e-12, atol: float = 1e-12) -> bool:
        return self.shape == other.shape and all(
            a.allclose(b, rtol, atol) for ra, rb in zip(self._rows, other._rows) for a, b in zip(ra, rb)
        )

    def __repr__(self):
        return f"SuperMatrix(shape=({self.p}|{self.q}), n={self.n})"


# -- plain matrix helpers over Grassmann entries ------------------------------


def mat_mul(X: Entries, Y: Entries, n: int) -> Entries:
    """Matrix product of Grassmann-valued matrices (no parity bookkeeping)."""
    rows, inner = len(X), len(Y)
    cols = len(Y[0]) if Y else 0
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = GrassmannElement.zero(n)
            for k in range(inner):
                x, y = X[i][k], Y[k][j]
                if x.is_zero or y.is_zero:
                    continue
                acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out


def _mat_sub(X: Entries, Y: Entries) -> Entries:
    return [[a - b for a, b in zip(rx, ry)] for rx, ry in zip(X, Y)]


def _gauss_jordan(M: Entries, n: int, blocks: Sequence[range]) -> tuple[Entries, object]:
    """Invert ``M`` by Gauss-Jordan elimination; pivots are searched only
    within the row block of the pivot column.  Returns (inverse, det) where
    det is only meaningful for an all-even matrix."""
    size = len(M)
    work = [list(r) for r in M]
    inv = [[GrassmannElement.scalar(n, 1 if i == j else 0) for j in range(size)] for i in range(size)]
    det = GrassmannElement.scalar(n, 1)
    block_of = {}
    for blk in blocks:
        for i in blk:
            block_of[i] = blk
    for col in range(size):
        blk = block_of[col]
        pivot_row = _choose_pivot(work, [r for r in blk if r >= col], col)
        if pivot_row is None:
            raise NonInvertibleError(f"no invertible pivot in column {col}: body is singular")
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            inv[col], inv[pivot_row] = inv[pivot_row], inv[col]
            det = -det
        piv = work[col][col]
        det = det * piv
        piv_inv = _ginv(piv)
        work[col] = [piv_inv * x for x in work[col]]
        inv[col] = [piv_inv * x for x in inv[col]]
        for r in range(size):
            if r == col:
                continue
            f = work[r][col]
            if f.is_zero:
                continue
            work[r] = [x - f * y for x, y in zip(work[r], work[col])]
            inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv, det


def even_matrix_inverse(M: Entries, n: int) -> Entries:
    return _gauss_jordan(M, n, [range(len(M))])[0]


def even_det(M: Entries, n: int) -> GrassmannElement:
    """Determinant of a square matrix with even (hence commuting) entries."""
    size = len(M)
    if size == 0:
        return GrassmannElement.scalar(n, 1)
    work = [list(r) for r in M]
    det = GrassmannElement.scalar(n, 1)
    for col in range(size):
        pivot_row = _choose_pivot(work, range(col, size), col)
        if pivot_row is None:
            raise NonInvertibleError(f"no invertible pivot in column {col}: body is singular")
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            det = -det
        piv = work[col][col]
        det = det * piv
        piv_inv = _ginv(piv)
        for r in range(col + 1, size):
            f = work[r][col]
            if f.is_zero:
                continue
            f = f * piv_inv
            work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return det


# -- operations ---------------------------------------------------------------


def matmul(A: SuperMatrix, B: SuperMatrix) -> SuperMatrix:
    if A.shape != B.shape:
        raise SuperMatrixError(f"shape mismatch: ({A.p}|{A.q}) vs ({B.p}|{B.q})")
    if A.n != B.n:
        raise SuperMatrixError(f"generator mismatch: {A.n} vs {B.n}")
    return SuperMatrix(mat_mul(A._rows, B._rows, A.n), A.p, A.q, A.n, check_parity=False)


def inverse(A: SuperMatrix) -> SuperMatrix:
    p, s = A.p, A.p + A.q
    inv, _ = _gauss_jordan(A._rows, A.n, [range(0, p), range(p, s)])
    return SuperMatrix(inv, A.p, A.q, A.n, check_parity=False)


def berezinian(A: SuperMatrix, form: str = "auto") -> GrassmannElement:
    """Superdeterminant.

    ``form="odd"``:  det(A00 - A01 A11^-1 A10) / det(A11)   (needs body(A11) invertible)
    ``form="even"``: det(A00) / det(A11 - A10 A00^-1 A01)   (needs body(A00) invertible)
    ``form="auto"`` tries the first, then the second.
    """
    n = A.n
    A00, A01, A10, A11 = A.blocks
    if A.q == 0:
        return even_det(A00, n)
    if A.p == 0:
        return _ginv(even_det(A11, n))
    if form not in ("auto", "odd", "even"):
        raise SuperMatrixError(f"unknown Berezinian form {form!r}")
    if form in ("auto", "odd"):
        try:
            D_inv = even_matrix_inverse(A11, n)
        except NonInvertibleError:
            if form == "odd":
                raise
        else:
            schur = _mat_sub(A00, mat_mul(mat_mul(A01, D_inv, n), A10, n))
            return even_det(schur, n) * _ginv(even_det(A11, n))
    A_inv = even_matrix_inverse(A00, n)
    schur = _mat_sub(A11, mat_mul(mat_mul(A10, A_inv, n), A01, n))
    return even_det(A00, n) * _ginv(even_det(schur, n))


def supertranspose(A: SuperMatrix) -> SuperMatrix:
    """[[A00^t, A10^t], [-A01^t, A11^t]]."""
    A00, A01, A10, A11 = A.blocks
    p, q = A.p, A.q
    T00 = [[A00[j][i] for j in range(p)] for i in range(p)]
    T01 = [[A10[j][i] for j in range(q)] for i in range(p)]
    T10 = [[-A01[j][i] for j in range(p)] for i in range(q)]
    T11 = [[A11[j][i] for j in range(q)] for i in range(q)]
    return SuperMatrix.from_blocks(T00, T01, T10, T11, A.n)


def is_supersymmetric(g: SuperMatrix, atol: float = 0.0) -> bool:
    """g_ab == (-1)^(|a||b|) g_ba."""
    size = g.p + g.q
    for a in range(size):
        for b in range(a + 1, size):
            sign = -1 if g.parity_of(a) and g.parity_of(b) else 1
            diff = g[a, b] - g[b, a] * sign
            if atol == 0.0:
                if not diff.is_zero:
                    return False
            elif diff.max_abs() > atol:
                return False
    return True


def sqrt_berezinian_volume_density(g: SuperMatrix, symmetry_atol: float = 1e-9) -> GrassmannElement:
    """``sqrt(Ber g)``: the density multiplying the coordinate volume element."""
    if not is_supersymmetric(g, symmetry_atol):
        raise SuperMatrixError("metric is not supersymmetric: g_ab != (-1)^(|a||b|) g_ba")
    ber = berezinian(g)
    b = ber.body
    real = np.real(b)
    imag = np.imag(b)
    if np.any(real <= 0) or np.any(np.abs(imag) > 1e-12 * np.maximum(np.abs(real), 1.0)):
        raise SuperMatrixError("metric Berezinian must have a positive real body")
    if np.iscomplexobj(b):
        # drop round-off imaginary part of the body so the square root is real
        ber = ber.soul + real
    return _gsqrt(ber)


__all__ = [
    "SuperMatrix",
    "SuperMatrixError",
    "GrassmannError",
    "matmul",
    "inverse",
    "berezinian",
    "supertranspose",
    "sqrt_berezinian_volume_density",
    "is_supersymmetric",
    "even_det",
    "even_matrix_inverse",
    "mat_mul",
]
