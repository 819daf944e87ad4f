"""Exact arithmetic over the Gaussian rationals, and sparse matrices thereof.

Every sign identity checked by :mod:`tautsig.clifford` is a statement about
matrices whose entries are rational multiples of powers of i.  Scalars are
therefore pairs of :class:`fractions.Fraction`; matrices are stored column
sparse, which keeps products of signed permutation-like operators (exterior
multiplications, Hodge stars, gradings) linear in the number of nonzeros.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator


class GaussianRational:
    """a + b*i with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        other = as_gaussian(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_gaussian(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return as_gaussian(other) - self

    def __mul__(self, other):
        other = as_gaussian(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_gaussian(other)
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conj(self):
        return GaussianRational(self.re, -self.im)

    # -- predicates -----------------------------------------------------

    def __eq__(self, other):
        other = as_gaussian(other)
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __complex__(self):
        return float(self.re) + 1j * float(self.im)

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}*i)"


def as_gaussian(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x, 0)
    raise TypeError(f"cannot coerce {x!r} to a Gaussian rational")


G_ZERO = GaussianRational(0, 0)
G_ONE = GaussianRational(1, 0)
G_I = GaussianRational(0, 1)


def i_power(k: int) -> GaussianRational:
    """i**k for any integer k."""
    return (G_ONE, G_I, -G_ONE, -G_I)[k % 4]


class QiMatrix:
    """Sparse matrix over the Gaussian rationals, stored by columns."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int):
        self.nrows = nrows
        self.ncols = ncols
        self.cols: dict[int, dict[int, GaussianRational]] = {}

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, nrows: int, ncols: int | None = None) -> "QiMatrix":
        return cls(nrows, nrows if ncols is None else ncols)

    @classmethod
    def identity(cls, n: int) -> "QiMatrix":
        m = cls(n, n)
        for j in range(n):
            m.cols[j] = {j: G_ONE}
        return m

    @classmethod
    def diagonal(cls, values: Iterable) -> "QiMatrix":
        vals = [as_gaussian(v) for v in values]
        m = cls(len(vals), len(vals))
        for j, v in enumerate(vals):
            if v:
                m.cols[j] = {j: v}
        return m

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries) -> "QiMatrix":
        m = cls(nrows, ncols)
        for i, j, v in entries:
            m.put(i, j, as_gaussian(v))
        return m

    @classmethod
    def from_rows(cls, rows) -> "QiMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        m = cls(nrows, ncols)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                g = as_gaussian(v)
                if g:
                    m.put(i, j, g)
        return m

    # -- element access -------------------------------------------------

    def put(self, i: int, j: int, value: GaussianRational) -> None:
        col = self.cols.setdefault(j, {})
        if value:
            col[i] = value
        else:
            col.pop(i, None)
            if not col:
                self.cols.pop(j, None)

    def entry(self, i: int, j: int) -> GaussianRational:
        return self.cols.get(j, {}).get(i, G_ZERO)

    def entries(self) -> Iterator[tuple[int, int, GaussianRational]]:
        for j, col in self.cols.items():
            for i, v in col.items():
                yield i, j, v

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    # -- algebra ----------------------------------------------------------

    def __add__(self, other: "QiMatrix") -> "QiMatrix":
        self._check_shape(other)
        out = QiMatrix(self.nrows, self.ncols)
        for j in set(self.cols) | set(other.cols):
            col: dict[int, GaussianRational] = {}
            for i, v in self.cols.get(j, {}).items():
                col[i] = v
            for i, v in other.cols.get(j, {}).items():
                w = col.get(i, G_ZERO) + v
                if w:
                    col[i] = w
                else:
                    col.pop(i, None)
            if col:
                out.cols[j] = col
        return out

    def __sub__(self, other: "QiMatrix") -> "QiMatrix":
        return self + (-other)

    def __neg__(self) -> "QiMatrix":
        out = QiMatrix(self.nrows, self.ncols)
        for j, col in self.cols.items():
            out.cols[j] = {i: -v for i, v in col.items()}
        return out

    def scale(self, s) -> "QiMatrix":
        s = as_gaussian(s)
        out = QiMatrix(self.nrows, self.ncols)
        if not s:
            return out
        for j, col in self.cols.items():
            out.cols[j] = {i: s * v for i, v in col.items()}
        return out

    def __matmul__(self, other: "QiMatrix") -> "QiMatrix":
        if self.ncols != other.nrows:
            raise ValueError(
                f"shape mismatch: ({self.nrows},{self.ncols}) @ "
                f"({other.nrows},{other.ncols})"
            )
        out = QiMatrix(self.nrows, other.ncols)
        for j, bcol in other.cols.items():
            acc: dict[int, GaussianRational] = {}
            for k, bval in bcol.items():
                for i, aval in self.cols.get(k, {}).items():
                    w = acc.get(i, G_ZERO) + aval * bval
                    if w:
                        acc[i] = w
                    else:
                        acc.pop(i, None)
            if acc:
                out.cols[j] = acc
        return out

    def adjoint(self) -> "QiMatrix":
        """Conjugate transpose."""
        out = QiMatrix(self.ncols, self.nrows)
        for j, col in self.cols.items():
            for i, v in col.items():
                out.put(j, i, v.conj())
        return out

    def transpose(self) -> "QiMatrix":
        out = QiMatrix(self.ncols, self.nrows)
        for j, col in self.cols.items():
            for i, v in col.items():
                out.put(j, i, v)
        return out

    def kron(self, other: "QiMatrix") -> "QiMatrix":
        out = QiMatrix(self.nrows * other.nrows, self.ncols * other.ncols)
        for aj, acol in self.cols.items():
            for bj, bcol in other.cols.items():
                col = out.cols.setdefault(aj * other.ncols + bj, {})
                for ai, av in acol.items():
                    for bi, bv in bcol.items():
                        col[ai * other.nrows + bi] = av * bv
        return out

    # -- predicates and conversion ----------------------------------------

    def is_zero(self) -> bool:
        return all(not v for col in self.cols.values() for v in col.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, QiMatrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("QiMatrix is unhashable")

    def _check_shape(self, other: "QiMatrix") -> None:
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")

    def to_dense(self) -> list[list[GaussianRational]]:
        rows = [[G_ZERO] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.entries():
            rows[i][j] = v
        return rows

    def to_numpy(self):
        import numpy as np

        arr = np.zeros((self.nrows, self.ncols), dtype=complex)
        for i, j, v in self.entries():
            arr[i, j] = complex(v)
        return arr


def anticommutator(a: QiMatrix, b: QiMatrix) -> QiMatrix:
    return a @ b + b @ a


def commutator(a: QiMatrix, b: QiMatrix) -> QiMatrix:
    return a @ b - b @ a


# ---------------------------------------------------------------------------
# Dense exact linear algebra (small dimensions only)
# ---------------------------------------------------------------------------


def rref(rows: list[list[GaussianRational]]) -> tuple[list[list[GaussianRational]], list[int]]:
    """Row-reduce in place over Q(i); returns (rows, pivot column indices)."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((k for k in range(r, nrows) if rows[k][c]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = G_ONE / rows[r][c]
        rows[r] = [inv * v for v in rows[r]]
        for k in range(nrows):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [vk - f * vr for vk, vr in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def kernel_basis(matrix: QiMatrix) -> list[list[GaussianRational]]:
    """Exact basis of the null space, as dense column vectors."""
    rows, pivots = rref(matrix.to_dense())
    ncols = matrix.ncols
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [G_ZERO] * ncols
        vec[fc] = G_ONE
        for r, pc in enumerate(pivots):
            vec[pc] = -rows[r][fc]
        basis.append(vec)
    return basis


def column_space_basis(matrix: QiMatrix) -> list[list[GaussianRational]]:
    """Exact basis of the column space, as dense column vectors."""
    rows, pivots = rref(matrix.transpose().to_dense())
    return [list(rows[r]) for r in range(len(pivots))]


def restrict_operator(op: QiMatrix, basis: list[list[GaussianRational]]) -> QiMatrix:
    """Matrix of ``op`` on span(basis); requires the span to be invariant."""
    if not basis:
        return QiMatrix(0, 0)
    n = len(basis[0])
    m = len(basis)
    bmat = QiMatrix.from_entries(
        n, m, ((i, j, basis[j][i]) for j in range(m) for i in range(n))
    )
    image = op @ bmat
    # Solve bmat @ X = image column by column via a shared row reduction.
    aug = [[bmat.entry(i, j) for j in range(m)] + [image.entry(i, j) for j in range(m)]
           for i in range(n)]
    red, pivots = rref(aug)
    if any(p >= m for p in pivots):
        raise ValueError("operator does not preserve the given subspace")
    out = QiMatrix(m, m)
    for r, pc in enumerate(pivots):
        for j in range(m):
            out.put(pc, j, red[r][m + j])
    return out
