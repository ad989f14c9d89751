"""Exact linear algebra over the rationals.

All matrices are immutable :class:`RatMatrix` values backed by FLINT's
``fmpq_mat``.  Vectors are column matrices.  Nothing here ever rounds.
"""

from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

import flint

__all__ = [
    "RatMatrix",
    "rank",
    "kernel_basis",
    "solve",
    "cokernel_projection",
    "image_basis",
    "to_fraction",
    "kron",
    "vec",
    "unvec",
]


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, flint.fmpz):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def _fmpq(x):
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, (int, flint.fmpz)):
        return flint.fmpq(x)
    f = to_fraction(x)
    return flint.fmpq(f.numerator, f.denominator)


class RatMatrix:
    """Immutable rows x cols matrix of rationals."""

    __slots__ = ("_m",)

    def __init__(self, rows, cols=None, entries=None):
        # RatMatrix(fmpq_mat) | RatMatrix(list_of_rows) | RatMatrix(r, c[, flat])
        if isinstance(rows, flint.fmpq_mat):
            self._m = rows
            return
        if cols is None:
            data = [list(r) for r in rows]
            r = len(data)
            c = len(data[0]) if r else 0
            if any(len(row) != c for row in data):
                raise ValueError("ragged rows")
            self._m = flint.fmpq_mat(r, c, [_fmpq(x) for row in data for x in row])
            return
        if entries is None:
            self._m = flint.fmpq_mat(rows, cols)
        else:
            entries = list(entries)
            if len(entries) != rows * cols:
                raise ValueError("wrong number of entries")
            self._m = flint.fmpq_mat(rows, cols, [_fmpq(x) for x in entries])

    # construction helpers
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(flint.fmpq_mat(rows, cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        m = flint.fmpq_mat(n, n)
        for i in range(n):
            m[i, i] = 1
        return cls(m)

    @classmethod
    def from_sparse(cls, rows: int, cols: int, items) -> "RatMatrix":
        """Build from an iterable of ``((i, j), value)``; repeated keys add up."""
        m = flint.fmpq_mat(rows, cols)
        for (i, j), v in items:
            m[i, j] = m[i, j] + _fmpq(v)
        return cls(m)

    @classmethod
    def column(cls, values: Sequence) -> "RatMatrix":
        return cls(len(values), 1, values)

    @classmethod
    def hstack(cls, mats: Sequence["RatMatrix"], rows: Optional[int] = None) -> "RatMatrix":
        mats = list(mats)
        if not mats:
            return cls.zeros(rows or 0, 0)
        r = mats[0].rows
        if any(m.rows != r for m in mats):
            raise ValueError("hstack: row mismatch")
        out = flint.fmpq_mat(r, sum(m.cols for m in mats))
        off = 0
        for m in mats:
            src = m._m
            for i in range(r):
                for j in range(m.cols):
                    out[i, off + j] = src[i, j]
            off += m.cols
        return cls(out)

    @classmethod
    def vstack(cls, mats: Sequence["RatMatrix"], cols: Optional[int] = None) -> "RatMatrix":
        mats = list(mats)
        if not mats:
            return cls.zeros(0, cols or 0)
        return cls.hstack([m.T for m in mats]).T

    @classmethod
    def block_diag(cls, mats: Sequence["RatMatrix"]) -> "RatMatrix":
        mats = list(mats)
        out = flint.fmpq_mat(sum(m.rows for m in mats), sum(m.cols for m in mats))
        r0 = c0 = 0
        for m in mats:
            src = m._m
            for i in range(m.rows):
                for j in range(m.cols):
                    out[r0 + i, c0 + j] = src[i, j]
            r0 += m.rows
            c0 += m.cols
        return cls(out)

    # basic protocol
    @property
    def rows(self) -> int:
        return self._m.nrows()

    @property
    def cols(self) -> int:
        return self._m.ncols()

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def flint(self) -> flint.fmpq_mat:
        return self._m

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return to_fraction(self._m[i, j])

    def entry(self, i: int, j: int):
        return self._m[i, j]

    def tolist(self):
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def column_list(self, j: int):
        return [self._m[i, j] for i in range(self.rows)]

    def __repr__(self):
        return "RatMatrix(%r)" % [[str(x) for x in row] for row in self.tolist()]

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._m == other._m

    def __hash__(self):
        return hash((self.shape, tuple(str(x) for x in self._m.entries())))

    def is_zero(self) -> bool:
        if self.rows == 0 or self.cols == 0:
            return True
        return all(x == 0 for x in self._m.entries())

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix(self._m.transpose())

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return RatMatrix.zeros(self.rows, other.cols)
        return RatMatrix(self._m * other._m)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix(self._m + other._m)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix(self._m - other._m)

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(-self._m)

    def scale(self, c) -> "RatMatrix":
        if self.rows == 0 or self.cols == 0:
            return self
        return RatMatrix(self._m * _fmpq(c))

    def __mul__(self, c) -> "RatMatrix":
        return self.scale(c)

    __rmul__ = __mul__

    def select(self, rows: Optional[Iterable[int]] = None, cols: Optional[Iterable[int]] = None) -> "RatMatrix":
        rows = list(range(self.rows)) if rows is None else list(rows)
        cols = list(range(self.cols)) if cols is None else list(cols)
        out = flint.fmpq_mat(len(rows), len(cols))
        src = self._m
        for a, i in enumerate(rows):
            for b, j in enumerate(cols):
                out[a, b] = src[i, j]
        return RatMatrix(out)

    def inverse(self) -> "RatMatrix":
        if self.rows != self.cols:
            raise ValueError("not square")
        if self.rows == 0:
            return self
        return RatMatrix(self._m.inv())

    def rref(self):
        """Reduced row echelon form and pivot columns."""
        if self.rows == 0 or self.cols == 0:
            return self, []
        r, rk = self._m.rref()
        pivots = []
        row = 0
        for j in range(self.cols):
            if row < rk and r[row, j] != 0:
                pivots.append(j)
                row += 1
        return RatMatrix(r), pivots


def rank(m: RatMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return m.flint.rank()


def kernel_basis(m: RatMatrix) -> RatMatrix:
    """Columns spanning the right kernel of ``m``."""
    n = m.cols
    if m.rows == 0:
        return RatMatrix.identity(n)
    r, pivots = m.rref()
    free = [j for j in range(n) if j not in set(pivots)]
    out = flint.fmpq_mat(n, len(free))
    rf = r.flint
    for k, j in enumerate(free):
        out[j, k] = 1
        for row, p in enumerate(pivots):
            out[p, k] = -rf[row, j]
    return RatMatrix(out)


def solve(a: RatMatrix, b: RatMatrix) -> Optional[RatMatrix]:
    """Some ``x`` with ``a @ x == b``, or ``None`` if the system is inconsistent."""
    if a.rows != b.rows:
        raise ValueError("row mismatch")
    n, k = a.cols, b.cols
    if a.rows == 0:
        return RatMatrix.zeros(n, k)
    aug = RatMatrix.hstack([a, b])
    r, pivots = aug.rref()
    if any(p >= n for p in pivots):
        return None
    out = flint.fmpq_mat(n, k)
    rf = r.flint
    for row, p in enumerate(pivots):
        for j in range(k):
            out[p, j] = rf[row, n + j]
    return RatMatrix(out)


def cokernel_projection(m: RatMatrix) -> Tuple[RatMatrix, int]:
    """A full-row-rank ``p`` with ``p @ m == 0`` onto a space of dim rows - rank."""
    p = kernel_basis(m.T).T
    return p, p.rows


def image_basis(m: RatMatrix) -> RatMatrix:
    """Linearly independent columns of ``m`` spanning its column space."""
    if m.rows == 0 or m.cols == 0:
        return RatMatrix.zeros(m.rows, 0)
    _, pivots = m.rref()
    return m.select(cols=pivots)


def kron(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Kronecker product; ``kron(a, b) @ vec(x) == vec(b @ x @ a.T)`` for
    column-major ``vec``."""
    out = flint.fmpq_mat(a.rows * b.rows, a.cols * b.cols)
    am, bm = a.flint, b.flint
    br, bc = b.rows, b.cols
    for i in range(a.rows):
        for j in range(a.cols):
            x = am[i, j]
            if x == 0:
                continue
            for k in range(br):
                for l in range(bc):
                    y = bm[k, l]
                    if y != 0:
                        out[i * br + k, j * bc + l] = x * y
    return RatMatrix(out)


def vec(m: RatMatrix) -> RatMatrix:
    """Column-major flattening into a column."""
    return RatMatrix.column([m.entry(i, j) for j in range(m.cols) for i in range(m.rows)])


def unvec(v, rows: int, cols: int) -> RatMatrix:
    """Inverse of :func:`vec` for a sequence of entries."""
    v = list(v)
    return RatMatrix(rows, cols, [v[j * rows + i] for i in range(rows) for j in range(cols)])
