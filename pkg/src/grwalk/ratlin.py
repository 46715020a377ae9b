"""Exact rational scalars and dense matrices over them.

Every exact route in the package runs on top of this module; floating
point appears only in the time-domain simulator.  gmpy2's mpq is used
when available (it is considerably faster on the catalog sweeps), with
fractions.Fraction as a pure-Python fallback.
"""
from __future__ import annotations

import re
from fractions import Fraction

try:
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover - gmpy2 is normally installed
    _mpq = Fraction


def rat(p=0, q=1):
    """The exact rational p/q."""
    return _mpq(p, q)


RAT_ZERO = rat(0)
RAT_ONE = rat(1)

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?\Z")


def parse_rational(text):
    """Parse ``p`` or ``p/q`` with an optional leading sign."""
    s = text.strip()
    if not _RATIONAL_RE.fullmatch(s):
        raise ValueError(f"malformed rational: {text!r}")
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return rat(int(num), int(den))
    return rat(int(s))


def format_rational(x):
    """Canonical rendering: ``p/q``, or ``p`` when the denominator is 1."""
    return str(x)


class SingularMatrixError(ValueError):
    """An exact solve met a singular matrix."""

    def __init__(self, rank, size):
        self.rank = rank
        self.size = size
        super().__init__(f"singular matrix: rank {rank} < {size}")


class RatMatrix:
    """Dense matrix over exact rationals.

    All matrices in this package are small (at most ~40x40), so dense
    row-major storage and plain Gaussian elimination are entirely
    adequate.  Pivoting picks the first nonzero entry in column order;
    exact arithmetic needs no numerical pivoting and this keeps results
    deterministic.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        self.rows = len(data)
        self.cols = len(data[0]) if self.rows else 0
        for row in data:
            if len(row) != self.cols:
                raise ValueError("ragged rows")
        self.data = [[rat(x) for x in row] for row in data]

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[RAT_ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        m = cls.zeros(n, n)
        for i in range(n):
            m.data[i][i] = RAT_ONE
        return m

    def copy(self):
        return RatMatrix(self.data)

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.data == other.data

    def __repr__(self):
        return f"RatMatrix({self.rows}x{self.cols})"

    def __add__(self, other):
        self._check_same_shape(other)
        return RatMatrix([[a + b for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.data, other.data)])

    def __sub__(self, other):
        self._check_same_shape(other)
        return RatMatrix([[a - b for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.data, other.data)])

    def _check_same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def __mul__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = list(zip(*other.data))
        return RatMatrix([[sum((a * b for a, b in zip(row, col)), RAT_ZERO)
                           for col in ot] for row in self.data])

    def scale(self, s):
        s = rat(s)
        return RatMatrix([[s * x for x in row] for row in self.data])

    def mul_vec(self, v):
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return [sum((a * b for a, b in zip(row, v)), RAT_ZERO) for row in self.data]

    def transpose(self):
        return RatMatrix([list(col) for col in zip(*self.data)])

    def minor(self, drop_rows=(), drop_cols=()):
        """Submatrix with the given row/column indices removed (0-based)."""
        dr, dc = set(drop_rows), set(drop_cols)
        return RatMatrix([[x for j, x in enumerate(row) if j not in dc]
                          for i, row in enumerate(self.data) if i not in dr])

    def is_identity(self):
        if self.rows != self.cols:
            return False
        return all(self.data[i][j] == (RAT_ONE if i == j else RAT_ZERO)
                   for i in range(self.rows) for j in range(self.cols))

    def rank(self):
        a = [row[:] for row in self.data]
        rank = 0
        for col in range(self.cols):
            piv = next((r for r in range(rank, self.rows) if a[r][col] != 0), None)
            if piv is None:
                continue
            a[rank], a[piv] = a[piv], a[rank]
            pval = a[rank][col]
            for r in range(rank + 1, self.rows):
                f = a[r][col]
                if f != 0:
                    f = f / pval
                    arow, prow = a[r], a[rank]
                    for c in range(col, self.cols):
                        arow[c] -= f * prow[c]
            rank += 1
            if rank == self.rows:
                break
        return rank

    def det(self):
        """Exact determinant; 0 for singular input."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = [row[:] for row in self.data]
        sign = 1
        result = RAT_ONE
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col] != 0), None)
            if piv is None:
                return RAT_ZERO
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                sign = -sign
            pval = a[col][col]
            result = result * pval
            for r in range(col + 1, n):
                f = a[r][col]
                if f != 0:
                    f = f / pval
                    arow, prow = a[r], a[col]
                    for c in range(col + 1, n):
                        arow[c] -= f * prow[c]
        return result if sign == 1 else -result

    def solve_many(self, rhs_columns):
        """Solve ``self @ x = b`` for several right-hand-side columns at once.

        One forward elimination is shared by all columns; raises
        SingularMatrixError (with the true rank) if no solution family
        exists.  Returns the solution columns in order.
        """
        if self.rows != self.cols:
            raise ValueError("solve needs a square matrix")
        n = self.rows
        k = len(rhs_columns)
        for col in rhs_columns:
            if len(col) != n:
                raise ValueError("right-hand-side length mismatch")
        aug = [self.data[i][:] + [rat(col[i]) for col in rhs_columns]
               for i in range(n)]
        width = n + k
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if piv is None:
                raise SingularMatrixError(self.rank(), n)
            if piv != col:
                aug[col], aug[piv] = aug[piv], aug[col]
            pval = aug[col][col]
            for r in range(col + 1, n):
                f = aug[r][col]
                if f != 0:
                    f = f / pval
                    arow, prow = aug[r], aug[col]
                    for c in range(col + 1, width):
                        arow[c] -= f * prow[c]
        solutions = []
        for t in range(k):
            x = [RAT_ZERO] * n
            for i in range(n - 1, -1, -1):
                arow = aug[i]
                s = arow[n + t]
                for j in range(i + 1, n):
                    s -= arow[j] * x[j]
                x[i] = s / arow[i]
            solutions.append(x)
        return solutions

    def solve(self, b):
        """Exact solution of ``self @ x = b``, residual-verified before return."""
        x = self.solve_many([b])[0]
        residual = self.mul_vec(x)
        if any(r != rat(bi) for r, bi in zip(residual, b)):
            raise RuntimeError("exact solver produced a nonzero residual")
        return x

    def _rref_augmented(self, rhs_columns):
        """Reduced row echelon form of [self | rhs columns].

        Returns (rows, pivot column indices); pivots refer to coefficient
        columns only.
        """
        k = len(rhs_columns)
        for col in rhs_columns:
            if len(col) != self.rows:
                raise ValueError("right-hand-side length mismatch")
        aug = [self.data[i][:] + [rat(col[i]) for col in rhs_columns]
               for i in range(self.rows)]
        width = self.cols + k
        pivots = []
        row = 0
        for col in range(self.cols):
            piv = next((r for r in range(row, self.rows) if aug[r][col] != 0),
                       None)
            if piv is None:
                continue
            aug[row], aug[piv] = aug[piv], aug[row]
            pval = aug[row][col]
            if pval != 1:
                aug[row] = [x / pval for x in aug[row]]
            prow = aug[row]
            for r in range(self.rows):
                if r != row and aug[r][col] != 0:
                    f = aug[r][col]
                    arow = aug[r]
                    for c in range(col, width):
                        arow[c] -= f * prow[c]
            pivots.append(col)
            row += 1
            if row == self.rows:
                break
        return aug, pivots

    def nullspace(self):
        """A basis (list of column vectors) of the kernel of self."""
        aug, pivots = self._rref_augmented([])
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            vec = [RAT_ZERO] * self.cols
            vec[free] = RAT_ONE
            for row, pcol in enumerate(pivots):
                vec[pcol] = -aug[row][free]
            basis.append(vec)
        return basis

    def solve_min_norm_many(self, rhs_columns):
        """Minimum-norm (kernel-orthogonal) solutions of ``self @ x = b``.

        For a nonsingular system this coincides with solve_many; for a
        consistent singular system it returns the unique solution
        orthogonal to the kernel.  Raises SingularMatrixError when any
        right-hand side is inconsistent.  One reduction is shared by all
        columns.
        """
        k = len(rhs_columns)
        aug, pivots = self._rref_augmented(rhs_columns)
        rank = len(pivots)
        for row in range(rank, self.rows):
            for t in range(k):
                if aug[row][self.cols + t] != 0:
                    raise SingularMatrixError(rank, self.cols)
        particulars = []
        for t in range(k):
            x = [RAT_ZERO] * self.cols
            for row, pcol in enumerate(pivots):
                x[pcol] = aug[row][self.cols + t]
            particulars.append(x)
        basis = self.nullspace() if rank < self.cols else []
        if not basis:
            return particulars
        d = len(basis)
        gram = RatMatrix([[_dot(basis[i], basis[j]) for j in range(d)]
                          for i in range(d)])
        proj_rhs = [[_dot(basis[i], x) for i in range(d)] for x in particulars]
        coeffs = gram.solve_many(proj_rhs)
        solutions = []
        for x, c in zip(particulars, coeffs):
            for ci, vec in zip(c, basis):
                if ci != 0:
                    x = [xi - ci * vi for xi, vi in zip(x, vec)]
            solutions.append(x)
        return solutions

    def solve_min_norm(self, b):
        """Minimum-norm solution of ``self @ x = b``, residual-verified."""
        x = self.solve_min_norm_many([b])[0]
        residual = self.mul_vec(x)
        if any(r != rat(bi) for r, bi in zip(residual, b)):
            raise RuntimeError("exact solver produced a nonzero residual")
        return x


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v)), RAT_ZERO)
