"""Dense immutable matrices over Q or a real quadratic field."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .intmat import IntMatrix
from .scalar import ExactScalar, join_fields, scalar_sign


class SingularMatrix(ArithmeticError):
    pass


class ExactMatrix:
    """Matrix of :class:`ExactScalar` entries sharing one field context ``d``."""

    __slots__ = ("nrows", "ncols", "d", "entries")

    def __init__(self, rows: Iterable[Iterable], d: int | None = None, ncols: int | None = None):
        raw = [list(r) for r in rows]
        ctx = d
        for row in raw:
            for x in row:
                if isinstance(x, ExactScalar) and x.d is not None:
                    ctx = join_fields(ctx, x.d)
        entries = tuple(tuple(ExactScalar.coerce(x, ctx) for x in row) for row in raw)
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        if any(len(r) != ncols for r in entries):
            raise ValueError("ragged rows")
        self.nrows = len(entries)
        self.ncols = ncols
        self.d = ctx
        self.entries = entries

    @classmethod
    def _raw(cls, entries, d, ncols):
        m = object.__new__(cls)
        m.entries = entries
        m.nrows = len(entries)
        m.ncols = ncols
        m.d = d
        return m

    # constructors -------------------------------------------------------

    @classmethod
    def identity(cls, n: int, d: int | None = None) -> ExactMatrix:
        one, zero = ExactScalar(1, 0, d), ExactScalar(0, 0, d)
        return cls._raw(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), d, n)

    @classmethod
    def zeros(cls, m: int, n: int, d: int | None = None) -> ExactMatrix:
        zero = ExactScalar(0, 0, d)
        return cls._raw(tuple((zero,) * n for _ in range(m)), d, n)

    @classmethod
    def from_int(cls, M: IntMatrix, d: int | None = None) -> ExactMatrix:
        return cls._raw(
            tuple(tuple(ExactScalar(v, 0, d) for v in r) for r in M.entries), d, M.ncols
        )

    @classmethod
    def block(cls, blocks: Sequence[Sequence[ExactMatrix]]) -> ExactMatrix:
        d = None
        for brow in blocks:
            for b in brow:
                d = join_fields(d, b.d)
        rows = []
        for brow in blocks:
            h = brow[0].nrows
            if any(b.nrows != h for b in brow):
                raise ValueError("block rows of unequal height")
            for i in range(h):
                rows.append(sum((b.entries[i] for b in brow), ()))
        ncols = sum(b.ncols for b in blocks[0]) if blocks else 0
        return cls(rows, d, ncols)

    @classmethod
    def diag(cls, values: Sequence, d: int | None = None) -> ExactMatrix:
        n = len(values)
        return cls(([values[i] if i == j else 0 for j in range(n)] for i in range(n)), d, n)

    # basic structure ----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij) -> ExactScalar:
        i, j = ij
        return self.entries[i][j]

    @property
    def T(self) -> ExactMatrix:
        return ExactMatrix._raw(tuple(zip(*self.entries)) if self.nrows else tuple(() for _ in range(self.ncols)), self.d, self.nrows)

    def submatrix(self, rows: range | Sequence[int], cols: range | Sequence[int]) -> ExactMatrix:
        cols = list(cols)
        return ExactMatrix._raw(tuple(tuple(self.entries[i][j] for j in cols) for i in rows), self.d, len(cols))

    def column(self, j: int) -> tuple[ExactScalar, ...]:
        return tuple(r[j] for r in self.entries)

    def with_field(self, d: int | None) -> ExactMatrix:
        if d == self.d or d is None:
            return self
        return ExactMatrix(self.entries, d, self.ncols)

    def tolist(self) -> list[list[ExactScalar]]:
        return [list(r) for r in self.entries]

    # arithmetic ---------------------------------------------------------

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if isinstance(other, IntMatrix):
            other = ExactMatrix.from_int(other, self.d)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        d = join_fields(self.d, other.d)
        zero = ExactScalar(0, 0, d)
        cols = list(zip(*other.entries)) if other.nrows else [() for _ in range(other.ncols)]
        out = []
        for row in self.entries:
            out_row = []
            for col in cols:
                acc = zero
                for x, y in zip(row, col):
                    if x and y:
                        acc = acc + x * y
                out_row.append(acc)
            out.append(tuple(out_row))
        return ExactMatrix._raw(tuple(out), d, other.ncols)

    def __rmatmul__(self, other):
        if isinstance(other, IntMatrix):
            return ExactMatrix.from_int(other, self.d) @ self
        return NotImplemented

    def _zip(self, other: ExactMatrix, op) -> ExactMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        d = join_fields(self.d, other.d)
        return ExactMatrix._raw(
            tuple(tuple(op(x, y) for x, y in zip(r, s)) for r, s in zip(self.entries, other.entries)),
            d,
            self.ncols,
        )

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        return self._zip(other, lambda x, y: x + y)

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return self._zip(other, lambda x, y: x - y)

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix._raw(tuple(tuple(-x for x in r) for r in self.entries), self.d, self.ncols)

    def scale(self, c) -> ExactMatrix:
        c = ExactScalar.coerce(c, self.d)
        d = join_fields(self.d, c.d)
        return ExactMatrix._raw(tuple(tuple(c * x for x in r) for r in self.entries), d, self.ncols)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self):
        return f"ExactMatrix({[[str(x) for x in r] for r in self.entries]}, d={self.d})"

    # predicates ---------------------------------------------------------

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self.entries[i][j] == self.entries[j][i] for i in range(self.nrows) for j in range(i)
        )

    def is_rational(self) -> bool:
        return all(not x.b for r in self.entries for x in r)

    def is_integral(self) -> bool:
        return all(x.is_integer() for r in self.entries for x in r)

    def is_zero(self) -> bool:
        return not any(x for r in self.entries for x in r)

    def to_int(self) -> IntMatrix:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return IntMatrix(([x.a.numerator for x in r] for r in self.entries), self.ncols)

    def denominator(self) -> int:
        """Least common denominator of all rational and surd parts."""
        den = 1
        for r in self.entries:
            for x in r:
                den = lcm(den, x.a.denominator, x.b.denominator)
        return den

    def to_float(self):
        import numpy as np

        return np.array([[float(x) for x in r] for r in self.entries], dtype=float).reshape(self.shape)

    def rational_part(self) -> list[list[Fraction]]:
        return [[x.a for x in r] for r in self.entries]

    def surd_part(self) -> list[list[Fraction]]:
        return [[x.b for x in r] for r in self.entries]

    # linear algebra -----------------------------------------------------

    def trace(self) -> ExactScalar:
        acc = ExactScalar(0, 0, self.d)
        for i in range(min(self.shape)):
            acc = acc + self.entries[i][i]
        return acc

    def det(self) -> ExactScalar:
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        rational = self.is_rational()
        a = self.rational_part() if rational else self.tolist()
        n = self.nrows
        det = Fraction(1) if rational else ExactScalar(1, 0, self.d)
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c]), None)
            if piv is None:
                return ExactScalar(0, 0, self.d)
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            p = a[c][c]
            det = det * p
            inv = 1 / p
            for i in range(c + 1, n):
                if a[i][c]:
                    f = a[i][c] * inv
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return ExactScalar(det, 0, self.d) if rational else det

    def rank(self) -> int:
        return len(_rref(self.tolist(), self.ncols)[1])

    def solve(self, B: ExactMatrix) -> ExactMatrix:
        """Unique ``X`` with ``self @ X == B``.

        ``self`` may be tall; it must have full column rank and the system
        must be consistent.
        """
        if isinstance(B, IntMatrix):
            B = ExactMatrix.from_int(B, self.d)
        if B.nrows != self.nrows:
            raise ValueError("row count mismatch in solve")
        n, k = self.ncols, B.ncols
        d = join_fields(self.d, B.d)
        # plain Fractions are much cheaper than field elements
        rational = self.is_rational() and B.is_rational()
        if rational:
            aug = [r + s for r, s in zip(self.rational_part(), B.rational_part())]
        else:
            aug = [list(r) + list(s) for r, s in zip(self.entries, B.entries)]
        red, pivots = _rref(aug, n)
        if len(pivots) < n:
            raise SingularMatrix("coefficient matrix lacks full column rank")
        for i in range(n, len(red)):
            if any(red[i][n:]):
                raise ValueError("inconsistent linear system")
        if rational:
            return ExactMatrix((red[i][n:] for i in range(n)), d, k)
        return ExactMatrix._raw(tuple(tuple(red[i][n:]) for i in range(n)), d, k)

    def inverse(self) -> ExactMatrix:
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        return self.solve(ExactMatrix.identity(self.nrows, self.d))


def _rref(a: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over the first ``ncols`` columns; entries are
    field elements or Fractions."""
    m = len(a)
    r = 0
    pivots = []
    for c in range(ncols):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def rational_nullspace(rows: Sequence[Sequence[Fraction]], n: int) -> list[list[Fraction]]:
    """Basis of ``{v in Q^n : A v = 0}``, one vector per free column.

    The basis is the standard one read off the reduced echelon form, so it
    is canonical for the row space of ``A``.
    """
    a = [[Fraction(x) for x in r] for r in rows]
    m = len(a)
    r = 0
    pivots = []
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * n
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fcol]
        basis.append(v)
    return basis


def is_positive_definite(S: ExactMatrix) -> bool:
    """Exact test: every leading principal minor has sign +1.

    Runs symmetric elimination without pivoting, whose k-th pivot is the
    ratio of consecutive leading minors.
    """
    if not S.is_symmetric():
        raise ValueError("positive definiteness is only defined here for symmetric matrices")
    a = S.tolist()
    n = S.nrows
    for k in range(n):
        p = a[k][k]
        if scalar_sign(p) <= 0:
            return False
        inv = p.inverse()
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return True


def charpoly(A: ExactMatrix) -> list[ExactScalar]:
    """Coefficients ``[c_0, ..., c_n]`` of ``det(t I - A)`` (Faddeev-LeVerrier)."""
    n = A.nrows
    coeffs = [ExactScalar(0, 0, A.d)] * (n + 1)
    coeffs[n] = ExactScalar(1, 0, A.d)
    I = ExactMatrix.identity(n, A.d)
    M = ExactMatrix.zeros(n, n, A.d)
    for k in range(1, n + 1):
        M = A @ M + I.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(A @ M).trace() / k
    return coeffs


def is_positive_semidefinite(S: ExactMatrix) -> bool:
    """Exact PSD test by sign pattern of the characteristic polynomial.

    A symmetric matrix has real spectrum, so all eigenvalues are >= 0 iff
    ``(-1)^(n-k) c_k >= 0`` for every coefficient.
    """
    if not S.is_symmetric():
        raise ValueError("PSD test requires a symmetric matrix")
    n = S.nrows
    for k, c in enumerate(charpoly(S)):
        s = scalar_sign(c)
        if (n - k) % 2:
            s = -s
        if s < 0:
            return False
    return True
