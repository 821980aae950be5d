"""Integer matrices and the normal forms used for lattice bookkeeping.

Conventions
-----------
``hnf`` is row style: ``H = U @ M`` is in row echelon form, pivots are
positive, and every entry above a pivot lies in ``[0, pivot)``. Zero rows
sit at the bottom. ``snf`` returns ``D = U @ M @ V`` with a diagonal whose
nonzero entries are positive and divide each other.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class IntMatrix:
    """Immutable matrix of Python integers."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        entries = tuple(tuple(int(v) for v in row) for row in rows)
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        for row in entries:
            if len(row) != ncols:
                raise ValueError("ragged rows")
        self.nrows = len(entries)
        self.ncols = ncols
        self.entries = entries

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(([int(i == j) for j in range(n)] for i in range(n)), n)

    @classmethod
    def zeros(cls, m: int, n: int) -> IntMatrix:
        return cls(([0] * n for _ in range(m)), n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], nrows: int) -> IntMatrix:
        return cls(([c[i] for c in cols] for i in range(nrows)), len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(zip(*self.entries), self.nrows) if self.nrows else IntMatrix.zeros(self.ncols, 0)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(r[j] for r in self.entries) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        return IntMatrix(
            ([sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.entries),
            other.ncols,
        )

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(
            ([a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)),
            self.ncols,
        )

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self + other.scale(-1)

    def scale(self, k: int) -> IntMatrix:
        return IntMatrix(([k * a for a in r] for r in self.entries), self.ncols)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self):
        return f"IntMatrix({self.tolist()})"

    def det(self) -> int:
        return int_det(self.entries)


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(rows)
    if n == 0:
        return 1
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _hnf_inplace(a: list[list[int]], u: list[list[int]] | None) -> int:
    """Row-reduce ``a`` (and mirror on ``u``); returns the rank."""
    m = len(a)
    n = len(a[0]) if a else 0
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            piv = None
            for i in range(r, m):
                v = a[i][c]
                if v and (piv is None or abs(v) < abs(a[piv][c])):
                    piv = i
            if piv is None:
                break
            if piv != r:
                a[r], a[piv] = a[piv], a[r]
                if u is not None:
                    u[r], u[piv] = u[piv], u[r]
            p = a[r][c]
            clean = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // p
                    if q:
                        ri, rr = a[i], a[r]
                        for j in range(c, n):
                            ri[j] -= q * rr[j]
                        if u is not None:
                            ui, ur = u[i], u[r]
                            for j in range(len(ur)):
                                ui[j] -= q * ur[j]
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-v for v in a[r]]
            if u is not None:
                u[r] = [-v for v in u[r]]
        p = a[r][c]
        for i in range(r):
            q = a[i][c] // p
            if q:
                ri, rr = a[i], a[r]
                for j in range(c, n):
                    ri[j] -= q * rr[j]
                if u is not None:
                    ui, ur = u[i], u[r]
                    for j in range(len(ur)):
                        ui[j] -= q * ur[j]
        r += 1
    return r


def hnf(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form ``H`` and a unimodular ``U`` with ``H = U @ M``."""
    a = M.tolist()
    u = IntMatrix.identity(M.nrows).tolist()
    _hnf_inplace(a, u)
    return IntMatrix(a, M.ncols), IntMatrix(u, M.nrows)


def hnf_rows(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Nonzero rows of the HNF of ``rows`` (no transform tracked)."""
    a = [list(r) for r in rows]
    if not a:
        return []
    rank = _hnf_inplace(a, None)
    return a[:rank]


def snf(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``D = U @ M @ V`` with ``U``, ``V`` unimodular."""
    m, n = M.shape
    a = M.tolist()
    u = IntMatrix.identity(m).tolist()
    v = IntMatrix.identity(n).tolist()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = a[i][j]
                    if x and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if best is None:
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return IntMatrix(a, n), IntMatrix(u, m), IntMatrix(v, n)


def invariant_factors(M: IntMatrix) -> list[int]:
    """Diagonal of the Smith form, length ``min(m, n)`` (zeros included)."""
    D, _, _ = snf(M)
    return [D[i, i] for i in range(min(M.shape))]


def integer_kernel(M: IntMatrix) -> IntMatrix:
    """Columns form a saturated Z-basis of ``{v : M v = 0}`` in HNF order."""
    m, n = M.shape
    if n == 0:
        return IntMatrix.zeros(0, 0)
    if m == 0:
        return IntMatrix.identity(n)
    H, U = hnf(M.T)
    kernel_rows = [U.entries[i] for i in range(n) if not any(H.entries[i])]
    basis = hnf_rows(kernel_rows, n)
    return IntMatrix.from_columns(basis, n) if basis else IntMatrix.zeros(n, 0)


def column_basis(M: IntMatrix) -> IntMatrix:
    """Canonical Z-basis (as columns) of the lattice spanned by M's columns."""
    rows = hnf_rows(M.columns(), M.nrows)
    return IntMatrix.from_columns(rows, M.nrows) if rows else IntMatrix.zeros(M.nrows, 0)


def lattice_intersect(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    """Canonical basis of ``A Z^a  ∩  B Z^b`` (both column-generated in Z^n)."""
    if A.nrows != B.nrows:
        raise ValueError("lattices live in different ambient dimensions")
    n = A.nrows
    if A.ncols == 0 or B.ncols == 0:
        return IntMatrix.zeros(n, 0)
    stacked = IntMatrix(
        (list(ra) + [-x for x in rb] for ra, rb in zip(A.entries, B.entries)),
        A.ncols + B.ncols,
    )
    K = integer_kernel(stacked)
    if K.ncols == 0:
        return IntMatrix.zeros(n, 0)
    top = IntMatrix(K.entries[: A.ncols], K.ncols)
    return column_basis(A @ top)


def in_lattice(basis: IntMatrix, v: Sequence[int]) -> bool:
    """Membership of an integer vector in the column span of ``basis``."""
    extended = IntMatrix(
        (list(r) + [x] for r, x in zip(basis.entries, v)), basis.ncols + 1
    )
    return column_basis(extended) == column_basis(basis)
