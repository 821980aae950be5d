"""Real lattices in split coordinates and descended complex lattices.

A :class:`RealLattice` of dimension ``g`` is stored in the frame where the
real part ``V0`` is ``R^g`` and ``Lambda_+ = Z^g``. A point of the complex
space is written ``x + i F y``; ``(x, y)`` are the *xy coordinates* and
``Lambda_+ + Lambda_- = Z^{2g}`` in them. The glue group records which
half-integral points ``(a + i F b) / 2`` with bit vectors ``(a|b)`` also
belong to the lattice.

Ambient coordinates of a complex vector space ``V = C^g`` are the real
vector ``(re, im)`` of length ``2g``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence

from .exact import (
    ExactMatrix,
    ExactScalar,
    IntMatrix,
    SingularMatrix,
    check_discriminant,
    f2,
    hnf,
    integer_kernel,
    lattice_intersect,
)
from .exact.intmat import hnf_rows


class InvalidLattice(ValueError):
    """Raised when an operation receives a lattice failing validation."""

    def __init__(self, codes: Sequence[str]):
        self.codes = list(codes)
        super().__init__(", ".join(self.codes))


class IncompatibleLattices(ValueError):
    pass


def complex_structure(g: int, d: int | None = None) -> ExactMatrix:
    """Multiplication by ``i`` in ambient ``(re, im)`` coordinates."""
    I = ExactMatrix.identity(g, d)
    Z = ExactMatrix.zeros(g, g, d)
    return ExactMatrix.block([[Z, -I], [I, Z]])


def standard_involution(g: int, d: int | None = None) -> ExactMatrix:
    """Complex conjugation ``diag(I, -I)``."""
    I = ExactMatrix.identity(g, d)
    Z = ExactMatrix.zeros(g, g, d)
    return ExactMatrix.block([[I, Z], [Z, -I]])


def _block_diag(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    return ExactMatrix.block(
        [[A, ExactMatrix.zeros(A.nrows, B.ncols, A.d)], [ExactMatrix.zeros(B.nrows, A.ncols, B.d), B]]
    )


@dataclass(frozen=True)
class GlueGroup:
    """Subgroup of ``F_2^{2g}``; first ``g`` bits are x, last ``g`` are y."""

    g: int
    basis: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        n = 2 * self.g
        for v in self.basis:
            if len(v) != n or any(b not in (0, 1) for b in v):
                raise ValueError(f"glue vector {v!r} is not a bit vector of length {n}")
        reduced = f2.rref(f2.pack(v) for v in self.basis)
        object.__setattr__(self, "basis", tuple(f2.unpack(m, n) for m in reduced))

    @classmethod
    def trivial(cls, g: int) -> GlueGroup:
        return cls(g, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def masks(self) -> list[int]:
        return [f2.pack(v) for v in self.basis]

    def x_rank(self) -> int:
        return f2.rank(f2.pack(v[: self.g]) for v in self.basis)

    def y_rank(self) -> int:
        return f2.rank(f2.pack(v[self.g :]) for v in self.basis)

    def elements(self) -> list[tuple[int, ...]]:
        return [f2.unpack(m, 2 * self.g) for m in f2.span(self.masks())]

    def __str__(self) -> str:
        g = self.g
        items = (
            "".join(map(str, v[:g])) + "|" + "".join(map(str, v[g:])) for v in self.basis
        )
        return "[" + ", ".join(items) + "]"


@dataclass(frozen=True)
class RealLattice:
    """Split normal form ``(g, field, F, glue)`` of a real lattice."""

    g: int
    F: ExactMatrix
    glue: GlueGroup
    d: int | None = None

    def __post_init__(self):
        check_discriminant(self.d)
        if self.d is None and self.F.d is not None:
            object.__setattr__(self, "d", self.F.d)
        else:
            object.__setattr__(self, "F", self.F.with_field(self.d))

    @classmethod
    def build(cls, F: Sequence[Sequence], glue: Iterable[Sequence[int]] = (), d: int | None = None) -> RealLattice:
        Fm = F if isinstance(F, ExactMatrix) else ExactMatrix(F, d)
        g = Fm.nrows
        return cls(g, Fm, GlueGroup(g, tuple(tuple(v) for v in glue)), d)

    @classmethod
    def rectangular(cls, alpha, d: int | None = None) -> RealLattice:
        """``Z + i*alpha*Z``."""
        return cls.build([[alpha]], (), d)

    @classmethod
    def diamond(cls, alpha, d: int | None = None) -> RealLattice:
        """``Z + (1/2 + i*alpha)Z``: imaginary part ``2*alpha*Z``, glue ``(1|1)``."""
        return cls.build([[ExactScalar.coerce(alpha, d) * 2]], [(1, 1)], d)

    def canonical(self) -> RealLattice:
        """Same lattice with the canonical basis of ``Lambda_-``."""
        F, V = canonical_f_basis(self.F)
        if V == IntMatrix.identity(self.g):
            return self
        Vinv = ExactMatrix.from_int(V).inverse().to_int()
        g = self.g
        glue = []
        for v in self.glue.basis:
            y = [sum(Vinv[i, k] * v[g + k] for k in range(g)) % 2 for i in range(g)]
            glue.append(tuple(v[:g]) + tuple(y))
        return RealLattice(g, F, GlueGroup(g, tuple(glue)), self.d)

    def is_rational(self) -> bool:
        return self.F.is_rational()


# --------------------------------------------------------------------------
# validation


def check_real(L: RealLattice) -> list[str]:
    """Diagnostic codes for ``L``; empty when the lattice is valid."""
    codes = []
    if L.g < 1:
        return ["bad-dimension"]
    if L.F.shape != (L.g, L.g):
        return ["bad-F-shape"]
    if L.F.d is not None and L.d != L.F.d:
        codes.append("field-mismatch")
    if not L.F.det():
        codes.append("singular-F")
    if L.glue.g != L.g:
        codes.append("glue-dimension")
        return codes
    # G ∩ X = 0 iff projecting G to its y bits is injective, and vice versa
    if L.glue.y_rank() != L.glue.dim:
        codes.append("glue-meets-x")
    if L.glue.x_rank() != L.glue.dim:
        codes.append("glue-meets-y")
    return codes


def validate_real(L: RealLattice) -> bool:
    return not check_real(L)


def _require_real(L: RealLattice) -> None:
    codes = check_real(L)
    if codes:
        raise InvalidLattice(codes)


# --------------------------------------------------------------------------
# bases


def upper_column_basis(vectors: Iterable[Sequence[int]], n: int) -> list[list[int]]:
    """Canonical basis of a full-rank lattice in ``Z^n`` as an upper triangular
    column matrix: basis vector ``j`` has its last nonzero coordinate at ``j``.

    Row HNF with the coordinate order reversed; the x block therefore comes
    out as the identity whenever the lattice meets ``Z^g x 0`` in ``Z^g``.
    """
    rows = hnf_rows([list(v)[::-1] for v in vectors], n)
    if len(rows) != n:
        raise ValueError("generators do not span a full-rank lattice")
    return [r[::-1] for r in reversed(rows)]


@lru_cache(maxsize=4096)
def generators(L: RealLattice) -> ExactMatrix:
    """Z-basis of the lattice as columns in xy coordinates (entries in ½Z)."""
    _require_real(L)
    n = 2 * L.g
    doubled = [[2 * (i == j) for j in range(n)] for i in range(n)]
    doubled += [list(v) for v in L.glue.basis]
    cols = upper_column_basis(doubled, n)
    half = Fraction(1, 2)
    return ExactMatrix(([c[i] * half for c in cols] for i in range(n)), L.d, n)


@lru_cache(maxsize=4096)
def xy_theta(L: RealLattice) -> IntMatrix:
    """Matrix of the involution on the lattice basis :func:`generators`.

    The involution is ``diag(I, -I)`` in xy coordinates; since the ambient
    frame differs from the xy frame by ``diag(I, F)``, which commutes with it,
    this equals ``P^-1 theta P`` for ``embed(L)`` without touching ``F``.
    """
    G0 = generators(L)
    return G0.solve(standard_involution(L.g, L.d) @ G0).to_int()


def canonical_f_basis(F: ExactMatrix) -> tuple[ExactMatrix, IntMatrix]:
    """Canonical basis of the lattice spanned by F's columns.

    Columns are mapped injectively into ``Q^{2g}`` by splitting each entry
    into rational and surd parts; the row HNF of those vectors picks the
    basis. Returns ``(F @ V, V)`` with ``V`` unimodular.
    """
    g = F.nrows
    vecs = []
    for j in range(F.ncols):
        col = F.column(j)
        v = [x.a for x in col]
        if F.d is not None:
            v += [x.b for x in col]
        vecs.append(v)
    den = 1
    for v in vecs:
        for x in v:
            den = lcm(den, x.denominator)
    H, U = hnf(IntMatrix([[int(x * den) for x in v] for v in vecs]))
    V = U.T
    d = F.d
    cols = []
    for row in H.entries:
        if F.d is None:
            cols.append([ExactScalar(Fraction(row[i], den), 0, d) for i in range(g)])
        else:
            cols.append(
                [ExactScalar(Fraction(row[i], den), Fraction(row[g + i], den), d) for i in range(g)]
            )
    Fc = ExactMatrix(([c[i] for c in cols] for i in range(g)), d, F.ncols)
    return Fc, V


# --------------------------------------------------------------------------
# descended lattices


@dataclass(frozen=True)
class DescendedLattice:
    """``(V, Lambda, theta)`` with ``V = C^g`` in ambient real coordinates.

    ``P`` holds lattice generators as columns; ``theta`` is the anti-linear
    involution as a real ``2g x 2g`` matrix.
    """

    g: int
    P: ExactMatrix
    theta: ExactMatrix
    d: int | None = None

    def __post_init__(self):
        d = self.d
        for m in (self.P, self.theta):
            if m.d is not None:
                d = m.d if d is None else d
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "P", self.P.with_field(d))
        object.__setattr__(self, "theta", self.theta.with_field(d))

    def lattice_theta(self) -> IntMatrix:
        """``P^-1 theta P``; raises if the lattice is not theta-stable."""
        T = self.P.solve(self.theta @ self.P)
        if not T.is_integral():
            raise InvalidLattice(["lattice-not-stable"])
        return T.to_int()


def check_descended(D: DescendedLattice) -> list[str]:
    n = 2 * D.g
    if D.g < 1 or D.P.shape != (n, n) or D.theta.shape != (n, n):
        return ["bad-shape"]
    codes = []
    if not D.P.det():
        return ["singular-P"]
    J = complex_structure(D.g, D.d)
    if D.theta @ J != -(J @ D.theta):
        codes.append("theta-not-antilinear")
    if D.theta @ D.theta != ExactMatrix.identity(n, D.d):
        codes.append("theta-not-involution")
    if codes:
        return codes
    T = D.P.solve(D.theta @ D.P)
    if not T.is_integral():
        codes.append("lattice-not-stable")
    elif abs(T.to_int().det()) != 1:
        codes.append("theta-not-unimodular")
    return codes


def embed(L: RealLattice) -> DescendedLattice:
    """Ambient presentation: generators ``(x, F y)``, conjugation as involution."""
    _require_real(L)
    g = L.g
    P = _block_diag(ExactMatrix.identity(g, L.d), L.F) @ generators(L)
    return DescendedLattice(g, P, standard_involution(g, L.d), L.d)


def split(D: DescendedLattice) -> tuple[RealLattice, ExactMatrix]:
    """Split normal form of ``D`` and the ambient witness.

    The witness ``W`` is the complex-linear map from the ambient space of
    ``embed(L)`` to the ambient space of ``D``; it carries one lattice onto
    the other and intertwines the involutions.
    """
    codes = check_descended(D)
    if codes:
        raise InvalidLattice(codes)
    g, d = D.g, D.d
    n = 2 * g
    T = D.lattice_theta()
    I = IntMatrix.identity(n)
    Kp = integer_kernel(T - I)
    Km = integer_kernel(T + I)
    # fixed and anti-fixed parts of an anti-linear involution both have rank g
    assert Kp.ncols == g and Km.ncols == g, (Kp.ncols, Km.ncols)
    J = complex_structure(g, d)
    E = D.P @ Kp
    f = -(J @ (D.P @ Km))
    F_raw = E.solve(f)
    # 2v = (v + Tv) + (v - Tv) splits each generator over Lambda_+ (+) Lambda_-
    A = ExactMatrix.from_int(Kp, d).solve(ExactMatrix.from_int(I + T, d)).to_int()
    B = ExactMatrix.from_int(Km, d).solve(ExactMatrix.from_int(I - T, d)).to_int()
    glue = [
        tuple(A[i, j] % 2 for i in range(g)) + tuple(B[i, j] % 2 for i in range(g))
        for j in range(n)
    ]
    L = RealLattice(g, F_raw, GlueGroup(g, tuple(glue)), d).canonical()
    W = ExactMatrix.block([[E, J @ E]])
    return L, W


def verify_split_witness(D: DescendedLattice, L: RealLattice, W: ExactMatrix) -> bool:
    """``W`` maps embed(L)'s lattice onto D's and intertwines the involutions."""
    Dl = embed(L)
    try:
        C = D.P.solve(W @ Dl.P)
    except SingularMatrix:
        return False
    if not C.is_integral() or abs(C.to_int().det()) != 1:
        return False
    J = complex_structure(L.g, L.d)
    return W @ Dl.theta == D.theta @ W and W @ J == J @ W


def is_isomorphism(L1: RealLattice, L2: RealLattice, U: ExactMatrix) -> bool:
    """``U`` (real-linear on V0, e-coordinates) complexifies to ``Lambda1 -> Lambda2`` onto."""
    if L1.g != L2.g or U.shape != (L1.g, L1.g):
        return False
    phi = _block_diag(U, U)
    P1, P2 = embed(L1).P, embed(L2).P
    try:
        C = P2.solve(phi @ P1)
    except SingularMatrix:
        return False
    return C.is_integral() and abs(C.to_int().det()) == 1


def in_lattice_xy(L: RealLattice, v: Sequence) -> bool:
    """Membership of an xy-coordinate vector in the lattice."""
    col = ExactMatrix([[x] for x in v], L.d)
    return generators(L).solve(col).is_integral()


# --------------------------------------------------------------------------
# refinement


def common_refinement(L1: RealLattice, L2: RealLattice) -> RealLattice:
    """``Lambda1 ∩ Lambda2`` for lattices sharing ``Lambda_+`` and ``Q Lambda``."""
    _require_real(L1)
    _require_real(L2)
    if L1.g != L2.g or L1.d != L2.d:
        raise IncompatibleLattices("lattices differ in dimension or field")
    g, d = L1.g, L1.d
    n = 2 * g
    R = L1.F.solve(L2.F)
    if not R.is_rational():
        raise IncompatibleLattices("imaginary parts span different Q-spaces")
    I = ExactMatrix.identity(g, d)
    G1 = generators(L1)
    G2 = _block_diag(I, R) @ generators(L2)
    den = lcm(G1.denominator(), G2.denominator())
    A = G1.scale(den).to_int()
    B = G2.scale(den).to_int()
    C = lattice_intersect(A, B)
    cols = upper_column_basis(C.columns(), n)
    basis = ExactMatrix(([Fraction(c[i], den) for c in cols] for i in range(n)), d, n)
    P = _block_diag(I, L1.F) @ basis
    L, W = split(DescendedLattice(g, P, standard_involution(g, d), d))
    assert W == ExactMatrix.identity(n, d)
    return L
