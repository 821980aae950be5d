"""Polarizations, Hermitian forms and dual lattices.

Forms live in the ambient real coordinates ``(re, im)`` of ``C^g`` used by
:func:`realab.lattice.embed`. A Hermitian form ``H`` is stored through its
imaginary part ``E`` (a real alternating ``2g x 2g`` matrix commuting with
the complex structure ``J``); the real part is ``J^T E``.

A real-linear functional ``c . v`` on the ambient space is identified with
the anti-linear functional whose imaginary part it is. In those coordinates
the dual lattice is spanned by ``P^-T``, the dual involution is
``-theta^T`` and ``phi_H`` is the matrix ``E^T``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import (
    ExactMatrix,
    ExactScalar,
    SingularMatrix,
    is_positive_definite,
    is_positive_semidefinite,
    rational_nullspace,
)
from .lattice import (
    DescendedLattice,
    RealLattice,
    _block_diag,
    _require_real,
    complex_structure,
    embed,
    generators,
    split,
)


class NotThetaCompatible(ValueError):
    """Hermitian form whose imaginary part is nonzero on ``V0 x V0``."""


class NotIntegral(ValueError):
    """Imaginary part of a Hermitian form is not integral on the lattice."""


@dataclass(frozen=True)
class PolarizationForm:
    """Positive definite symmetric form ``S`` on ``V0``."""

    S: ExactMatrix

    def __post_init__(self):
        if not self.S.is_square() or not self.S.is_symmetric():
            raise ValueError("polarization form must be square and symmetric")
        if not is_positive_definite(self.S):
            raise ValueError("polarization form must be positive definite")

    @property
    def g(self) -> int:
        return self.S.nrows


@dataclass(frozen=True)
class HermitianForm:
    """Hermitian form on ``C^g`` given by its imaginary part ``E``."""

    E: ExactMatrix

    @classmethod
    def from_complex(cls, real: ExactMatrix, imag: ExactMatrix) -> HermitianForm:
        """From the complex matrix ``real + i*imag`` (real symmetric, imag alternating)."""
        return cls(ExactMatrix.block([[imag, -real], [real, imag]]))

    @property
    def g(self) -> int:
        return self.E.nrows // 2

    def real_part(self) -> ExactMatrix:
        return complex_structure(self.g, self.E.d).T @ self.E

    def is_hermitian(self) -> bool:
        J = complex_structure(self.g, self.E.d)
        return self.E.T == -self.E and J.T @ self.E @ J == self.E

    def is_positive_definite(self) -> bool:
        return self.is_hermitian() and is_positive_definite(self.real_part())

    def is_theta_compatible(self, theta: ExactMatrix) -> bool:
        """``conj H(theta v, theta w) = H(v, w)``, i.e. ``theta^T E theta = -E``."""
        return theta.T @ self.E @ theta == -self.E


# --------------------------------------------------------------------------
# integrality


def _xy_parts(L: RealLattice) -> tuple[ExactMatrix, ExactMatrix]:
    """Ambient real and imaginary parts of the lattice generators."""
    G = generators(L)
    g = L.g
    X = G.submatrix(range(g), range(2 * g))
    Y = L.F @ G.submatrix(range(g, 2 * g), range(2 * g))
    return X, Y


def integrality_matrix(L: RealLattice, S: ExactMatrix) -> ExactMatrix:
    """``S(y_j, x_k) - S(x_j, y_k)`` over pairs of lattice generators."""
    X, Y = _xy_parts(L)
    S = S.with_field(L.d)
    return Y.T @ S @ X - X.T @ S @ Y


def _as_matrix(S) -> ExactMatrix:
    return S.S if isinstance(S, PolarizationForm) else S


def verify_polarization(L: RealLattice, S: PolarizationForm | ExactMatrix) -> bool:
    _require_real(L)
    M = _as_matrix(S)
    if M.shape != (L.g, L.g):
        raise ValueError(f"form has shape {M.shape}, lattice has g = {L.g}")
    if not M.is_symmetric() or not is_positive_definite(M.with_field(L.d)):
        return False
    return integrality_matrix(L, M).is_integral()


def integral_scaling(L: RealLattice, S: ExactMatrix) -> int:
    """Least positive ``k`` with ``k S`` integral on ``L``; requires rational values."""
    Om = integrality_matrix(L, S)
    if not Om.is_rational():
        raise NotIntegral("integrality values have irrational parts")
    return Om.denominator()


# --------------------------------------------------------------------------
# Hermitian forms


def s_to_h(L: RealLattice, S: PolarizationForm | ExactMatrix) -> HermitianForm:
    M = _as_matrix(S).with_field(L.d)
    Z = ExactMatrix.zeros(L.g, L.g, L.d)
    return HermitianForm(ExactMatrix.block([[Z, -M], [M, Z]]))


def h_to_s(L: RealLattice, H: HermitianForm) -> ExactMatrix:
    g = L.g
    if H.E.shape != (2 * g, 2 * g) or not H.is_hermitian():
        raise ValueError("not the imaginary part of a Hermitian form")
    if not H.E.submatrix(range(g), range(g)).is_zero():
        raise NotThetaCompatible("imaginary part does not vanish on V0 x V0")
    return H.E.submatrix(range(g, 2 * g), range(g))


def symmetrize(L: RealLattice, H: HermitianForm) -> HermitianForm:
    """``H + conj H(theta., theta.)``: theta-compatible, still integral and positive."""
    D = embed(L)
    if not H.is_positive_definite():
        raise ValueError("input must be a positive definite Hermitian form")
    if not (D.P.T @ H.E @ D.P).is_integral():
        raise NotIntegral("imaginary part is not integral on the lattice")
    return HermitianForm(H.E - D.theta.T @ H.E @ D.theta)


# --------------------------------------------------------------------------
# admissible subspace


def _symmetric_unit(g: int, i: int, j: int, value, d) -> ExactMatrix:
    rows = [[0] * g for _ in range(g)]
    rows[i][j] = value
    rows[j][i] = value
    return ExactMatrix(rows, d)


def _sym_coordinates(g: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(g) for j in range(i, g)]


def _field_units(g: int, d: int | None) -> list[ExactMatrix]:
    """Q-basis of symmetric matrices over the field: rational units, then surd units."""
    units = [_symmetric_unit(g, i, j, 1, d) for i, j in _sym_coordinates(g)]
    if d is not None:
        w = ExactScalar.surd(d)
        units += [_symmetric_unit(g, i, j, w, d) for i, j in _sym_coordinates(g)]
    return units


def _combine(units: Sequence[ExactMatrix], coeffs: Sequence, g: int, d) -> ExactMatrix:
    out = ExactMatrix.zeros(g, g, d)
    for u, c in zip(units, coeffs):
        if c:
            out = out + u.scale(c)
    return out


def admissible_subspace(L: RealLattice) -> list[ExactMatrix]:
    """Q-basis of symmetric ``S`` whose integrality values are all rational."""
    _require_real(L)
    g, d = L.g, L.d
    units = _field_units(g, d)
    if d is None:
        return units
    n = 2 * g
    values = [integrality_matrix(L, u) for u in units]
    rows = [[v[i, j].b for v in values] for i in range(n) for j in range(n)]
    return [_combine(units, vec, g, d) for vec in rational_nullspace(rows, len(units))]


def orthogonal_complement(L: RealLattice, W: Sequence[ExactMatrix]) -> list[ExactMatrix]:
    """Q-basis of symmetric ``Q`` over the field with ``tr(Q w) = 0`` for all ``w`` in W."""
    g, d = L.g, L.d
    units = _field_units(g, d)
    rows = []
    for w in W:
        pairings = [(u @ w).trace() for u in units]
        rows.append([p.a for p in pairings])
        if d is not None:
            rows.append([p.b for p in pairings])
    return [_combine(units, vec, g, d) for vec in rational_nullspace(rows, len(units))]


# --------------------------------------------------------------------------
# deciding polarizability


@dataclass(frozen=True)
class PolarizabilityCertificate:
    """``verdict`` is ``"yes"`` (with ``S``), ``"no"`` (with ``Q``) or ``"unknown"``."""

    verdict: str
    S: PolarizationForm | None = None
    Q: ExactMatrix | None = None
    report: str = ""


def default_polarization(L: RealLattice) -> PolarizationForm:
    """``k (F F^T)^-1`` for rational ``F``, with ``k`` the least integral scaling."""
    _require_real(L)
    if not L.F.is_rational():
        raise ValueError("default polarization needs a rational period matrix")
    S = (L.F @ L.F.T).inverse()
    return PolarizationForm(S.scale(integral_scaling(L, S)))


def _yes(L: RealLattice, S: ExactMatrix, report: str) -> PolarizabilityCertificate:
    S = S.scale(integral_scaling(L, S))
    return PolarizabilityCertificate("yes", S=PolarizationForm(S), report=report)


def verify_certificate(L: RealLattice, cert: PolarizabilityCertificate) -> bool:
    """Exact re-check of a Yes or No certificate; Unknown never verifies."""
    if cert.verdict == "yes":
        return cert.S is not None and verify_polarization(L, cert.S)
    if cert.verdict == "no":
        Q = cert.Q
        if Q is None or Q.shape != (L.g, L.g) or not Q.is_symmetric() or Q.is_zero():
            return False
        Q = Q.with_field(L.d)
        if not is_positive_semidefinite(Q):
            return False
        return all(not (Q @ w).trace() for w in admissible_subspace(L))
    return False


def _rationalize(values: Sequence[float], max_den: int) -> list[Fraction]:
    return [Fraction(v).limit_denominator(max_den) for v in values]


_DENOMINATORS = (1, 2, 4, 8, 16, 64, 256, 1024, 10**4, 10**6)


def rank_one_directions(L: RealLattice) -> list[tuple[list[Fraction], ExactMatrix]]:
    """Rational ``v`` with ``s v v^T`` in ``W`` for some ``s > 0``, with that element.

    ``W`` is ``{S : S F rational}``, so a rank-one element forces ``v``
    rational and ``F^T v`` parallel to a rational vector. With
    ``F = F0 + w F1`` that means ``F1^T v = 0`` or ``(F0^T - lam F1^T) v = 0``
    for a rational ``lam``; candidates for ``lam`` come from the numerical
    pencil and are confirmed exactly.
    """
    import numpy as np
    import scipy.linalg

    g, d = L.g, L.d
    if d is None:
        return []
    F0t = [list(r) for r in zip(*L.F.rational_part())]
    F1t = [list(r) for r in zip(*L.F.surd_part())]
    w = ExactScalar.surd(d)
    out = []

    def add(vecs, scale: ExactScalar):
        for v in vecs:
            V = ExactMatrix([[x] for x in v], d)
            S = (V @ V.T).scale(scale if scale > 0 else -scale)
            out.append((v, S))

    add(rational_nullspace(F1t, g), ExactScalar(1, 0, d))
    A = np.array([[float(x) for x in r] for r in F0t])
    B = np.array([[float(x) for x in r] for r in F1t])
    seen = set()
    for lam in scipy.linalg.eigvals(A, B):
        if not np.isfinite(lam) or abs(lam.imag) > 1e-7 * max(1.0, abs(lam)):
            continue
        for den in _DENOMINATORS:
            q = Fraction(float(lam.real)).limit_denominator(den)
            if q in seen:
                continue
            seen.add(q)
            rows = [[a - q * b for a, b in zip(ra, rb)] for ra, rb in zip(F0t, F1t)]
            vecs = rational_nullspace(rows, g)
            if vecs:
                add(vecs, (w + q).inverse())
                break
    return out


def _rational_rank(vectors: Sequence[Sequence[Fraction]], g: int) -> int:
    if not vectors:
        return 0
    return g - len(rational_nullspace([list(v) for v in vectors], g))


def _sdp_primal(W: Sequence[ExactMatrix]):
    """Coefficients maximizing the least eigenvalue of ``sum c_i w_i`` in a box."""
    import cvxpy as cp
    import numpy as np

    mats = [np.array(w.to_float(), dtype=float) for w in W]
    g = mats[0].shape[0]
    c = cp.Variable(len(mats))
    t = cp.Variable()
    M = sum(c[i] * mats[i] for i in range(len(mats)))
    cons = [(M + M.T) / 2 - t * np.eye(g) >> 0, c <= 1, c >= -1]
    prob = cp.Problem(cp.Maximize(t), cons)
    try:
        prob.solve(solver=cp.CLARABEL)
    except cp.SolverError:
        return None, None
    if c.value is None:
        return None, None
    return float(t.value), list(c.value)


def _sdp_dual(C: Sequence[ExactMatrix], kernel: Sequence[Sequence[Fraction]] = ()):
    """Trace-one PSD combination of ``C``, least eigenvalue off ``kernel`` maximized."""
    import cvxpy as cp
    import numpy as np

    mats = [np.array(q.to_float(), dtype=float) for q in C]
    g = mats[0].shape[0]
    proj = np.eye(g)
    if kernel:
        K = np.array([[float(x) for x in v] for v in kernel]).T
        Qk, _ = np.linalg.qr(K)
        proj = proj - Qk @ Qk.T
    c = cp.Variable(len(mats))
    t = cp.Variable()
    M = sum(c[i] * mats[i] for i in range(len(mats)))
    cons = [(M + M.T) / 2 - t * proj >> 0, cp.trace(M) == 1]
    prob = cp.Problem(cp.Maximize(t), cons)
    try:
        prob.solve(solver=cp.CLARABEL)
    except cp.SolverError:
        return None
    if c.value is None or prob.status not in ("optimal", "optimal_inaccurate"):
        return None
    return list(c.value)


def _annihilating(L: RealLattice, C: Sequence[ExactMatrix], kernel) -> list[ExactMatrix]:
    """Rational combinations of ``C`` that vanish on every vector of ``kernel``."""
    if not kernel:
        return list(C)
    g, d = L.g, L.d
    rows = []
    for v in kernel:
        V = ExactMatrix([[x] for x in v], d)
        images = [q @ V for q in C]
        for i in range(g):
            rows.append([img[i, 0].a for img in images])
            if d is not None:
                rows.append([img[i, 0].b for img in images])
    return [_combine(C, vec, g, d) for vec in rational_nullspace(rows, len(C))]


def _is_separating(Q: ExactMatrix) -> bool:
    return not Q.is_zero() and is_positive_semidefinite(Q)


def decide_polarizable(L: RealLattice, budget: int = 200, seed: int = 0) -> PolarizabilityCertificate:
    """Exactly certified Yes / No, or Unknown once ``budget`` is spent.

    ``W`` meets the positive definite cone iff some polarization exists,
    since integrality is reached by a positive integer scaling. A No answer
    carries a nonzero PSD ``Q`` trace-orthogonal to ``W``.
    """
    _require_real(L)
    g, d = L.g, L.d
    if L.F.is_rational():
        return PolarizabilityCertificate("yes", S=default_polarization(L), report="rational periods")
    W = admissible_subspace(L)
    if not W:
        return PolarizabilityCertificate("no", Q=ExactMatrix.identity(g, d), report="empty admissible space")
    if g == 1:
        w = W[0]
        return _yes(L, w if w[0, 0] > 0 else -w, "one-dimensional")
    for i in range(g):
        if all(not w[i, i] for w in W):
            Q = _symmetric_unit(g, i, i, 1, d)
            return PolarizabilityCertificate("no", Q=Q, report=f"diagonal entry {i} vanishes on W")
    if all(not w.trace() for w in W):
        return PolarizabilityCertificate("no", Q=ExactMatrix.identity(g, d), report="W is traceless")

    for w in W:
        for cand in (w, -w):
            if is_positive_definite(cand):
                return _yes(L, cand, "basis element")
    directions = rank_one_directions(L)
    if _rational_rank([v for v, _ in directions], g) == g:
        S = ExactMatrix.zeros(g, g, d)
        for _, P in directions:
            S = S + P
        if is_positive_definite(S):
            return _yes(L, S, "sum of rank-one elements")
    complement = orthogonal_complement(L, W)
    for q in complement:
        for cand in (q, -q):
            if _is_separating(cand):
                return PolarizabilityCertificate("no", Q=cand, report="complement basis element")

    rng = random.Random(seed)
    span = 1
    for trial in range(budget):
        if trial and trial % 20 == 0:
            span += 1
        coeffs = [rng.randint(-span, span) for _ in W]
        S = _combine(W, coeffs, g, d)
        if S.is_zero():
            continue
        if is_positive_definite(S):
            return _yes(L, S, f"random search, trial {trial}")

    t, coeffs = _sdp_primal(W)
    if coeffs is not None and t is not None and t > 1e-9:
        for den in _DENOMINATORS:
            S = _combine(W, _rationalize(coeffs, den), g, d)
            if not S.is_zero() and is_positive_definite(S):
                return _yes(L, S, "rationalized semidefinite optimum")
    # a separating Q must vanish on every rank-one direction of W
    kernel = [v for v, _ in directions]
    face = _annihilating(L, complement, kernel)
    for basis, label in ((face, "rationalized dual optimum on a face"), (complement, "rationalized dual optimum")):
        if not basis:
            continue
        qc = _sdp_dual(basis, kernel if basis is face else ())
        if qc is None:
            continue
        for den in _DENOMINATORS:
            Q = _combine(basis, _rationalize(qc, den), g, d)
            if _is_separating(Q):
                return PolarizabilityCertificate("no", Q=Q, report=label)
    return PolarizabilityCertificate(
        "unknown", report=f"no certificate after {budget} random trials and semidefinite rounding"
    )


# --------------------------------------------------------------------------
# duals


def dual_descended(D: DescendedLattice) -> DescendedLattice:
    """Anti-linear functionals with integral imaginary part, with ``-theta^T``."""
    return DescendedLattice(D.g, D.P.inverse().T, -D.theta.T, D.d)


def dual_lattice(L: RealLattice) -> tuple[RealLattice, ExactMatrix]:
    """Split form of the dual and the witness into the dual's ambient coordinates."""
    _require_real(L)
    return split(dual_descended(embed(L)))


def bidual_witness(L: RealLattice) -> tuple[RealLattice, ExactMatrix]:
    """``(L'', U)`` with ``U`` carrying ``L''`` isomorphically onto ``L``.

    Returns ``U`` as the ``g x g`` real block of the ambient map
    ``W1^-T W2`` composed from the two split witnesses.
    """
    L1, W1 = dual_lattice(L)
    L2, W2 = dual_lattice(L1)
    A = W1.inverse().T @ W2
    g = L.g
    U = A.submatrix(range(g), range(g))
    if A != _block_diag(U, U):
        raise AssertionError("bidual map does not preserve the real structure")
    return L2, U


def phi_matrix(H: HermitianForm) -> ExactMatrix:
    """``v -> H(v, .)`` in dual coordinates."""
    return H.E.T


def _as_hermitian(L: RealLattice, form) -> HermitianForm:
    return form if isinstance(form, HermitianForm) else s_to_h(L, form)


def descent_compatible(L: RealLattice, form: PolarizationForm | ExactMatrix | HermitianForm) -> bool:
    """``phi_H theta = theta_hat phi_H`` as an exact matrix identity."""
    H = _as_hermitian(L, form)
    D = embed(L)
    if H.E.shape != D.theta.shape:
        raise ValueError("form and lattice dimensions differ")
    phi = phi_matrix(H)
    return phi @ D.theta == dual_descended(D).theta @ phi


def phi_maps_into_dual(L: RealLattice, form: PolarizationForm | ExactMatrix | HermitianForm) -> bool:
    """Every generator's image under ``phi_H`` lies in the split dual lattice."""
    H = _as_hermitian(L, form)
    D = embed(L)
    Ld, Wd = dual_lattice(L)
    images = phi_matrix(H) @ D.P
    try:
        coords = embed(Ld).P.solve(Wd.solve(images))
    except SingularMatrix:
        return False
    return coords.is_integral()
