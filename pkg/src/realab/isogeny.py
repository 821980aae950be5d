"""Imaginary isogenies between real lattices and one-dimensional normal forms.

An imaginary isogeny in split frames is an integer matrix ``U`` with
``det U = +-1`` (so it carries ``Lambda_+`` onto ``Lambda_+'``) such that
``F'^-1 U F`` is rational. Glue is irrelevant because ``Lambda_+ + Lambda_-``
has finite index in the lattice, so both span the same Q-space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import lcm

from .exact import (
    ExactMatrix,
    IntMatrix,
    integer_kernel,
    rational_nullspace,
)
from .exact.scalar import join_fields
from .lattice import IncompatibleLattices, RealLattice, _require_real


@dataclass(frozen=True)
class IsogenyWitness:
    U: IntMatrix

    def __post_init__(self):
        if self.U.nrows != self.U.ncols or abs(self.U.det()) != 1:
            raise ValueError("isogeny witness must be unimodular")

    def inverse(self) -> IsogenyWitness:
        return IsogenyWitness(ExactMatrix.from_int(self.U).inverse().to_int())


@dataclass(frozen=True)
class Decision:
    """``verdict`` in ``{"yes", "no", "unknown"}``; Yes carries a witness."""

    verdict: str
    witness: IsogenyWitness | None = None
    certificate: str = ""
    report: str = ""


def _check_pair(L1: RealLattice, L2: RealLattice) -> int | None:
    _require_real(L1)
    _require_real(L2)
    if L1.g != L2.g:
        raise IncompatibleLattices(f"dimensions differ: {L1.g} and {L2.g}")
    return join_fields(L1.d, L2.d)


def verify_imaginary_isogeny(L1: RealLattice, L2: RealLattice, w: IsogenyWitness | IntMatrix) -> bool:
    d = _check_pair(L1, L2)
    U = w.U if isinstance(w, IsogenyWitness) else w
    if U.shape != (L1.g, L1.g) or abs(U.det()) != 1:
        return False
    F1, F2 = L1.F.with_field(d), L2.F.with_field(d)
    return F2.solve(ExactMatrix.from_int(U, d) @ F1).is_rational()


def rational_solution_constraints(L1: RealLattice, L2: RealLattice) -> list[list]:
    """Rows of the linear system ``surd(F2^-1 U F1) = 0`` in the entries of ``U``."""
    d = _check_pair(L1, L2)
    g = L1.g
    if d is None:
        return []
    F1, F2inv = L1.F.with_field(d), L2.F.with_field(d).inverse()
    images = []
    for i, j in itertools.product(range(g), repeat=2):
        unit = IntMatrix([[int((r, c) == (i, j)) for c in range(g)] for r in range(g)])
        images.append((F2inv @ ExactMatrix.from_int(unit, d) @ F1).surd_part())
    return [[img[r][c] for img in images] for r in range(g) for c in range(g)]


def rational_solution_space(L1: RealLattice, L2: RealLattice) -> list[list]:
    """Q-basis of the ``U`` (flattened row-major) mapping ``Q M1`` into ``Q M2``."""
    g = L1.g
    rows = rational_solution_constraints(L1, L2)
    return rational_nullspace(rows, g * g)


def integer_solutions(L1: RealLattice, L2: RealLattice) -> IntMatrix:
    """Z-basis (columns, flattened ``U``) of the integer points of the solution space."""
    g = L1.g
    rows = rational_solution_constraints(L1, L2)
    if not rows:
        return IntMatrix.identity(g * g)
    cleared = []
    for r in rows:
        den = lcm(*(x.denominator for x in r))
        cleared.append([int(x * den) for x in r])
    return integer_kernel(IntMatrix(cleared, g * g))


def _as_matrix(vec, g: int) -> IntMatrix:
    return IntMatrix([vec[i * g:(i + 1) * g] for i in range(g)], g)


def _shell(k: int, m: int):
    """Coefficient vectors of length ``m`` with sup-norm exactly ``k``."""
    for c in itertools.product(range(-k, k + 1), repeat=m):
        if max(abs(x) for x in c) == k:
            yield c


def _ordered(L1: RealLattice, L2: RealLattice) -> bool:
    key = lambda L: ([x.literal() for row in L.F.tolist() for x in row], str(L.glue))
    return key(L1) <= key(L2)


def decide_imaginary_isogeny(L1: RealLattice, L2: RealLattice, budget: int = 2000) -> Decision:
    """Exact for ``g = 1``; for larger ``g`` Unknown after ``budget`` candidates."""
    _check_pair(L1, L2)
    if not _ordered(L1, L2):
        dec = _decide(L2, L1, budget)
        if dec.witness is not None:
            return Decision(dec.verdict, dec.witness.inverse(), dec.certificate, dec.report)
        return dec
    return _decide(L1, L2, budget)


def _decide(L1: RealLattice, L2: RealLattice, budget: int) -> Decision:
    g = L1.g
    space = rational_solution_space(L1, L2)
    if not space:
        cert = "ratio-test" if g == 1 else "solution-space-zero"
        return Decision("no", certificate=cert, report="no rational map between the imaginary parts")
    if g == 1:
        return Decision("yes", IsogenyWitness(IntMatrix([[1]])), "ratio-test", "ratio is rational")
    identity = IntMatrix.identity(g)
    if verify_imaginary_isogeny(L1, L2, identity):
        return Decision("yes", IsogenyWitness(identity), "unimodular-witness", "identity map")
    basis = integer_solutions(L1, L2).columns()
    m = len(basis)
    tried = 1
    k = 1
    while tried < budget:
        for coeffs in _shell(k, m):
            if tried >= budget:
                break
            tried += 1
            vec = [sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(g * g)]
            U = _as_matrix(vec, g)
            if abs(U.det()) == 1:
                return Decision(
                    "yes", IsogenyWitness(U), "unimodular-witness", f"found after {tried} candidates"
                )
        k += 1
        if m == 0:
            break
    return Decision(
        "unknown",
        report=f"solution space of dimension {m}; no unimodular point among {tried} candidates",
    )


# --------------------------------------------------------------------------
# dimension one


@dataclass(frozen=True)
class NormalForm1D:
    kind: str
    alpha: object

    def __str__(self) -> str:
        return f"{self.kind}({self.alpha.literal()})"


def normal_form_1d(L: RealLattice) -> NormalForm1D:
    _require_real(L)
    if L.g != 1:
        raise ValueError(f"normal form is only defined for g = 1, got g = {L.g}")
    f = abs(L.F[0, 0])
    if L.glue.dim == 0:
        return NormalForm1D("rectangular", f)
    return NormalForm1D("diamond", f / 2)


# --------------------------------------------------------------------------
# corpus classification


@dataclass
class Classification:
    classes: list[list[int]]
    decisions: dict[tuple[int, int], Decision] = field(default_factory=dict)

    @property
    def unknown_pairs(self) -> list[tuple[int, int]]:
        return [p for p, dec in sorted(self.decisions.items()) if dec.verdict == "unknown"]


def classify_corpus(lattices: list[RealLattice], budget: int = 2000) -> Classification:
    """Union-find over certified Yes decisions; the partition refines the true one."""
    n = len(lattices)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    decisions = {}
    for i in range(n):
        for j in range(i + 1, n):
            dec = decide_imaginary_isogeny(lattices[i], lattices[j], budget)
            decisions[(i, j)] = dec
            if dec.verdict == "yes":
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return Classification(sorted(groups.values()), decisions)
