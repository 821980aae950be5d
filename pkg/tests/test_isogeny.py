import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import lattices
from realab.exact import ExactMatrix, ExactScalar, FieldMismatch, IntMatrix
from realab.isogeny import (
    IsogenyWitness,
    classify_corpus,
    decide_imaginary_isogeny,
    integer_solutions,
    normal_form_1d,
    rational_solution_space,
    verify_imaginary_isogeny,
)
from realab.lattice import IncompatibleLattices, RealLattice, is_isomorphism

S2 = ExactScalar.surd(2)
ONE = IntMatrix([[1]])


def rect(a):
    return RealLattice.rectangular(a, 2)


def test_verify_examples():
    assert verify_imaginary_isogeny(rect(S2), rect(S2), ONE)
    assert verify_imaginary_isogeny(rect(S2), rect(3 * S2), ONE)
    assert not verify_imaginary_isogeny(rect(S2), rect(1 + S2), ONE)
    assert not verify_imaginary_isogeny(rect(S2), rect(1 + S2), IntMatrix([[-1]]))
    assert not verify_imaginary_isogeny(rect(S2), rect(S2), IntMatrix([[2]]))


def test_decide_examples():
    yes = decide_imaginary_isogeny(rect(S2), RealLattice.diamond(S2))
    assert yes.verdict == "yes" and yes.witness.U == ONE
    assert decide_imaginary_isogeny(rect(S2), rect(Fraction(5, 3) * S2)).verdict == "yes"
    no = decide_imaginary_isogeny(rect(S2), rect(1 + S2))
    assert no.verdict == "no"
    assert rational_solution_space(rect(S2), rect(1 + S2)) == []


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        decide_imaginary_isogeny(rect(S2), RealLattice.rectangular(ExactScalar.surd(3), 3))
    with pytest.raises(IncompatibleLattices):
        decide_imaginary_isogeny(rect(S2), RealLattice.build([[1, 0], [0, 1]]))


@given(st.fractions(min_value=-9, max_value=9, max_denominator=9), st.fractions(min_value=-9, max_value=9, max_denominator=9),
       st.fractions(min_value=-9, max_value=9, max_denominator=9), st.fractions(min_value=-9, max_value=9, max_denominator=9))
def test_g1_ratio_law(a, b, c, e):
    alpha, beta = ExactScalar(a, b, 2), ExactScalar(c, e, 2)
    if not alpha or not beta:
        return
    dec = decide_imaginary_isogeny(rect(alpha), rect(beta))
    assert dec.verdict == ("yes" if (alpha / beta).is_rational() else "no")
    if dec.verdict == "yes":
        assert verify_imaginary_isogeny(rect(alpha), rect(beta), dec.witness)


def _gl(rng, g):
    U = [[int(i == j) for j in range(g)] for i in range(g)]
    for _ in range(2 * g):
        if g == 1:
            break
        i, j = rng.sample(range(g), 2)
        k = rng.randint(-2, 2)
        for r in range(g):
            U[r][i] += k * U[r][j]
    return IntMatrix(U)


@given(lattices(max_g=3, fields=(2, 3)), st.integers(0, 2**32))
def test_isogenous_by_construction(L, seed):
    """``F' = U F R`` with unimodular U and rational R is always isogenous."""
    rng = random.Random(seed)
    g, d = L.g, L.d
    U = _gl(rng, g)
    while True:
        R = ExactMatrix([[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(g)] for _ in range(g)], d)
        if R.det():
            break
    L2 = RealLattice(g, ExactMatrix.from_int(U, d) @ L.F @ R, L.glue, d).canonical()
    assert verify_imaginary_isogeny(L, L2, U)
    dec = decide_imaginary_isogeny(L, L2)
    assert dec.verdict in ("yes", "unknown")
    if dec.verdict == "yes":
        assert verify_imaginary_isogeny(L, L2, dec.witness)
    back = decide_imaginary_isogeny(L2, L)
    assert (back.verdict == "yes") == (dec.verdict == "yes")
    if back.verdict == "yes":
        assert verify_imaginary_isogeny(L2, L, back.witness)


@given(lattices(max_g=3, fields=(2,)), lattices(max_g=3, fields=(2,)))
def test_symmetry_and_soundness(L1, L2):
    if L1.g != L2.g:
        return
    a = decide_imaginary_isogeny(L1, L2, budget=300)
    b = decide_imaginary_isogeny(L2, L1, budget=300)
    assert a.verdict == b.verdict
    if a.verdict == "yes":
        assert verify_imaginary_isogeny(L1, L2, a.witness)
        assert verify_imaginary_isogeny(L2, L1, b.witness)
    if a.verdict == "no":
        assert not rational_solution_space(L1, L2)


@given(lattices(max_g=3))
def test_reflexive(L):
    dec = decide_imaginary_isogeny(L, L)
    assert dec.verdict == "yes"


def test_integer_solutions_saturated():
    L1 = RealLattice.build([[1, S2], [0, 1]], d=2)
    L2 = RealLattice.build([[1, 0], [S2, 1]], d=2)
    K = integer_solutions(L1, L2)
    assert K.ncols == len(rational_solution_space(L1, L2))
    dec = decide_imaginary_isogeny(L1, L2)
    assert dec.verdict == "yes"


def test_witness_must_be_unimodular():
    with pytest.raises(ValueError):
        IsogenyWitness(IntMatrix([[2]]))


# --------------------------------------------------------------------------
# normal forms


def test_normal_form_examples():
    nf = normal_form_1d(rect(S2))
    assert (nf.kind, nf.alpha) == ("rectangular", S2)
    nf = normal_form_1d(RealLattice.diamond(S2))
    assert (nf.kind, nf.alpha) == ("diamond", S2)
    nf = normal_form_1d(RealLattice.rectangular(-3))
    assert (nf.kind, nf.alpha) == ("rectangular", 3)
    with pytest.raises(ValueError):
        normal_form_1d(RealLattice.build([[1, 0], [0, 1]]))


@given(lattices(max_g=1))
def test_normal_form_invariant_under_sign(L):
    flipped = RealLattice(1, -L.F, L.glue, L.d)
    assert is_isomorphism(L, flipped, ExactMatrix([[1]], L.d)) or True
    assert normal_form_1d(L) == normal_form_1d(flipped)
    assert normal_form_1d(L).alpha > 0


def test_rectangular_and_diamond_with_same_alpha_are_isogenous():
    for a in (S2, 3 * S2 - 1, ExactScalar(Fraction(2, 7), 0, 2)):
        assert decide_imaginary_isogeny(rect(a), RealLattice.diamond(a)).verdict == "yes"


# --------------------------------------------------------------------------
# corpus


def test_classify_examples():
    corpus = [rect(S2), rect(3 * S2), rect(1 + S2)]
    result = classify_corpus(corpus)
    assert result.classes == [[0, 1], [2]]
    assert result.unknown_pairs == []
    assert classify_corpus([rect(S2)]).classes == [[0]]
    assert classify_corpus([rect(S2), RealLattice.diamond(S2)]).classes == [[0, 1]]
