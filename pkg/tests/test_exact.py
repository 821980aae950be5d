from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from realab.exact import (
    ExactMatrix,
    ExactScalar,
    FieldMismatch,
    IntMatrix,
    SingularMatrix,
    charpoly,
    column_basis,
    f2,
    hnf,
    in_lattice,
    integer_kernel,
    invariant_factors,
    is_positive_definite,
    is_positive_semidefinite,
    lattice_intersect,
    rational_nullspace,
    snf,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
discriminants = st.sampled_from([2, 3, 5, 6, 7, 10, 11, 13])
small_ints = st.integers(-9, 9)


def int_matrices(min_rows=1, max_rows=4, min_cols=1, max_cols=4):
    return st.integers(min_rows, max_rows).flatmap(
        lambda m: st.integers(min_cols, max_cols).flatmap(
            lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


def _mp(x: ExactScalar):
    mpmath.mp.dps = 60
    if x.d is None:
        return mpmath.mpf(x.a.numerator) / x.a.denominator
    return mpmath.mpf(x.a.numerator) / x.a.denominator + mpmath.mpf(x.b.numerator) / x.b.denominator * mpmath.sqrt(x.d)


# --------------------------------------------------------------------------
# scalars


def test_scalar_sign_examples():
    s2 = ExactScalar.surd(2)
    assert (1 - s2).sign() == -1
    assert (ExactScalar(3, 0, 2) - 2 * s2).sign() == 1
    assert (ExactScalar(0, 0, 2)).sign() == 0
    assert ExactScalar(Fraction(7, 5), 0, 2) < s2 < ExactScalar(Fraction(3, 2), 0, 2)


@given(fractions, fractions, discriminants)
def test_scalar_sign_matches_high_precision(a, b, d):
    x = ExactScalar(a, b, d)
    v = _mp(x)
    expected = 0 if v == 0 else (1 if v > 0 else -1)
    assert x.sign() == expected


@given(fractions, fractions, fractions, fractions, discriminants)
def test_field_axioms(a, b, c, e, d):
    x, y = ExactScalar(a, b, d), ExactScalar(c, e, d)
    assert x * y == y * x
    assert (x + y) - y == x
    if y:
        assert (x / y) * y == x
    assert x.norm() == (x * x.conjugate()).a


def test_mixing_fields_raises():
    with pytest.raises(FieldMismatch):
        ExactScalar.surd(2) + ExactScalar.surd(3)


@pytest.mark.parametrize("d", [0, 1, 4, 12, -3])
def test_bad_discriminant(d):
    with pytest.raises(ValueError):
        ExactScalar(1, 1, d)


def test_literal_forms():
    assert ExactScalar(Fraction(-3, 4)).literal() == "-3/4"
    assert ExactScalar(0, 1, 2).literal() == "0/1 + 1/1 w"
    assert ExactScalar(1, Fraction(-1, 2), 5).literal() == "1/1 - 1/2 w"


# --------------------------------------------------------------------------
# integer normal forms


def test_hnf_example():
    H, U = hnf(IntMatrix([[2, 4], [6, 8]]))
    assert H == IntMatrix([[2, 0], [0, 4]])
    assert U @ IntMatrix([[2, 4], [6, 8]]) == H
    assert abs(U.det()) == 1


@given(int_matrices())
def test_hnf_contract(rows):
    M = IntMatrix(rows)
    H, U = hnf(M)
    assert U @ M == H
    assert abs(U.det()) == 1
    last = -1
    for r in H.entries:
        nz = [j for j, v in enumerate(r) if v]
        if not nz:
            last = M.ncols
            continue
        assert nz[0] > last
        last = nz[0]


@given(int_matrices())
def test_snf_matches_sympy(rows):
    M = IntMatrix(rows)
    D, U, V = snf(M)
    assert U @ M @ V == D
    assert abs(U.det()) == 1 and abs(V.det()) == 1
    expected = smith_normal_form(sympy.Matrix(rows), domain=sympy.ZZ)
    ours = invariant_factors(M)
    theirs = [abs(int(expected[i, i])) for i in range(min(M.shape))]
    assert ours == theirs


@given(int_matrices(1, 3, 2, 5))
def test_integer_kernel_is_saturated_basis(rows):
    M = IntMatrix(rows)
    K = integer_kernel(M)
    assert (M @ K) == IntMatrix.zeros(M.nrows, K.ncols) if K.ncols else True
    rank = sympy.Matrix(rows).rank()
    assert K.ncols == M.ncols - rank
    if K.ncols:
        # saturated: the kernel basis has trivial elementary divisors
        assert all(f == 1 for f in invariant_factors(K))


def test_kernel_examples():
    assert integer_kernel(IntMatrix([[1, 1]])).columns() == [(1, -1)]
    assert integer_kernel(IntMatrix([[2, -1, 0]])).columns() == [(1, 2, 0), (0, 0, 1)]
    assert integer_kernel(IntMatrix.identity(3)).ncols == 0


def test_lattice_intersections():
    A = IntMatrix([[1], [1]])
    assert lattice_intersect(A, IntMatrix([[2, 0], [0, 2]])) == IntMatrix([[2], [2]])
    B = IntMatrix([[2, 0], [0, 1]])
    C = IntMatrix([[1, 0], [0, 3]])
    assert lattice_intersect(B, C) == column_basis(IntMatrix([[2, 0], [0, 3]]))


def test_in_lattice():
    B = IntMatrix([[2, 1], [0, 3]])
    assert in_lattice(B, (3, 3))
    assert not in_lattice(B, (1, 0))


@given(int_matrices(3, 3, 3, 3))
def test_det_matches_sympy(rows):
    assert IntMatrix(rows).det() == sympy.Matrix(rows).det()


# --------------------------------------------------------------------------
# field matrices


def test_solve_and_inverse():
    s2 = ExactScalar.surd(2)
    A = ExactMatrix([[1, s2], [0, 1]], 2)
    assert A @ A.inverse() == ExactMatrix.identity(2, 2)
    with pytest.raises(SingularMatrix):
        ExactMatrix([[1, 2], [2, 4]]).inverse()


def test_definiteness_examples():
    assert not is_positive_definite(ExactMatrix([[1, 2], [2, 1]]))
    assert is_positive_definite(ExactMatrix([[1 + ExactScalar.surd(2)]], 2))
    assert is_positive_semidefinite(ExactMatrix([[1, 0], [0, 0]]))
    assert not is_positive_semidefinite(ExactMatrix([[0, 1], [1, 0]]))
    assert [c.a for c in charpoly(ExactMatrix([[2, 1], [1, 2]]))] == [3, -4, 1]


@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3))
def test_psd_of_gram_and_pd_agree_with_eigenvalues(rows):
    A = sympy.Matrix(rows)
    G = A.T * A
    M = ExactMatrix(G.tolist())
    assert is_positive_semidefinite(M)
    assert is_positive_definite(M) == (A.det() != 0)


@given(st.lists(fractions, min_size=3, max_size=3), discriminants)
def test_pd_matches_numeric_eigenvalues(vals, d):
    a, b, c = vals
    w = ExactScalar.surd(d)
    M = ExactMatrix([[a + w, b], [b, c - w]], d)
    lam = mpmath.eigsy(mpmath.matrix([[_mp(x) for x in row] for row in M.tolist()]))[0]
    smallest = min(lam[i] for i in range(2))
    if abs(smallest) > mpmath.mpf(10) ** -30:
        assert is_positive_definite(M) == (smallest > 0)
        assert is_positive_semidefinite(M) == (smallest > 0)


def test_rational_nullspace_example():
    basis = rational_nullspace([[1, 1, 0]], 3)
    assert basis == [[-1, 1, 0], [0, 0, 1]]


def test_f2_rank_and_span():
    vs = [f2.pack(v) for v in ([1, 1, 0], [0, 1, 1], [1, 0, 1])]
    assert f2.rank(vs) == 2
    assert len(f2.span(vs)) == 4
