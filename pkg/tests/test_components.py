import itertools

import pytest
from hypothesis import given

from conftest import lattices
from realab.components import (
    CohomologyError,
    cohomology_factors,
    identity_component,
    pi0_via_cohomology,
    pi0_via_glue,
)
from realab.exact import ExactScalar, IntMatrix
from realab.lattice import InvalidLattice, RealLattice

S2 = ExactScalar.surd(2)


def _brute_force_rank(L):
    """Count cosets of G + X in F_2^{2g} by enumeration."""
    g = L.g
    x_block = [tuple(int(i == k) for i in range(2 * g)) for k in range(g)]
    gens = list(L.glue.basis) + x_block
    sub = set()
    for coeffs in itertools.product((0, 1), repeat=len(gens)):
        v = tuple(sum(c * w[i] for c, w in zip(coeffs, gens)) % 2 for i in range(2 * g))
        sub.add(v)
    cosets = 2 ** (2 * g) // len(sub)
    return cosets.bit_length() - 1


@pytest.mark.parametrize(
    "L, rank",
    [
        (RealLattice.rectangular(S2), 1),
        (RealLattice.diamond(S2), 0),
        (RealLattice.rectangular(1), 1),
        (RealLattice.build([[1, 0], [0, 1]]), 2),
        (RealLattice.build([[1, 0], [0, 1]], [(1, 0, 1, 0)]), 1),
        (RealLattice.build([[1, 0], [0, 1]], [(1, 0, 0, 1), (0, 1, 1, 0)]), 0),
    ],
)
def test_rank_examples(L, rank):
    assert pi0_via_glue(L).f2_rank == rank
    assert pi0_via_cohomology(L).f2_rank == rank
    assert _brute_force_rank(L) == rank


def test_describe():
    assert pi0_via_glue(RealLattice.diamond(S2)).describe() == "components: 1 (connected)"
    assert pi0_via_glue(RealLattice.rectangular(S2)).describe() == "components: 2"
    assert pi0_via_glue(RealLattice.build([[1, 0], [0, 1]])).order == 4


def test_square_cokernel():
    assert cohomology_factors(RealLattice.rectangular(1)) == [2]
    assert cohomology_factors(RealLattice.diamond(S2)) == [1]


@given(lattices(max_g=4))
def test_two_routes_agree(L):
    a, b = pi0_via_glue(L), pi0_via_cohomology(L)
    assert a == b
    assert a.f2_rank <= L.g
    assert set(cohomology_factors(L)) <= {1, 2}
    if L.glue.dim == 0:
        assert a.f2_rank == L.g
    assert a.f2_rank == L.g - L.glue.dim


@given(lattices(max_g=3))
def test_brute_force_oracle(L):
    assert pi0_via_glue(L).f2_rank == _brute_force_rank(L)


def test_identity_component():
    for L, g in [
        (RealLattice.rectangular(1), 1),
        (RealLattice.rectangular(S2), 1),
        (RealLattice.build([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), 3),
    ]:
        ic = identity_component(L)
        assert ic.dimension == g
        assert ic.basis == IntMatrix.identity(g)


def test_invalid_lattice_rejected():
    with pytest.raises(InvalidLattice):
        pi0_via_glue(RealLattice.build([[1]], [(1, 0)]))


def test_cohomology_error_type():
    assert issubclass(CohomologyError, AssertionError)
