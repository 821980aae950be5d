"""Connected components of the real points of a real abelian variety.

Two independent computations of the component group are kept: one counts
cosets of the glue group over GF(2), the other computes the group
cohomology cokernel ``Lambda_- / (theta - 1) Lambda`` by Smith form.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import ExactMatrix, IntMatrix, f2, integer_kernel, snf
from .lattice import RealLattice, _require_real, xy_theta


class CohomologyError(AssertionError):
    """The cokernel had an invariant factor outside {1, 2}."""


@dataclass(frozen=True)
class ComponentGroup:
    """Elementary abelian 2-group of order ``2**f2_rank``."""

    f2_rank: int

    @property
    def order(self) -> int:
        return 2**self.f2_rank

    def describe(self) -> str:
        if self.f2_rank == 0:
            return "components: 1 (connected)"
        return f"components: {self.order}"


@dataclass(frozen=True)
class IdentityComponent:
    """The torus ``V0 / Lambda_+``; ``basis`` spans ``Lambda_+`` in V0 coordinates."""

    dimension: int
    basis: IntMatrix

    def describe(self) -> str:
        return f"identity component: torus of dimension {self.dimension}"


def pi0_via_glue(L: RealLattice) -> ComponentGroup:
    """``2g - dim(G + X)`` with ``X`` the x-block subspace of ``F_2^{2g}``."""
    _require_real(L)
    g = L.g
    x_block = [1 << (2 * g - 1 - i) for i in range(g)]
    return ComponentGroup(2 * g - f2.rank(L.glue.masks() + x_block))


def cohomology_factors(L: RealLattice) -> list[int]:
    """Invariant factors of ``Lambda_- / (theta - 1) Lambda``."""
    _require_real(L)
    n = 2 * L.g
    T = xy_theta(L)
    I = IntMatrix.identity(n)
    minus = integer_kernel(T + I)
    # (theta - 1) maps the lattice into Lambda_-; write the image in its basis
    image = ExactMatrix.from_int(minus).solve(ExactMatrix.from_int(T - I)).to_int()
    D, _, _ = snf(image)
    return [D[i, i] for i in range(min(D.shape))]


def pi0_via_cohomology(L: RealLattice) -> ComponentGroup:
    factors = cohomology_factors(L)
    if len(factors) != L.g or any(f not in (1, 2) for f in factors):
        raise CohomologyError(f"unexpected invariant factors {factors}")
    return ComponentGroup(sum(1 for f in factors if f == 2))


def identity_component(L: RealLattice) -> IdentityComponent:
    _require_real(L)
    return IdentityComponent(L.g, IntMatrix.identity(L.g))
