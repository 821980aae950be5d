"""Seeded random lattices with exactly uniform glue groups."""

from __future__ import annotations

import random
from fractions import Fraction

from .exact import ExactMatrix, ExactScalar, f2
from .lattice import GlueGroup, RealLattice, check_real
from .textio import LatticeDocument

MAX_G = 6


def _entry(rng: random.Random, d: int | None, bound: int) -> ExactScalar:
    a = Fraction(rng.randint(-bound, bound), rng.randint(1, 4))
    if d is None or rng.random() < 0.3:
        return ExactScalar(a, 0, d)
    return ExactScalar(a, Fraction(rng.randint(-bound, bound), rng.randint(1, 4)), d)


def random_period_matrix(rng: random.Random, g: int, d: int | None, bound: int = 5) -> ExactMatrix:
    while True:
        F = ExactMatrix([[_entry(rng, d, bound) for _ in range(g)] for _ in range(g)], d)
        if F.det():
            return F


def _glue_dimension_weights(g: int) -> list[int]:
    """Number of valid glue groups of each dimension ``k``.

    A valid group is the graph of an injective map from a ``k``-dimensional
    subspace of the x block into the y block.
    """
    weights = []
    for k in range(g + 1):
        subspaces = 1
        for i in range(k):
            subspaces = subspaces * (2**g - 2**i) // (2**k - 2**i)
        injections = 1
        for i in range(k):
            injections *= 2**g - 2**i
        weights.append(subspaces * injections)
    return weights


def _independent(rng: random.Random, g: int, k: int) -> list[int]:
    while True:
        vecs = [rng.randrange(1, 2**g) for _ in range(k)]
        if f2.rank(vecs) == k:
            return vecs


def random_glue(rng: random.Random, g: int) -> GlueGroup:
    """Uniform over all valid glue groups: every group has the same number of
    ordered generating pairs ``(a_i | b_i)`` with both families independent."""
    k = rng.choices(range(g + 1), weights=_glue_dimension_weights(g))[0]
    xs = _independent(rng, g, k)
    ys = _independent(rng, g, k)
    basis = tuple(tuple(f2.unpack(a, g)) + tuple(f2.unpack(b, g)) for a, b in zip(xs, ys))
    return GlueGroup(g, basis)


def random_lattice(rng: random.Random, g: int, d: int | None = None, rational: bool = False) -> RealLattice:
    F = random_period_matrix(rng, g, None if rational else d)
    L = RealLattice(g, F.with_field(d), random_glue(rng, g), d).canonical()
    assert not check_real(L)
    return L


def gen_random(g: int, d: int | None, seed: int, count: int) -> list[LatticeDocument]:
    if not 1 <= g <= MAX_G:
        raise ValueError(f"g must be between 1 and {MAX_G}, got {g}")
    rng = random.Random(seed)
    return [
        LatticeDocument(f"random-g{g}-s{seed}-{i}", lattice=random_lattice(rng, g, d))
        for i in range(count)
    ]
