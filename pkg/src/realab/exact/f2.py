"""Linear algebra over GF(2) on bit-vectors packed into ints.

A vector of length ``n`` is an int whose most significant of ``n`` bits is
coordinate 0, so "leftmost pivot" is "highest set bit".
"""

from __future__ import annotations

from typing import Iterable, Sequence


def pack(bits: Sequence[int]) -> int:
    v = 0
    for b in bits:
        v = (v << 1) | (b & 1)
    return v


def unpack(v: int, n: int) -> tuple[int, ...]:
    return tuple((v >> (n - 1 - i)) & 1 for i in range(n))


def rref(vectors: Iterable[int]) -> list[int]:
    """Reduced echelon basis, sorted by decreasing pivot."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis = [min(b, b ^ v) for b in basis]
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def rank(vectors: Iterable[int]) -> int:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def span(vectors: Sequence[int]) -> list[int]:
    """All ``2**rank`` elements of the span, in a fixed order."""
    out = [0]
    for b in rref(vectors):
        out += [x ^ b for x in out]
    return out
