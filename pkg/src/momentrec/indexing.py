"""Multi-index bookkeeping for the graded lexicographic monomial basis.

Monomials x^i are identified with exponent tuples i = (i_1, ..., i_d). The
basis order used everywhere in this package is degree-lex: ascending total
degree, and within a degree block descending powers of x_1, then x_2, and so
on. For d = 2 this reads 1; x1; x2; x1^2; x1*x2; x2^2; ...
"""

from __future__ import annotations

import math
from collections.abc import Iterator

MultiIndex = tuple[int, ...]


def total_degree(index: MultiIndex) -> int:
    return sum(index)


def unit_index(dim: int, axis: int) -> MultiIndex:
    """Exponent tuple of the monomial x_axis (0-based axis)."""
    if not 0 <= axis < dim:
        raise ValueError(f"axis {axis} out of range for dimension {dim}")
    return tuple(1 if k == axis else 0 for k in range(dim))


def add_indices(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def basis_size(dim: int, degree: int) -> int:
    """Number of monomials in d variables of total degree <= degree."""
    if degree < 0:
        return 0
    return math.comb(degree + dim, dim)


def _compositions(total: int, parts: int) -> Iterator[MultiIndex]:
    # descending first exponent, then recurse: the degree-lex block order
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def iter_basis(dim: int, degree: int) -> Iterator[MultiIndex]:
    """Yield all exponent tuples with total degree <= degree, degree-lex order."""
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    for t in range(degree + 1):
        yield from _compositions(t, dim)


def enumerate_basis(dim: int, degree: int) -> list[MultiIndex]:
    """Degree-lex ordered list of all exponent tuples of total degree <= degree."""
    return list(iter_basis(dim, degree))


def degree_lex_rank(index: MultiIndex) -> int:
    """Position of an exponent tuple in the degree-lex order (0-based).

    Computed combinatorially: all lower-degree tuples come first, then the
    tuples of the same degree with a larger leading exponent, recursively.
    """
    dim = len(index)
    if dim < 1:
        raise ValueError("empty multi-index")
    if any(e < 0 for e in index):
        raise ValueError(f"negative exponent in {index}")
    t = total_degree(index)
    rank = math.comb(t - 1 + dim, dim) if t > 0 else 0
    remaining = t
    for axis in range(dim - 1):
        parts_left = dim - axis - 1
        for larger in range(remaining, index[axis], -1):
            # tuples of this block whose current exponent exceeds ours
            rank += math.comb(remaining - larger + parts_left - 1, parts_left - 1)
        remaining -= index[axis]
    return rank
