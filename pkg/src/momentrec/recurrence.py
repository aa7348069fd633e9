"""Detection, verification, and use of per-variable linear recurrences.

A dense truncated multisequence is *recursively generated* along variable l
if shifting by one step in that variable satisfies a fixed linear recurrence
regardless of the other exponents. The minimal such recurrence per variable
is found by a joint least-squares fit over every available index, scanning
the recurrence order upward; its monic characteristic polynomial has the
recurrence weights as (negated) lower coefficients.

The characteristic system drives two things: extending the sequence to higher
degree, and the annihilation test M(beta) . vec(p_l) = 0 against a moment
matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import (
    InconsistentRecurrenceError,
    InsufficientInitialDataError,
    NoRecurrenceError,
)
from .indexing import MultiIndex, _compositions, degree_lex_rank, iter_basis, unit_index
from .moments import MomentMatrix, TruncatedSequence
from .polynomials import UnivariatePoly

__all__ = [
    "CharacteristicSystem",
    "detect_minimal_recurrence",
    "detect_characteristic_system",
    "extend_sequence",
    "verify_annihilation",
]

DEFAULT_FIT_TOL = 1e-6
DEFAULT_CONSISTENCY_TOL = 1e-7


@dataclass(frozen=True)
class CharacteristicSystem:
    """One monic characteristic polynomial per variable."""

    polys: tuple[UnivariatePoly, ...]
    tau: int
    residual: float

    def __post_init__(self):
        if not self.polys:
            raise ValueError("a characteristic system needs at least one variable")
        for p in self.polys:
            if p.degree < 1:
                raise ValueError("characteristic polynomials must have degree >= 1")
            if not p.is_monic:
                raise ValueError("characteristic polynomials must be monic")
        expected = sum(p.degree - 1 for p in self.polys)
        if self.tau != expected:
            raise ValueError(f"tau {self.tau} does not match degrees (expected {expected})")

    @property
    def dim(self) -> int:
        return len(self.polys)

    def to_dict(self) -> dict:
        return {
            "polys": [p.to_dict() for p in self.polys],
            "tau": self.tau,
            "residual": self.residual,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "CharacteristicSystem":
        for key in ("polys", "tau", "residual"):
            if key not in data:
                raise ValueError(f"characteristic system JSON is missing '{key}'")
        polys = tuple(UnivariatePoly.from_dict(p) for p in data["polys"])
        return cls(polys=polys, tau=int(data["tau"]), residual=float(data["residual"]))

    @classmethod
    def from_polys(cls, polys, residual: float = 0.0) -> "CharacteristicSystem":
        polys = tuple(polys)
        tau = sum(p.degree - 1 for p in polys)
        return cls(polys=polys, tau=tau, residual=residual)


def _fit_order(seq: TruncatedSequence, axis: int, order: int):
    """Joint least-squares fit of a fixed-order recurrence along one axis.

    Uses every index i with |i| + order <= max_degree as one equation
    beta_{i + order*e} = sum_k a_k beta_{i + (order-k)*e}; returns the weight
    vector and the relative residual ||A a - b|| / (1 + ||b||).
    """
    step = unit_index(seq.dim, axis)
    rows = list(iter_basis(seq.dim, seq.max_degree - order))
    a_mat = np.empty((len(rows), order))
    b_vec = np.empty(len(rows))
    for r, idx in enumerate(rows):
        for k in range(1, order + 1):
            shifted = tuple(
                idx[j] + (order - k if j == axis else 0) for j in range(seq.dim)
            )
            a_mat[r, k - 1] = seq.values[shifted]
        top = tuple(idx[j] + (order if j == axis else 0) for j in range(seq.dim))
        b_vec[r] = seq.values[top]
    weights, *_ = np.linalg.lstsq(a_mat, b_vec, rcond=None)
    residual = float(np.linalg.norm(a_mat @ weights - b_vec))
    residual /= 1.0 + float(np.linalg.norm(b_vec))
    return weights, residual


def detect_minimal_recurrence(
    seq: TruncatedSequence, axis: int, tol: float = DEFAULT_FIT_TOL
) -> tuple[UnivariatePoly, float]:
    """Least-order recurrence along one variable, as a monic polynomial.

    Candidate orders are scanned upward; the first whose joint fit residual
    drops below ``tol`` wins. Orders beyond max_degree // 2 are not data
    supported (the fit would be underdetermined and trivially consistent),
    so exceeding that bound raises NoRecurrenceError.
    """
    if not 0 <= axis < seq.dim:
        raise ValueError(f"axis {axis} out of range for dimension {seq.dim}")
    max_order = seq.max_degree // 2
    best = np.inf
    for order in range(1, max_order + 1):
        weights, residual = _fit_order(seq, axis, order)
        if residual < tol:
            coeffs = [0.0] * (order + 1)
            coeffs[order] = 1.0
            for k in range(1, order + 1):
                coeffs[order - k] = -float(weights[k - 1])
            return UnivariatePoly(tuple(coeffs)), residual
        best = min(best, residual)
    raise NoRecurrenceError(axis, max_order, best)


def detect_characteristic_system(
    seq: TruncatedSequence, tol: float = DEFAULT_FIT_TOL
) -> CharacteristicSystem:
    """Minimal recurrences for every variable, with tau = sum(deg - 1)."""
    polys = []
    residual = 0.0
    for axis in range(seq.dim):
        poly, r = detect_minimal_recurrence(seq, axis, tol)
        polys.append(poly)
        residual = max(residual, r)
    return CharacteristicSystem.from_polys(polys, residual=residual)


def _recurrence_weights(poly: UnivariatePoly) -> np.ndarray:
    """Weights a_k with beta_{i+s e} = sum_k a_k beta_{i+(s-k) e}."""
    s = poly.degree
    return np.array([-poly.coeffs[s - k] for k in range(1, s + 1)])


def extend_sequence(
    seq: TruncatedSequence,
    system: CharacteristicSystem,
    target_degree: int,
    consistency_tol: float = DEFAULT_CONSISTENCY_TOL,
) -> TruncatedSequence:
    """Fill the sequence up to target_degree using the recurrences.

    Entries are produced in ascending total degree (degree-lex within each
    block) by the lowest-index variable whose recurrence window is available;
    any other applicable variable recomputes the value as a consistency check
    within ``consistency_tol`` (relative). Entries reachable by no variable
    raise InsufficientInitialDataError.
    """
    if system.dim != seq.dim:
        raise ValueError("dimension mismatch between sequence and system")
    if target_degree <= seq.max_degree:
        return seq
    degrees = [p.degree for p in system.polys]
    weights = [_recurrence_weights(p) for p in system.polys]
    values = dict(seq.values)

    def produce(idx: MultiIndex, axis: int) -> float:
        s = degrees[axis]
        total = 0.0
        for k in range(1, s + 1):
            lower = tuple(idx[j] - (k if j == axis else 0) for j in range(seq.dim))
            total += weights[axis][k - 1] * values[lower]
        return total

    for t in range(seq.max_degree + 1, target_degree + 1):
        for idx in _compositions(t, seq.dim):
            producers = [axis for axis in range(seq.dim) if idx[axis] >= degrees[axis]]
            if not producers:
                raise InsufficientInitialDataError(idx)
            value = produce(idx, producers[0])
            for axis in producers[1:]:
                other = produce(idx, axis)
                gap = abs(other - value)
                if gap > consistency_tol * (1.0 + max(abs(value), abs(other))):
                    raise InconsistentRecurrenceError(idx, value, other)
            values[idx] = value
    return TruncatedSequence(seq.dim, target_degree, values)


def verify_annihilation(
    matrix: MomentMatrix, system: CharacteristicSystem, tol: float = 1e-8
) -> bool:
    """Check M . vec(p_l) ~ 0 for every characteristic polynomial.

    Each univariate p_l is embedded on the pure powers of its variable; the
    test requires ||M vec(p_l)|| <= tol * ||M||_F * ||p_l|| for all l.
    """
    if system.dim != matrix.dim:
        raise ValueError("dimension mismatch between matrix and system")
    m_norm = float(np.linalg.norm(matrix.entries))
    for axis, poly in enumerate(system.polys):
        if poly.degree > matrix.order:
            raise ValueError(
                f"polynomial degree {poly.degree} exceeds matrix order {matrix.order}"
            )
        vec = np.zeros(matrix.size)
        for power, coef in enumerate(poly.coeffs):
            idx = tuple(power if k == axis else 0 for k in range(matrix.dim))
            vec[degree_lex_rank(idx)] = coef
        image = float(np.linalg.norm(matrix.entries @ vec))
        if image > tol * m_norm * float(np.linalg.norm(vec)):
            return False
    return True
