"""Truncated moment sequences, moment matrices, and localizing matrices.

A truncated sequence stores one real value per exponent tuple of total degree
up to ``max_degree`` (dense). The moment matrix of order n has rows and
columns labeled by the degree-lex monomial basis of degree <= n and entries
``beta[row + col]``; the localizing matrix of a polynomial q is the moment
matrix of the shifted sequence (q * beta)_a = sum_g q_g beta_{g+a}.

Positive semidefiniteness and numeric rank are decided with relative
tolerances: an eigenvalue floor of ``-tol * (1 + |trace|)`` and a singular
value cutoff of ``tol * sigma_max``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .indexing import (
    MultiIndex,
    add_indices,
    basis_size,
    enumerate_basis,
    iter_basis,
    total_degree,
)
from .polynomials import MultivariatePoly

__all__ = [
    "TruncatedSequence",
    "MomentMatrix",
    "PsdCheck",
    "build_moment_matrix",
    "shift_sequence",
    "build_localizing_matrix",
    "max_localizing_order",
    "psd_check",
    "numeric_rank",
    "bilinear_form",
]

DEFAULT_RANK_TOL = 1e-8
DEFAULT_PSD_TOL = 1e-8


@dataclass(frozen=True)
class TruncatedSequence:
    """Dense real multisequence truncated at a total degree."""

    dim: int
    max_degree: int
    values: dict[MultiIndex, float]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")
        if self.max_degree < 0:
            raise ValueError("max_degree must be nonnegative")
        cleaned: dict[MultiIndex, float] = {}
        for idx, val in self.values.items():
            key = tuple(int(e) for e in idx)
            if len(key) != self.dim or any(e < 0 for e in key):
                raise ValueError(f"bad exponent tuple {key} for dimension {self.dim}")
            if total_degree(key) > self.max_degree:
                raise ValueError(
                    f"entry {key} exceeds max_degree {self.max_degree}"
                )
            cleaned[key] = float(val)
        expected = basis_size(self.dim, self.max_degree)
        if len(cleaned) != expected:
            raise ValueError(
                f"sequence is not dense: {len(cleaned)} entries, expected {expected}"
            )
        object.__setattr__(self, "values", cleaned)

    def __getitem__(self, index: MultiIndex) -> float:
        return self.values[tuple(index)]

    def truncate(self, degree: int) -> "TruncatedSequence":
        """Restriction to total degree <= degree."""
        if degree > self.max_degree:
            raise ValueError("cannot truncate upward")
        kept = {
            idx: val for idx, val in self.values.items() if total_degree(idx) <= degree
        }
        return TruncatedSequence(self.dim, degree, kept)

    def to_dict(self) -> dict:
        moments = [
            {"idx": list(idx), "value": self.values[idx]}
            for idx in iter_basis(self.dim, self.max_degree)
        ]
        return {"dim": self.dim, "degree": self.max_degree, "moments": moments}

    @classmethod
    def from_dict(cls, data: Mapping) -> "TruncatedSequence":
        for key in ("dim", "degree", "moments"):
            if key not in data:
                raise ValueError(f"moments JSON is missing '{key}'")
        dim = int(data["dim"])
        degree = int(data["degree"])
        values: dict[MultiIndex, float] = {}
        for entry in data["moments"]:
            idx = tuple(int(e) for e in entry["idx"])
            if idx in values:
                raise ValueError(f"duplicate moment index {idx}")
            values[idx] = float(entry["value"])
        missing = [idx for idx in iter_basis(dim, degree) if idx not in values]
        if missing:
            raise ValueError(f"missing moment index {missing[0]}")
        return cls(dim, degree, values)


@dataclass(frozen=True, eq=False)
class MomentMatrix:
    """Symmetric matrix beta[row+col] over the degree-lex basis of one order."""

    order: int
    labels: tuple[MultiIndex, ...]
    entries: np.ndarray
    kind: str = "plain"
    localizer: MultivariatePoly | None = None

    @property
    def dim(self) -> int:
        return len(self.labels[0])

    @property
    def size(self) -> int:
        return len(self.labels)

    def to_dict(self) -> dict:
        out = {
            "dim": self.dim,
            "order": self.order,
            "kind": self.kind,
            "labels": [list(idx) for idx in self.labels],
            "entries": [[float(v) for v in row] for row in self.entries],
        }
        if self.localizer is not None:
            out["localizer"] = self.localizer.to_dict()
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> "MomentMatrix":
        for key in ("order", "labels", "entries"):
            if key not in data:
                raise ValueError(f"matrix JSON is missing '{key}'")
        labels = tuple(tuple(int(e) for e in idx) for idx in data["labels"])
        entries = np.array(data["entries"], dtype=float)
        if entries.shape != (len(labels), len(labels)):
            raise ValueError("matrix entries do not match the label count")
        localizer = None
        if data.get("localizer") is not None:
            localizer = MultivariatePoly.from_dict(data["localizer"])
        return cls(
            order=int(data["order"]),
            labels=labels,
            entries=entries,
            kind=str(data.get("kind", "plain")),
            localizer=localizer,
        )


def build_moment_matrix(seq: TruncatedSequence, order: int) -> MomentMatrix:
    """Moment matrix M(order); needs 2*order <= seq.max_degree."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    if 2 * order > seq.max_degree:
        raise ValueError(
            f"order {order} needs moments to degree {2 * order}, "
            f"only {seq.max_degree} available"
        )
    labels = enumerate_basis(seq.dim, order)
    n = len(labels)
    entries = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            v = seq.values[add_indices(labels[i], labels[j])]
            entries[i, j] = v
            entries[j, i] = v
    return MomentMatrix(order=order, labels=tuple(labels), entries=entries)


def shift_sequence(seq: TruncatedSequence, poly: MultivariatePoly) -> TruncatedSequence:
    """The sequence (q * beta)_a = sum_g q_g beta_{g+a}.

    The result is dense up to seq.max_degree - deg q.
    """
    if poly.dim != seq.dim:
        raise ValueError("dimension mismatch between sequence and polynomial")
    deg = poly.degree
    if deg < 0:
        # shifting by the zero polynomial zeroes every entry
        zeros = {idx: 0.0 for idx in iter_basis(seq.dim, seq.max_degree)}
        return TruncatedSequence(seq.dim, seq.max_degree, zeros)
    if deg > seq.max_degree:
        raise ValueError(
            f"polynomial degree {deg} exceeds sequence degree {seq.max_degree}"
        )
    new_degree = seq.max_degree - deg
    shifted = {}
    for idx in iter_basis(seq.dim, new_degree):
        shifted[idx] = sum(
            coef * seq.values[add_indices(gamma, idx)]
            for gamma, coef in poly.terms.items()
        )
    return TruncatedSequence(seq.dim, new_degree, shifted)


def max_localizing_order(seq: TruncatedSequence, poly: MultivariatePoly) -> int:
    """Largest m with 2m + deg q <= seq.max_degree (floor division)."""
    return (seq.max_degree - poly.degree) // 2


def build_localizing_matrix(
    seq: TruncatedSequence, order: int, poly: MultivariatePoly
) -> MomentMatrix:
    """Localizing matrix M_q(order); needs 2*order + deg q <= seq.max_degree."""
    if 2 * order + poly.degree > seq.max_degree:
        raise ValueError(
            f"localizing order {order} with deg q = {poly.degree} needs moments "
            f"to degree {2 * order + poly.degree}, only {seq.max_degree} available"
        )
    base = build_moment_matrix(shift_sequence(seq, poly), order)
    return MomentMatrix(
        order=order,
        labels=base.labels,
        entries=base.entries,
        kind="localizing",
        localizer=poly,
    )


@dataclass(frozen=True)
class PsdCheck:
    """Outcome of a tolerance-aware positive semidefiniteness test."""

    is_psd: bool
    min_eigenvalue: float
    threshold: float


def psd_check(matrix: MomentMatrix, tol: float = DEFAULT_PSD_TOL) -> PsdCheck:
    """PSD iff the smallest eigenvalue is >= -tol * (1 + |trace|)."""
    eigenvalues = np.linalg.eigvalsh(matrix.entries)
    lam_min = float(eigenvalues[0])
    threshold = -tol * (1.0 + abs(float(np.trace(matrix.entries))))
    return PsdCheck(is_psd=lam_min >= threshold, min_eigenvalue=lam_min, threshold=threshold)


def numeric_rank(
    matrix: MomentMatrix, tol: float = DEFAULT_RANK_TOL, scale: float | None = None
) -> int:
    """Number of singular values above tol * max(sigma_max, scale).

    ``scale`` sets an external noise floor for matrices that are zero up to
    roundoff, where sigma_max itself is noise and a purely relative cutoff
    would count every singular value. A localizing matrix whose polynomial
    vanishes on all atoms is the standard case; pass the parent moment
    matrix's largest singular value there.
    """
    sigma = np.linalg.svd(matrix.entries, compute_uv=False)
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    reference = sigma[0] if scale is None else max(sigma[0], scale)
    return int(np.count_nonzero(sigma > tol * reference))


def bilinear_form(
    f: MultivariatePoly, matrix: MomentMatrix, g: MultivariatePoly
) -> float:
    """vec(f)^T M vec(g) over the matrix's basis.

    Equals sum_{a,b} f_a g_b beta_{a+b}, the pairing <f, g> induced by the
    sequence; both degrees must fit within the matrix order.
    """
    if f.dim != matrix.dim or g.dim != matrix.dim:
        raise ValueError("dimension mismatch")
    vf = f.coefficient_vector(matrix.order)
    vg = g.coefficient_vector(matrix.order)
    return float(vf @ matrix.entries @ vg)
