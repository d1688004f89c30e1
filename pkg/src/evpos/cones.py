"""Positive-cone predicates with explicit numerical margins.

The ambient lattice is the coordinatewise order on real parts; a strict
margin plays the role of the lower bound beta in "f >= beta * ones".
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput

ZERO_TOL_REL = 1e-9
STRICT_MARGIN_REL = 1e-6


class ConeClass(enum.Enum):
    NOT_POSITIVE = "NotPositive"
    ZERO = "Zero"
    POSITIVE_NONZERO = "PositiveNonzero"
    STRONGLY_POSITIVE = "StronglyPositive"

    def at_least(self, other: "ConeClass") -> bool:
        order = [ConeClass.NOT_POSITIVE, ConeClass.ZERO,
                 ConeClass.POSITIVE_NONZERO, ConeClass.STRONGLY_POSITIVE]
        return order.index(self) >= order.index(other)


@dataclass(frozen=True)
class ConeMargins:
    """Entries in [-zero_tol, zero_tol] count as zero; strong positivity
    requires every real entry to reach strict_margin."""

    zero_tol: float
    strict_margin: float

    def __post_init__(self):
        if not (0.0 < self.zero_tol < self.strict_margin):
            raise InvalidInput(
                f"need 0 < zero_tol < strict_margin, got "
                f"({self.zero_tol}, {self.strict_margin})")

    @classmethod
    def relative(cls, scale: float) -> "ConeMargins":
        s = max(float(scale), 1e-300)
        return cls(zero_tol=ZERO_TOL_REL * s, strict_margin=STRICT_MARGIN_REL * s)

    def to_json_dict(self) -> dict:
        return {"zero_tol": self.zero_tol, "strict_margin": self.strict_margin}


def default_margins(obj) -> ConeMargins:
    """Margins scaled to the max entry magnitude of the tested object."""
    a = np.asarray(obj)
    scale = float(np.max(np.abs(a))) if a.size else 1.0
    if scale == 0.0:
        scale = 1.0
    return ConeMargins.relative(scale)


def cone_classify(f, margins: ConeMargins | None = None) -> ConeClass:
    """Classify a vector (or the flattened entries of a matrix)."""
    a = np.asarray(f, dtype=complex).reshape(-1)
    m = margins if margins is not None else default_margins(a)
    if a.size == 0:
        return ConeClass.ZERO
    if np.max(np.abs(a.imag)) > m.zero_tol:
        return ConeClass.NOT_POSITIVE
    re = a.real
    if np.min(re) < -m.zero_tol:
        return ConeClass.NOT_POSITIVE
    if np.max(np.abs(re)) <= m.zero_tol:
        return ConeClass.ZERO
    if np.min(re) >= m.strict_margin:
        return ConeClass.STRONGLY_POSITIVE
    return ConeClass.POSITIVE_NONZERO


def is_nonnegative(obj, margins: ConeMargins) -> bool:
    a = np.asarray(obj, dtype=complex).reshape(-1)
    return bool(np.max(np.abs(a.imag)) <= margins.zero_tol
                and np.min(a.real) >= -margins.zero_tol)


def is_strongly_positive(obj, margins: ConeMargins) -> bool:
    a = np.asarray(obj, dtype=complex).reshape(-1)
    return bool(np.max(np.abs(a.imag)) <= margins.zero_tol
                and np.min(a.real) >= margins.strict_margin)


def negative_part_norm(f) -> float:
    """Sup-norm distance of the real part to the positive cone."""
    re = np.asarray(f, dtype=complex).reshape(-1).real
    return float(max(0.0, -np.min(re))) if re.size else 0.0


def normalize_sign(v: np.ndarray) -> np.ndarray:
    """Rotate a vector by a unit phase so its largest entry is real positive."""
    v = np.asarray(v, dtype=complex)
    k = int(np.argmax(np.abs(v)))
    piv = v[k]
    if abs(piv) == 0.0:
        return v
    return v * (abs(piv) / piv)
