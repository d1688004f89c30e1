"""One-dimensional finite-difference surrogate of the Laplacian with
Robin boundary conditions, and its negated square."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import SquareOperator
from ..errors import InvalidParameters


@dataclass(frozen=True)
class RobinSquaredModel:
    b_operator: SquareOperator    # second-difference matrix, Robin closure
    a_operator: SquareOperator    # -B^2
    h: float


def build_robin_squared(n: int, beta: float) -> RobinSquaredModel:
    """B = second differences on n interior nodes of (0,1) with the Robin
    condition u' = beta u folded into the boundary rows by ghost-node
    elimination; returns B and A = -B^2."""
    if n < 10:
        raise InvalidParameters("need n >= 10 interior nodes")
    if beta <= 0:
        raise InvalidParameters("Robin coefficient beta must be positive")
    h = 1.0 / (n + 1)
    b = np.zeros((n, n))
    for j in range(n):
        b[j, j] = -2.0
        if j > 0:
            b[j, j - 1] = 1.0
        if j < n - 1:
            b[j, j + 1] = 1.0
    fold = 1.0 / (1.0 + beta * h)
    b[0, 0] += fold
    b[n - 1, n - 1] += fold
    b /= h * h
    a = -(b @ b)
    return RobinSquaredModel(
        b_operator=SquareOperator.from_array(b),
        a_operator=SquareOperator.from_array(a),
        h=h,
    )


def gershgorin_negative_definite(b: SquareOperator) -> bool:
    """Gershgorin disc test sharpened by irreducible diagonal dominance:
    every disc is in the closed left half plane and at least one row is
    strictly dominant, so 0 cannot be an eigenvalue."""
    m = b.entries.real
    n = m.shape[0]
    strict = False
    for i in range(n):
        radius = np.sum(np.abs(m[i, :])) - abs(m[i, i])
        if m[i, i] + radius > 1e-12 * max(b.norm, 1.0):
            return False
        if m[i, i] + radius < -1e-12 * max(b.norm, 1.0):
            strict = True
    # irreducibility of the tridiagonal coupling
    sub_ok = all(m[i + 1, i] != 0.0 and m[i, i + 1] != 0.0 for i in range(n - 1))
    return strict and sub_ok


def tridiagonal_solve(b: SquareOperator, rhs: np.ndarray) -> np.ndarray:
    """Thomas-algorithm solve of B x = rhs; the independent route used to
    check inverse positivity of -B."""
    m = b.entries.real
    n = m.shape[0]
    lower = np.array([m[i + 1, i] for i in range(n - 1)])
    diag = np.array([m[i, i] for i in range(n)], dtype=float)
    upper = np.array([m[i, i + 1] for i in range(n - 1)])
    rhs = np.array(rhs, dtype=float)
    for i in range(1, n):
        w = lower[i - 1] / diag[i - 1]
        diag[i] -= w * upper[i - 1]
        rhs[i] -= w * rhs[i - 1]
    x = np.empty(n)
    x[n - 1] = rhs[n - 1] / diag[n - 1]
    for i in range(n - 2, -1, -1):
        x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i]
    return x
