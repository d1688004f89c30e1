"""Rotation, reflection and sequence-space models with exact semigroup and
resolvent evaluators."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..core import SquareOperator, as_vector
from ..errors import InvalidGrid, InvalidParameters

SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class ExactEvaluators:
    """Closed-form semigroup/resolvent actions, when the model has them."""

    semigroup_apply: Callable | None
    resolvent_apply: Callable | None


def _rotation_parts():
    u1 = np.ones(3) / SQRT3
    p = np.outer(u1, u1)
    cross = np.array([[0.0, -1.0, 1.0],
                      [1.0, 0.0, -1.0],
                      [-1.0, 1.0, 0.0]]) / SQRT3
    return u1, p, cross


def build_rotation(variant: str = "plain", mu: float | None = None):
    """Generator of the rotation about the diagonal axis (1,1,1)/sqrt(3).

    ``damped`` adds exponential decay off the axis (A - mu (I-P)); the
    ``shifted`` variant moves the Perron eigenvalue itself (A - mu P).
    """
    if variant not in ("plain", "damped", "shifted"):
        raise InvalidParameters(f"unknown rotation variant {variant!r}")
    if variant != "plain":
        if mu is None or mu <= 0:
            raise InvalidParameters("damped/shifted variants need mu > 0")
    u1, p, cross = _rotation_parts()
    eye = np.eye(3)
    if variant == "plain":
        a = cross
    elif variant == "damped":
        a = cross - mu * (eye - p)
    else:
        a = cross - mu * p

    def semigroup_apply(t, f):
        f = as_vector(f, 3)
        pf = p @ f
        g = f - pf
        plane = math.cos(t) * g + math.sin(t) * (cross @ f)
        if variant == "plain":
            return pf + plane
        if variant == "damped":
            return pf + math.exp(-mu * t) * plane
        return math.exp(-mu * t) * pf + plane

    def resolvent_apply(lam, f):
        f = as_vector(f, 3)
        pf = p @ f
        g = f - pf
        if variant == "plain":
            return pf / lam + (lam * g + cross @ f) / (lam ** 2 + 1.0)
        if variant == "damped":
            lm = lam + mu
            return pf / lam + (lm * g + cross @ f) / (lm ** 2 + 1.0)
        return pf / (lam + mu) + (lam * g + cross @ f) / (lam ** 2 + 1.0)

    return SquareOperator.from_array(a), ExactEvaluators(
        semigroup_apply=semigroup_apply, resolvent_apply=resolvent_apply)


@dataclass(frozen=True)
class ReflectionModel:
    operator: SquareOperator
    evaluators: ExactEvaluators
    grid: np.ndarray
    weights: np.ndarray
    projection: np.ndarray


def build_reflection(n: int) -> ReflectionModel:
    """Reflection operator on a symmetric grid over [-1, 1]:
    A f = -2 f - S f + (3/2) phi(f) ones with phi the trapezoid integral."""
    if n < 3 or n % 2 == 0:
        raise InvalidGrid("reflection grid needs odd n >= 3")
    grid = np.linspace(-1.0, 1.0, n)
    h = 2.0 / (n - 1)
    w = np.full(n, h)
    w[0] = w[-1] = h / 2.0
    s_perm = np.eye(n)[::-1]
    ones = np.ones(n)
    a = -2.0 * np.eye(n) - s_perm + 1.5 * np.outer(ones, w)
    p = 0.5 * np.outer(ones, w)

    def semigroup_apply(t, f):
        f = as_vector(f, n)
        pf = p @ f
        g = f - pf
        return pf + math.exp(-2.0 * t) * (
            math.cosh(t) * g - math.sinh(t) * (s_perm @ g))

    def resolvent_apply(lam, f):
        f = as_vector(f, n)
        pf = p @ f
        g = f - pf
        return pf / lam + ((lam + 2.0) * g - s_perm @ g) / ((lam + 2.0) ** 2 - 1.0)

    return ReflectionModel(
        operator=SquareOperator.from_array(a),
        evaluators=ExactEvaluators(semigroup_apply, resolvent_apply),
        grid=grid,
        weights=w,
        projection=p,
    )


def reflection_witness(model: ReflectionModel, eps: float) -> np.ndarray:
    """Nonnegative grid function with value 1 at x=1, 0 at x=-1 and
    trapezoid integral eps: a plateau against the right edge plus one
    ramp node.  Needs eps >= h/2 (the weight of the x=1 node)."""
    n = model.grid.shape[0]
    w = model.weights
    f = np.zeros(n)
    f[n - 1] = 1.0
    acc = w[n - 1]
    if eps < acc - 1e-15:
        raise InvalidParameters(
            f"eps = {eps} below the grid resolution bound {acc}")
    i = n - 2
    while acc + w[i] <= eps and i > n // 2:
        f[i] = 1.0
        acc += w[i]
        i -= 1
    f[i] = (eps - acc) / w[i]
    if not 0.0 <= f[i] <= 1.0:
        raise InvalidParameters(f"eps = {eps} not representable on this grid")
    return f


def reflection_negativity_value(eps: float, t: float) -> float:
    """Value of e^{tA} f_eps at the grid point x = -1 in closed form."""
    return 0.5 * eps * (1.0 - math.exp(-3.0 * t)) \
        - math.exp(-2.0 * t) * math.sinh(t)


def reflection_epsilon_threshold(t: float) -> float:
    """The eps below which e^{tA} f_eps dips negative at x = -1."""
    return 2.0 * math.exp(-2.0 * t) * math.sinh(t) / (1.0 - math.exp(-3.0 * t))


@dataclass(frozen=True)
class SequenceModel:
    """Truncation of the sequence-space example to indices |n| <= N plus
    the point at infinity (last coordinate), in value coordinates."""

    operator: SquareOperator
    evaluators: ExactEvaluators
    size: int
    weights: np.ndarray          # g_n over indices -N..N
    tail_mass: float             # sum of g_n beyond the truncation
    alpha: np.ndarray
    beta: np.ndarray

    def indicator(self, n: int) -> np.ndarray:
        """Value vector of the indicator of index n (zero at infinity)."""
        v = np.zeros(2 * self.size + 2)
        v[self.size + n] = 1.0
        return v

    def value_index(self, n: int) -> int:
        return self.size + n


def _sequence_alpha(n: int) -> float:
    return 1.0 + math.log(n + 1.0)


def _sequence_g(n: int) -> float:
    return math.exp(-n * _sequence_alpha(n)) / 4.0 if n else 0.0


def build_sequence(n_max: int) -> SequenceModel:
    """Sequence model with alpha_n = 1 + log(n+1), beta_n = 2 alpha_n and
    g_n = exp(-n alpha_n)/4; any family satisfying the strict build-time
    inequality is admissible, and this one keeps every weight well above
    floating-point noise."""
    if n_max < 2:
        raise InvalidParameters("sequence model needs N >= 2")
    for n in range(1, n_max + 1):
        an, bn = _sequence_alpha(n), 2.0 * _sequence_alpha(n)
        margin = 2.0 * _sequence_g(n) + math.exp(-n * bn) - math.exp(-n * an)
        if margin >= 0.0:
            raise InvalidParameters(
                f"parameter inequality fails at n = {n} (margin {margin:.3e})")
    tail_all = sum(_sequence_g(n) for n in range(1, 200))
    g0 = 1.0 - 2.0 * tail_all
    tail_mass = 2.0 * sum(_sequence_g(n) for n in range(n_max + 1, 200))

    size = n_max
    dim = 2 * size + 2
    idx = np.arange(-size, size + 1)
    alpha = np.array([_sequence_alpha(abs(n)) for n in idx])
    beta = 2.0 * alpha
    g = np.array([g0 if n == 0 else _sequence_g(abs(n)) for n in idx])
    ones = np.ones(2 * size + 1)
    s_perm = np.eye(2 * size + 1)[::-1]
    m_comb = (np.diag(beta) @ (np.eye(2 * size + 1) + s_perm) / 2.0
              + np.diag(alpha) @ (np.eye(2 * size + 1) - s_perm) / 2.0)

    a = np.zeros((dim, dim))
    gm = g @ m_comb
    a[:-1, :-1] = np.outer(ones, gm) - m_comb
    a[:-1, -1] = m_comb @ ones - (gm @ ones) * ones
    a[-1, :-1] = gm
    a[-1, -1] = -(gm @ ones)

    def _split(v):
        c = v[-1]
        x = v[:-1] - c
        return c, x

    def semigroup_apply(t, v):
        v = as_vector(v, dim)
        c, x = _split(v)
        sym = x + s_perm @ x
        asym = x - s_perm @ x
        es = np.exp(-t * beta) * sym
        ea = np.exp(-t * alpha) * asym
        bulk = g @ (2.0 * x - es)
        out = np.empty(dim, dtype=complex)
        out[:-1] = c + 0.5 * (bulk + es + ea)
        out[-1] = c + 0.5 * bulk
        return out

    def resolvent_apply(lam, v):
        v = as_vector(v, dim)
        c, x = _split(v)
        sym = (x + s_perm @ x) / 2.0
        asym = (x - s_perm @ x) / 2.0
        rx = sym / (lam + beta) + asym / (lam + alpha)
        c_new = (c + g @ x) / lam - g @ rx
        out = np.empty(dim, dtype=complex)
        out[:-1] = c_new + rx
        out[-1] = c_new
        return out

    return SequenceModel(
        operator=SquareOperator.from_array(a),
        evaluators=ExactEvaluators(semigroup_apply, resolvent_apply),
        size=size,
        weights=g,
        tail_mass=tail_mass,
        alpha=alpha,
        beta=beta,
    )
