"""Sign-flipping left-shift model on two copies of a grid over [0, 1].

The state (f1, f2) is transported leftward; mass leaving the second
component enters the first with flipped sign, and everything vanishes
after time 2, so the semigroup is nilpotent.  Only exact evaluators are
exposed: the semigroup is closed-form and the resolvent is its piecewise
exact time integral over [0, 2].
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from ..core import as_vector
from ..errors import InvalidParameters
from .models import ExactEvaluators


@dataclass(frozen=True)
class ShiftFlipModel:
    n: int
    grid: np.ndarray
    evaluators: ExactEvaluators

    @property
    def dim(self) -> int:
        return 2 * self.n

    def domain_basis(self) -> np.ndarray:
        """Basis of the discrete domain {f1(1) = -f2(0), f2(1) = 0} as
        columns; free coordinates are f1 away from the right endpoint and
        f2 away from both endpoints, plus one coupled direction."""
        n = self.n
        cols = []
        for j in range(n - 1):
            e = np.zeros(2 * n)
            e[j] = 1.0
            cols.append(e)
        for j in range(1, n - 1):
            e = np.zeros(2 * n)
            e[n + j] = 1.0
            cols.append(e)
        coupled = np.zeros(2 * n)
        coupled[n - 1] = -1.0   # f1(1)
        coupled[n] = 1.0        # f2(0)
        cols.append(coupled)
        return np.array(cols).T


def _interp(grid, values, s):
    """Piecewise-linear interpolation of complex grid data at s in [0,1]."""
    re = np.interp(s, grid, values.real)
    im = np.interp(s, grid, values.imag)
    return re + 1j * im


def _cell_integral(lam, a, b, fa, fb):
    """int_a^b exp(-lam s) (linear through (a,fa),(b,fb)) ds, closed form."""
    if b <= a:
        return 0.0 + 0.0j
    if abs(lam) < 1e-12:
        return 0.5 * (fa + fb) * (b - a)
    slope = (fb - fa) / (b - a)
    c0 = fa - slope * a
    ea, eb = cmath.exp(-lam * a), cmath.exp(-lam * b)
    i0 = (ea - eb) / lam
    i1 = (ea * (a + 1.0 / lam) - eb * (b + 1.0 / lam)) / lam
    return c0 * i0 + slope * i1


def build_shift_flip(n: int) -> ShiftFlipModel:
    if n < 4:
        raise InvalidParameters("shift-flip grid needs n >= 4")
    grid = np.linspace(0.0, 1.0, n)

    def semigroup_apply(t, f):
        f = as_vector(f, 2 * n)
        f1, f2 = f[:n], f[n:]
        g1 = np.zeros(n, dtype=complex)
        g2 = np.zeros(n, dtype=complex)
        for j, x in enumerate(grid):
            s = x + t
            if s <= 1.0:
                g1[j] = _interp(grid, f1, s)
                g2[j] = _interp(grid, f2, s)
            elif s <= 2.0:
                g1[j] = -_interp(grid, f2, s - 1.0)
        return np.concatenate([g1, g2])

    def resolvent_apply(lam, f):
        f = as_vector(f, 2 * n)
        f1, f2 = f[:n], f[n:]

        def tail_integral(values, x_index):
            acc = 0.0 + 0.0j
            for j in range(x_index, n - 1):
                acc += _cell_integral(lam, grid[j], grid[j + 1],
                                      values[j], values[j + 1])
            return acc

        full_f2 = tail_integral(f2, 0)
        g1 = np.zeros(n, dtype=complex)
        g2 = np.zeros(n, dtype=complex)
        for j, x in enumerate(grid):
            ex = cmath.exp(lam * x)
            g1[j] = ex * tail_integral(f1, j) \
                - cmath.exp(-lam * (1.0 - x)) * full_f2
            g2[j] = ex * tail_integral(f2, j)
        return np.concatenate([g1, g2])

    return ShiftFlipModel(
        n=n, grid=grid,
        evaluators=ExactEvaluators(semigroup_apply, resolvent_apply))


def shift_flip_laplace_quadrature(model: ShiftFlipModel, lam, f,
                                  panel_nodes: int = 24) -> np.ndarray:
    """Direct quadrature of int_0^2 exp(-lam t) (e^{tA} f)(x) dt per grid
    point, with Gauss-Legendre panels split at every transport kink."""
    f = as_vector(f, model.dim)
    grid = model.grid
    n = model.n
    f1, f2 = f[:n], f[n:]

    def value1(t, x):
        s = x + t
        if s <= 1.0:
            return _interp(grid, f1, s)
        if s <= 2.0:
            return -_interp(grid, f2, s - 1.0)
        return 0.0 + 0.0j

    def value2(t, x):
        s = x + t
        return _interp(grid, f2, s) if s <= 1.0 else 0.0 + 0.0j

    gl_x, gl_w = np.polynomial.legendre.leggauss(panel_nodes)
    out = np.zeros(model.dim, dtype=complex)
    for j, x in enumerate(grid):
        # kinks where x + t crosses a grid node of either copy
        ks = sorted({0.0, 2.0}
                    | {g - x for g in grid if 0.0 < g - x < 2.0}
                    | {1.0 + g - x for g in grid if 0.0 < 1.0 + g - x < 2.0})
        acc1 = acc2 = 0.0 + 0.0j
        for a, b in zip(ks[:-1], ks[1:]):
            mid, half = 0.5 * (a + b), 0.5 * (b - a)
            for xi, wi in zip(gl_x, gl_w):
                t = mid + half * xi
                weight = wi * half * cmath.exp(-lam * t)
                acc1 += weight * value1(t, x)
                acc2 += weight * value2(t, x)
        out[j] = acc1
        out[n + j] = acc2
    return out
