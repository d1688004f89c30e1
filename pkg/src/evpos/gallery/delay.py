"""Upwind discretization of the delay equation
y'(t) = int_{t-2}^{t-1} y - int_{t-1}^{t} y
as a transport generator on a grid over [-2, 0], plus the transcendental
characteristic equation machinery used to validate its spectrum."""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from ..core import SquareOperator
from ..errors import InvalidGrid

CHAR_DEDUP_TOL = 1e-8


@dataclass(frozen=True)
class DelayModel:
    operator: SquareOperator
    grid: np.ndarray
    history_functional: np.ndarray   # row encoding f'(0)
    left_functional: np.ndarray      # discretized strongly positive functional
    left_normalization: float        # its value on the constant one


def build_delay(n: int) -> DelayModel:
    """n+1 uniform nodes on [-2, 0]; n must be even so -1 is a node."""
    if n < 20 or n % 2 == 1:
        raise InvalidGrid("delay grid needs even n >= 20")
    h = 2.0 / n
    dim = n + 1
    grid = -2.0 + h * np.arange(dim)
    mid = n // 2

    a = np.zeros((dim, dim))
    for j in range(n):
        a[j, j] = -1.0 / h
        a[j, j + 1] = 1.0 / h

    # trapezoid weights of int_{-2}^{-1} f - int_{-1}^{0} f
    phi_rate = np.zeros(dim)
    phi_rate[0:mid + 1] += h
    phi_rate[0] -= h / 2.0
    phi_rate[mid] -= h / 2.0
    phi_rate[mid:dim] -= h
    phi_rate[mid] += h / 2.0
    phi_rate[dim - 1] += h / 2.0
    a[n, :] = phi_rate

    # f(0) + int_{-2}^{-1} (2+x) f + int_{-1}^{0} (-x) f, trapezoid rule
    left = np.zeros(dim)
    wleft = np.full(mid + 1, h)
    wleft[0] = wleft[-1] = h / 2.0
    left[0:mid + 1] += wleft * (2.0 + grid[0:mid + 1])
    wright = np.full(dim - mid, h)
    wright[0] = wright[-1] = h / 2.0
    left[mid:dim] += wright * (-grid[mid:dim])
    left[dim - 1] += 1.0

    return DelayModel(
        operator=SquareOperator.from_array(a),
        grid=grid,
        history_functional=phi_rate,
        left_functional=left,
        left_normalization=float(left @ np.ones(dim)),
    )


def _char_factor(lam: complex, sign: float) -> complex:
    return sign * 1j * lam - 1.0 + cmath.exp(-lam)


def _char_factor_prime(lam: complex, sign: float) -> complex:
    return sign * 1j - cmath.exp(-lam)


def delay_char_function(lam: complex) -> complex:
    """Characteristic function lam - Phi(exp(lam .)) with its removable
    singularity at 0 filled in; zeros are exactly the eigenvalues, each
    with the right multiplicity (0 is a simple zero)."""
    lam = complex(lam)
    if abs(lam) < 1e-3:
        # 2 lam - lam^2 + (7/12) lam^3 - (1/4) lam^4 + O(lam^5)
        return lam * (2.0 - lam + (7.0 / 12.0) * lam ** 2 - 0.25 * lam ** 3)
    e = cmath.exp(-lam) - 1.0
    return lam + e * e / lam


def delay_characteristic_roots(re_range, im_range, seeds: int = 40
                               ) -> np.ndarray:
    """All solutions of -lam^2 = (1 - exp(-lam))^2 inside the box, via
    grid seeding and Newton on each conjugate factor; stagnating seeds are
    dropped, duplicates merged, conjugate symmetry enforced."""
    re_lo, re_hi = re_range
    im_lo, im_hi = im_range
    roots: list[complex] = []
    res = np.linspace(re_lo, re_hi, seeds)
    ims = np.linspace(im_lo, im_hi, 2 * seeds)
    for sign in (1.0, -1.0):
        for sr in res:
            for si in ims:
                lam = complex(sr, si)
                ok = False
                for _ in range(60):
                    fval = _char_factor(lam, sign)
                    dval = _char_factor_prime(lam, sign)
                    if dval == 0:
                        break
                    step = fval / dval
                    lam -= step
                    if abs(step) < 1e-14 * (1.0 + abs(lam)):
                        ok = abs(_char_factor(lam, sign)) < 1e-12
                        break
                if not ok:
                    continue
                if not (re_lo - 1e-9 <= lam.real <= re_hi + 1e-9
                        and im_lo - 1e-9 <= lam.imag <= im_hi + 1e-9):
                    continue
                if all(abs(lam - r) > CHAR_DEDUP_TOL for r in roots):
                    roots.append(lam)
    # conjugate symmetry: the two factors swap under conjugation
    for r in list(roots):
        if (im_lo - 1e-9 <= -r.imag <= im_hi + 1e-9
                and all(abs(r.conjugate() - q) > CHAR_DEDUP_TOL for q in roots)):
            roots.append(r.conjugate())
    roots.sort(key=lambda z: (z.real, z.imag))
    return np.asarray(roots, dtype=complex)


def delay_count_roots_rect(re_range, im_range, samples_per_edge: int = 4000
                           ) -> int:
    """Winding number of the characteristic function around the rectangle
    boundary: the number of eigenvalues inside, by the argument principle."""
    re_lo, re_hi = re_range
    im_lo, im_hi = im_range
    corners = [complex(re_lo, im_lo), complex(re_hi, im_lo),
               complex(re_hi, im_hi), complex(re_lo, im_hi),
               complex(re_lo, im_lo)]
    total = 0.0
    for a, b in zip(corners[:-1], corners[1:]):
        ts = np.linspace(0.0, 1.0, samples_per_edge + 1)
        zs = a + (b - a) * ts
        vals = np.array([delay_char_function(z) for z in zs])
        args = np.angle(vals)
        d = np.diff(args)
        d = (d + np.pi) % (2.0 * np.pi) - np.pi
        if np.max(np.abs(d)) > 0.5 * np.pi:
            raise RuntimeError("argument sampling too coarse on an edge")
        total += float(np.sum(d))
    return int(round(total / (2.0 * np.pi)))
