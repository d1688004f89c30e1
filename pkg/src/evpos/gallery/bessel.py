"""First-kind Bessel functions J_k, their derivatives and positive zeros.

J_k uses the ascending power series for small arguments and backward
(Miller) recurrence normalized by the even-order sum identity for larger
ones.  Zeros come from a sign-change bracket refined by bisection-
safeguarded Newton steps.
"""

from __future__ import annotations

import math

from ..errors import InvalidInput, NumericalFailure

X_MAX = 200.0
SERIES_CUTOFF = 9.0
ZERO_ACCURACY = 1e-12


def _bessel_j_series(k: int, x: float) -> float:
    """Ascending series sum_m (-1)^m (x/2)^{k+2m} / (m! (m+k)!)."""
    half = 0.5 * x
    try:
        term = half ** k / math.factorial(k)
    except OverflowError as exc:
        raise NumericalFailure(f"series overflow for J_{k}({x})") from exc
    total = term
    m = 0
    while True:
        m += 1
        term *= -(half * half) / (m * (m + k))
        total += term
        if abs(term) <= 1e-18 * max(1.0, abs(total)) or m > 500:
            break
    return total


def _bessel_j_miller(k_want: int, x: float) -> float:
    """Backward recurrence J_{m-1} = (2m/x) J_m - J_{m+1}, normalized by
    J_0 + 2 J_2 + 2 J_4 + ... = 1."""
    m_start = int(x + 20 + 2 * math.sqrt(max(x, 1.0)) + k_want)
    if m_start % 2 == 1:
        m_start += 1
    jp, j = 0.0, 1e-300
    out = 0.0
    norm = 0.0
    for m in range(m_start, 0, -1):
        jm = (2.0 * m / x) * j - jp
        jp, j = j, jm
        if not math.isfinite(j):
            raise NumericalFailure(f"Miller recurrence overflow at J_{k_want}({x})")
        if m - 1 == k_want:
            out = j
        if (m - 1) % 2 == 0 and m - 1 > 0:
            norm += 2.0 * j
        if abs(j) > 1e250:
            j *= 1e-250
            jp *= 1e-250
            out *= 1e-250
            norm *= 1e-250
    norm += j  # J_0 term
    if norm == 0.0:
        raise NumericalFailure("Miller normalization sum vanished")
    return out / norm


def bessel_j(k: int, x: float) -> float:
    """J_k(x) for k >= 0 and 0 < x <= X_MAX."""
    if k < 0:
        raise InvalidInput("order must be nonnegative")
    if not (0.0 < x <= X_MAX):
        raise InvalidInput(f"argument must lie in (0, {X_MAX}], got {x}")
    if x <= SERIES_CUTOFF or x <= 0.5 * k:
        return _bessel_j_series(k, x)
    return _bessel_j_miller(k, x)


def bessel_j_prime(k: int, x: float) -> float:
    """dJ_k/dx via J_k' = (J_{k-1} - J_{k+1}) / 2 and J_0' = -J_1."""
    if k == 0:
        return -bessel_j(1, x)
    return 0.5 * (bessel_j(k - 1, x) - bessel_j(k + 1, x))


def _first_zero_guess(k: int) -> float:
    # McMahon-style start: first zero of J_k sits near k + 1.86 k^(1/3)
    return k + 1.8557571 * k ** (1.0 / 3.0) + 1.033150 * k ** (-1.0 / 3.0) \
        if k > 0 else 2.404825557695773


def bessel_zero(k: int, m: int) -> float:
    """m-th positive zero of J_k (m >= 1), to about 1e-12."""
    if m < 1:
        raise InvalidInput("zero index must be >= 1")
    if k < 0:
        raise InvalidInput("order must be nonnegative")
    # walk a sign-change grid starting just below the first zero
    start = max(0.5, _first_zero_guess(k) - 1.5)
    step = 0.1
    x0 = start
    f0 = bessel_j(k, x0)
    found = 0
    bracket = None
    while x0 < X_MAX:
        x1 = x0 + step
        f1 = bessel_j(k, x1)
        if f0 == 0.0:
            found += 1
            if found == m:
                bracket = (x0, x0)
                break
        elif f0 * f1 < 0.0:
            found += 1
            if found == m:
                bracket = (x0, x1)
                break
        x0, f0 = x1, f1
    if bracket is None:
        raise NumericalFailure(f"zero {m} of J_{k} not found below {X_MAX}")
    lo, hi = bracket
    if lo == hi:
        return lo
    flo = bessel_j(k, lo)
    x = 0.5 * (lo + hi)
    for _ in range(200):
        fx = bessel_j(k, x)
        dfx = bessel_j_prime(k, x)
        newton = x - fx / dfx if dfx != 0.0 else None
        if newton is not None and lo < newton < hi:
            x_next = newton
        else:
            x_next = 0.5 * (lo + hi)
        if fx == 0.0:
            return x
        if flo * fx < 0.0:
            hi = x
        else:
            lo, flo = x, fx
        if abs(x_next - x) <= ZERO_ACCURACY:
            return x_next
        x = x_next
    return x
