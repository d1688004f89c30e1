"""Boundary-flux operator of the Helmholtz extension problem on the unit
disc, truncated to finitely many Fourier modes.

The generator of the boundary semigroup is diagonal over the mode basis
{1, cos k*theta, sin k*theta} with eigenvalue -mu_k(lam), where
mu_k(lam) = sqrt(lam) J_k'(sqrt(lam)) / J_k(sqrt(lam)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..core import SquareOperator
from ..errors import InvalidParameters, SpectralValueHit
from .bessel import bessel_j, bessel_j_prime

BESSEL_ZERO_TOL = 1e-6
FEJER_COEFFS = (2.0, 3.0, 2.0, 1.0)


def dtn_eigenvalue(k: int, lam: float) -> float:
    """mu_k(lam) = sqrt(lam) J_k'(sqrt(lam)) / J_k(sqrt(lam))."""
    if lam <= 0:
        raise InvalidParameters("lam must be positive")
    root = math.sqrt(lam)
    denom = bessel_j(k, root)
    if abs(denom) <= BESSEL_ZERO_TOL:
        raise SpectralValueHit(
            f"lam = {lam} sits at a Dirichlet eigenvalue: J_{k}({root:.6f}) "
            f"= {denom:.3e}", nearest=complex(lam))
    return root * bessel_j_prime(k, root) / denom


def dtn_derivative_at_pi(lam: float) -> float:
    """Initial time derivative of the kernel experiment at theta = pi."""
    mu = [dtn_eigenvalue(k, lam) for k in range(4)]
    return -2.0 * mu[0] + 3.0 * mu[1] - 2.0 * mu[2] + mu[3]


@dataclass(frozen=True)
class DtnModel:
    lam: float
    modes: int
    m_grid: int
    mu: np.ndarray               # mu_0 .. mu_K
    operator: SquareOperator     # diagonal over the mode basis
    theta: np.ndarray
    synthesis: np.ndarray        # mode coefficients -> grid values
    analysis: np.ndarray         # grid values -> mode coefficients

    def mean_projection_grid(self) -> np.ndarray:
        """Spectral projection at -mu_0 realized on the grid: the
        normalized mean-value projection (1/(2 pi)) int phi dtheta * ones."""
        m = self.m_grid
        return np.full((m, m), 1.0 / m)

    def dominance_gap(self) -> float:
        return float(np.min(self.mu[1:]) - self.mu[0])


def build_dtn(lam: float, modes: int, m_grid: int) -> DtnModel:
    if modes < 3:
        raise InvalidParameters("need at least modes 0..3 for the kernel datum")
    if m_grid <= 2 * modes:
        raise InvalidParameters("m_grid must exceed twice the mode count")
    mu = np.array([dtn_eigenvalue(k, lam) for k in range(modes + 1)])
    diag = [-mu[0]]
    for k in range(1, modes + 1):
        diag.extend([-mu[k], -mu[k]])
    theta = 2.0 * np.pi * np.arange(m_grid) / m_grid
    syn = np.empty((m_grid, 2 * modes + 1))
    ana = np.empty((2 * modes + 1, m_grid))
    syn[:, 0] = 1.0
    ana[0, :] = 1.0 / m_grid
    for k in range(1, modes + 1):
        syn[:, 2 * k - 1] = np.cos(k * theta)
        syn[:, 2 * k] = np.sin(k * theta)
        ana[2 * k - 1, :] = 2.0 * np.cos(k * theta) / m_grid
        ana[2 * k, :] = 2.0 * np.sin(k * theta) / m_grid
    return DtnModel(
        lam=float(lam),
        modes=modes,
        m_grid=m_grid,
        mu=mu,
        operator=SquareOperator.from_array(np.diag(diag)),
        theta=theta,
        synthesis=syn,
        analysis=ana,
    )


@dataclass(frozen=True)
class FejerExperiment:
    first_nonneg_t: float | None
    min_trace: float
    t_grid: np.ndarray
    trace: np.ndarray


def default_fejer_t_grid(horizon: float = 10.0, points: int = 800) -> np.ndarray:
    """Log-spaced early times (the dip can live at scale 1/mu_2) plus 0."""
    return np.concatenate([[0.0], np.geomspace(1e-6, horizon, points)])


def dtn_fejer_experiment(lam: float, modes: int, m_grid: int,
                         t_grid=None, zero_tol: float = 1e-9
                         ) -> FejerExperiment:
    """Evolve the nonnegative kernel datum 2 + 3cos + 2cos2 + cos3 under
    the mode semigroup and track the minimum over the theta grid."""
    model = build_dtn(lam, modes, m_grid)
    t_grid = np.asarray(t_grid if t_grid is not None else default_fejer_t_grid())
    mu = model.mu[:4]
    theta = model.theta
    cos_k = np.array([np.cos(k * theta) for k in range(4)])
    trace = np.empty(t_grid.shape[0])
    for i, t in enumerate(t_grid):
        damp = np.exp(-t * mu) * np.asarray(FEJER_COEFFS)
        trace[i] = float(np.min(damp @ cos_k))
    first = None
    for i in range(t_grid.shape[0] - 1, -1, -1):
        if trace[i] >= -zero_tol:
            first = float(t_grid[i])
        else:
            break
    return FejerExperiment(
        first_nonneg_t=first,
        min_trace=float(np.min(trace)),
        t_grid=t_grid,
        trace=trace,
    )
