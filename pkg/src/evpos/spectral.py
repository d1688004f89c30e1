"""Spectral bound, peripheral spectrum, dominance, and spectral projections
with pole-order computation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    CLUSTER_TOL_REL,
    RANK_TOL_REL,
    EigenSystem,
    SquareOperator,
    eig,
    resolvent,
)
from .errors import ContourHitsSpectrum, NotAnEigenvalue, NumericalFailure

STRIP_TOL_REL = 1e-6
PROJ_TOL = 1e-8
BIORTH_COND_LIMIT = 1e12


@dataclass(frozen=True)
class ClusterInfo:
    value: complex
    alg_mult: int
    geo_mult: int

    def to_json_dict(self) -> dict:
        return {
            "value": {"re": self.value.real, "im": self.value.imag},
            "alg_mult": self.alg_mult,
            "geo_mult": self.geo_mult,
        }


@dataclass(frozen=True)
class SpectrumReport:
    """Clustered spectrum with bound, peripheral set and dominance flag."""

    clusters: tuple
    spectral_bound: float
    peripheral: tuple
    dominant: bool
    tol_profile: dict

    @property
    def dominant_cluster(self) -> ClusterInfo | None:
        return self.peripheral[0] if (self.dominant and self.peripheral) else None

    def dominance_gap(self) -> float:
        """Gap between the spectral bound and the next real part below the
        peripheral strip; +inf when nothing lies below the strip."""
        strip = self.tol_profile["strip_tol"]
        rest = [c.value.real for c in self.clusters
                if self.spectral_bound - c.value.real > strip]
        if not rest:
            return float("inf")
        return float(self.spectral_bound - max(rest))

    def to_json_dict(self) -> dict:
        return {
            "clusters": [c.to_json_dict() for c in self.clusters],
            "spectral_bound": self.spectral_bound,
            "peripheral": [c.to_json_dict() for c in self.peripheral],
            "dominant": self.dominant,
            "dominance_gap": self.dominance_gap(),
            "tol_profile": dict(self.tol_profile),
        }


@dataclass(frozen=True)
class SpectralProjectionResult:
    """Projection onto the generalized eigenspace of one cluster."""

    eigenvalue: complex
    projection: SquareOperator
    pole_order: int
    rank: int
    residuals: dict

    def to_json_dict(self) -> dict:
        from .serialize import matrix_to_json
        return {
            "eigenvalue": {"re": self.eigenvalue.real, "im": self.eigenvalue.imag},
            "projection": matrix_to_json(self.projection.entries),
            "pole_order": self.pole_order,
            "rank": self.rank,
            "residuals": dict(self.residuals),
        }


def _nullity(a: SquareOperator, lam: complex, rank_tol: float) -> int:
    m = lam * np.eye(a.dim) - a.entries
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s <= rank_tol))


def spectrum_report(a: SquareOperator, system: EigenSystem | None = None
                    ) -> SpectrumReport:
    """Cluster the spectrum and locate the peripheral strip."""
    system = system if system is not None else eig(a)
    scale = max(a.norm, 1.0)
    strip_tol = STRIP_TOL_REL * max(1.0, a.norm)
    rank_tol = RANK_TOL_REL * scale
    infos = []
    for c in system.clusters:
        infos.append(ClusterInfo(
            value=c.value,
            alg_mult=len(c.indices),
            geo_mult=_nullity(a, c.value, rank_tol),
        ))
    spectral_bound = max(i.value.real for i in infos)
    peripheral = tuple(i for i in infos
                       if abs(i.value.real - spectral_bound) <= strip_tol)
    dominant = (len(peripheral) == 1
                and abs(peripheral[0].value.imag) <= strip_tol)
    return SpectrumReport(
        clusters=tuple(infos),
        spectral_bound=float(spectral_bound),
        peripheral=peripheral,
        dominant=dominant,
        tol_profile={
            "strip_tol": strip_tol,
            "cluster_tol": system.cluster_tol,
            "rank_tol": rank_tol,
            "proj_tol": PROJ_TOL,
        },
    )


def _generalized_null_bases(a: SquareOperator, lam: complex, power: int,
                            rank_tol: float):
    """Orthonormal bases of the right and left generalized eigenspaces.

    Both come from one SVD of ((lam*I - A)/scale)^power: the right
    nullspace spans the generalized eigenspace, the left nullspace is the
    orthogonal complement of its range.
    """
    scale = max(a.norm, 1.0)
    m = (lam * np.eye(a.dim) - a.entries) / scale
    m = np.linalg.matrix_power(m, power)
    w, s, xh = np.linalg.svd(m)
    nullity = int(np.sum(s <= rank_tol))
    if nullity == 0:
        return None, None, 0
    right = xh.conj().T[:, a.dim - nullity:]
    left = w[:, a.dim - nullity:]
    return right, left, nullity


def spectral_projection(a: SquareOperator, lam0: complex,
                        system: EigenSystem | None = None
                        ) -> SpectralProjectionResult:
    """Spectral projection of the cluster at lam0, built from bi-orthogonal
    generalized eigenvector bases, with the pole order of the resolvent."""
    system = system if system is not None else eig(a)
    cluster = system.cluster_of(lam0)
    if cluster is None:
        raise NotAnEigenvalue(f"{lam0} is not within cluster_tol of the spectrum")
    lam = cluster.value
    k = len(cluster.indices)
    scale = max(a.norm, 1.0)
    rank_tol = RANK_TOL_REL * scale

    right, left, nullity = _generalized_null_bases(a, lam, k, rank_tol)
    if nullity != k:
        # Degenerate clusters of discretized operators can need a retry at
        # a looser rank cut before we give up.
        right, left, nullity = _generalized_null_bases(a, lam, k, rank_tol * 100)
        if nullity != k:
            raise NumericalFailure(
                f"generalized nullity {nullity} does not match cluster size {k}")
    cross = left.conj().T @ right
    cond = np.linalg.cond(cross)
    if not np.isfinite(cond) or cond > BIORTH_COND_LIMIT:
        raise NumericalFailure(
            f"bi-orthogonalization is ill-conditioned (cond {cond:.3e})")
    p = right @ np.linalg.solve(cross, left.conj().T)
    if a.is_real and abs(lam.imag) <= system.cluster_tol:
        p = p.real.astype(complex)

    idem = float(np.linalg.norm(p @ p - p))
    comm = float(np.linalg.norm(a.entries @ p - p @ a.entries))
    nilpotent = -(lam * np.eye(a.dim) - a.entries) @ p
    pole_order = k
    power = np.eye(a.dim, dtype=complex)
    norms = []
    for m in range(1, k + 1):
        power = power @ nilpotent
        norms.append(np.linalg.norm(power))
        if norms[-1] <= PROJ_TOL * (scale ** m):
            pole_order = m
            break
    nil_norm = norms[pole_order - 1] if norms else 0.0
    rank = int(np.sum(np.linalg.svd(p, compute_uv=False) > rank_tol))
    return SpectralProjectionResult(
        eigenvalue=lam,
        projection=SquareOperator.from_array(p),
        pole_order=pole_order,
        rank=rank,
        residuals={
            "idempotency": idem,
            "commutation": comm,
            "nilpotent_norm": float(nil_norm),
        },
    )


def contour_projection(a: SquareOperator, lam0: complex, radius: float,
                       nodes: int = 64) -> SquareOperator:
    """Trapezoid contour quadrature of the resolvent residue at lam0.

    Node count doubles until two successive quadratures agree to 1e-9,
    so the default 64 nodes is only a starting resolution.
    """
    if radius <= 0:
        raise ContourHitsSpectrum("radius must be positive")
    w = a.eigenvalues()
    ring_dist = np.abs(np.abs(w - lam0) - radius)
    margin = max(1e-8 * max(a.norm, 1.0), 1e-12)
    if np.min(ring_dist) <= margin:
        raise ContourHitsSpectrum(
            f"circle of radius {radius} around {lam0} passes within "
            f"{np.min(ring_dist):.3e} of an eigenvalue")

    def quad(n):
        theta = 2.0 * np.pi * np.arange(n) / n
        z = lam0 + radius * np.exp(1j * theta)
        acc = np.zeros((a.dim, a.dim), dtype=complex)
        for zj in z:
            acc += resolvent(a, zj).entries * (zj - lam0)
        return acc / n

    prev = quad(nodes)
    for _ in range(8):
        nodes *= 2
        cur = quad(nodes)
        if np.linalg.norm(cur - prev) <= 1e-9:
            out = cur
            break
        prev = cur
    else:
        raise NumericalFailure("contour quadrature did not stabilize")
    if a.is_real and abs(complex(lam0).imag) < 1e-14:
        out = out.real.astype(complex)
    return SquareOperator.from_array(out)


def multiplicity(a: SquareOperator, lam0: complex,
                 system: EigenSystem | None = None):
    """(algebraic, geometric, simple-pole) data of the cluster at lam0."""
    system = system if system is not None else eig(a)
    cluster = system.cluster_of(lam0)
    if cluster is None:
        raise NotAnEigenvalue(f"{lam0} is not within cluster_tol of the spectrum")
    alg = len(cluster.indices)
    geo = _nullity(a, cluster.value, RANK_TOL_REL * max(a.norm, 1.0))
    return alg, geo, alg == geo
