"""Dense complex linear algebra: matrix exponential, resolvent solves,
eigendecomposition with matched left/right eigenvectors, and resolvent
continuation by truncated power series.

Vectors are plain 1-D complex ndarrays throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InvalidInput,
    NumericalFailure,
    SeriesDiverges,
    SpectralValueHit,
)

REALITY_TOL = 1e-12
CLUSTER_TOL_REL = 1e-8
RANK_TOL_REL = 1e-8
SINGULAR_TOL_REL = 1e-10
EIG_RESIDUAL_TOL = 1e-10
SOLVE_TOL = 1e-10
MAX_DENSE_DIM = 2000

# Coefficients of the degree-13 diagonal rational approximant to exp.
_PADE13 = np.array([
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0, 129060195264000.0, 10559470521600.0,
    670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
    960960.0, 16380.0, 182.0, 1.0,
])
_PADE13_THETA = 5.371920351148152


@dataclass(frozen=True)
class SquareOperator:
    """Dense square matrix with a reality flag.

    ``entries`` is stored complex and read-only; ``is_real`` is true iff
    every imaginary part is below ``REALITY_TOL`` in magnitude.  The
    ambient order is coordinatewise on the real part.
    """

    entries: np.ndarray
    is_real: bool
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_array(cls, a) -> "SquareOperator":
        a = np.asarray(a, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise InvalidInput(f"expected a square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
            raise InvalidInput("matrix has non-finite entries")
        a = a.copy()
        is_real = bool(np.max(np.abs(a.imag)) <= REALITY_TOL) if a.size else True
        if is_real:
            a = a.real.astype(complex)
        a.setflags(write=False)
        return cls(entries=a, is_real=is_real)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def norm(self) -> float:
        """1-norm, used as the scale for all relative tolerances."""
        if "norm1" not in self._cache:
            self._cache["norm1"] = float(
                np.linalg.norm(self.entries, 1)) if self.dim else 0.0
        return self._cache["norm1"]

    @property
    def real_part(self) -> np.ndarray:
        return self.entries.real

    def eigenvalues(self) -> np.ndarray:
        """Plain eigenvalues, cached; used for spectrum-distance checks."""
        if "eigvals" not in self._cache:
            self._cache["eigvals"] = np.linalg.eigvals(self.entries)
        return self._cache["eigvals"]

    def shifted(self, c: complex) -> "SquareOperator":
        """A - c*I."""
        return SquareOperator.from_array(
            self.entries - c * np.eye(self.dim))


def as_vector(x, dim: int | None = None) -> np.ndarray:
    """Coerce to a 1-D complex vector, optionally checking its length."""
    v = np.asarray(x, dtype=complex).reshape(-1)
    if dim is not None and v.shape[0] != dim:
        raise InvalidInput(f"expected a vector of length {dim}, got {v.shape[0]}")
    if not np.all(np.isfinite(v.real)) or not np.all(np.isfinite(v.imag)):
        raise InvalidInput("vector has non-finite entries")
    return v


@dataclass(frozen=True)
class EigenCluster:
    """One merged eigenvalue cluster: representative value and member indices."""

    value: complex
    indices: tuple


@dataclass(frozen=True)
class EigenSystem:
    """Full spectrum with matched left/right eigenvectors.

    Columns of ``right_vectors`` / ``left_vectors`` are matched pairwise:
    ``A u_i = w_i u_i`` and ``v_i* A = w_i v_i*``.  Eigenvalues lying
    within ``cluster_tol`` of each other are merged into clusters.
    """

    eigenvalues: np.ndarray
    right_vectors: np.ndarray
    left_vectors: np.ndarray
    cluster_tol: float
    clusters: tuple

    def cluster_of(self, lam: complex) -> EigenCluster | None:
        best, dist = None, np.inf
        for c in self.clusters:
            d = abs(c.value - lam)
            if d < dist:
                best, dist = c, d
        if best is not None and dist <= max(self.cluster_tol, 1e-14) * 10:
            return best
        return None


def _pade13(b: np.ndarray) -> np.ndarray:
    n = b.shape[0]
    ident = np.eye(n, dtype=b.dtype)
    b2 = b @ b
    b4 = b2 @ b2
    b6 = b4 @ b2
    c = _PADE13
    u = b @ (b6 @ (c[13] * b6 + c[11] * b4 + c[9] * b2)
             + c[7] * b6 + c[5] * b4 + c[3] * b2 + c[1] * ident)
    v = (b6 @ (c[12] * b6 + c[10] * b4 + c[8] * b2)
         + c[6] * b6 + c[4] * b4 + c[2] * b2 + c[0] * ident)
    return np.linalg.solve(-u + v, u + v)


def expm(a: SquareOperator, t: float = 1.0) -> SquareOperator:
    """exp(t*A) by norm-scaled squaring of the degree-13 approximant."""
    if not np.isfinite(t) or t < 0:
        raise InvalidInput(f"time must be finite and nonnegative, got {t}")
    work = a.entries.real.copy() if a.is_real else a.entries.copy()
    b = t * work
    norm = np.linalg.norm(b, 1)
    if not np.isfinite(norm):
        raise InvalidInput("t*A has non-finite norm")
    squarings = 0
    if norm > _PADE13_THETA:
        squarings = int(math.ceil(math.log2(norm / _PADE13_THETA)))
        b = b / (2.0 ** squarings)
    r = _pade13(b)
    for _ in range(squarings):
        r = r @ r
    return SquareOperator.from_array(r)


def resolvent(a: SquareOperator, lam: complex) -> SquareOperator:
    """(lam*I - A)^{-1}, refusing shifts too close to the spectrum."""
    w = a.eigenvalues()
    scale = max(a.norm, 1.0)
    dist = np.abs(w - lam)
    k = int(np.argmin(dist))
    if dist[k] <= SINGULAR_TOL_REL * scale:
        raise SpectralValueHit(
            f"shift {lam} is within {SINGULAR_TOL_REL * scale:.3e} of an "
            f"eigenvalue near {w[k]}", nearest=complex(w[k]))
    m = lam * np.eye(a.dim) - a.entries
    x = np.linalg.solve(m, np.eye(a.dim, dtype=complex))
    residual = np.linalg.norm(m @ x - np.eye(a.dim))
    if residual > SOLVE_TOL * max(1.0, np.linalg.norm(x)):
        raise NumericalFailure(
            f"resolvent solve residual {residual:.3e} exceeds tolerance")
    return SquareOperator.from_array(x)


def _match_left_to_right(w_r, u, w_l, v, cluster_tol):
    """Pair left eigenvectors with right ones by maximal |v* u| overlap.

    Pairing is restricted to eigenvalue agreement within the clustering
    scale; ties break by index order (stable argsort).
    """
    n = w_r.shape[0]
    overlap = np.abs(v.conj().T @ u)  # overlap[j, i] = |v_j* u_i|
    allowed = np.abs(w_l[:, None] - w_r[None, :]) <= max(cluster_tol * 10, 1e-10)
    overlap = np.where(allowed, overlap, -1.0)
    order = np.argsort(-overlap, axis=None, kind="stable")
    perm = -np.ones(n, dtype=int)
    used_left = np.zeros(n, dtype=bool)
    assigned = 0
    for flat in order:
        j, i = divmod(int(flat), n)
        if overlap[j, i] < 0:
            break
        if perm[i] >= 0 or used_left[j]:
            continue
        perm[i] = j
        used_left[j] = True
        assigned += 1
        if assigned == n:
            break
    if assigned != n:
        raise NumericalFailure("could not match left and right eigenvectors")
    return perm


def _merge_clusters(w: np.ndarray, tol: float) -> tuple:
    """Union of eigenvalues closer than tol, represented by the mean."""
    n = w.shape[0]
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(w[i] - w[j]) <= tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    clusters = []
    for members in groups.values():
        members = tuple(sorted(members))
        value = complex(np.mean(w[list(members)]))
        clusters.append(EigenCluster(value=value, indices=members))
    clusters.sort(key=lambda c: (-c.value.real, abs(c.value.imag), c.indices))
    return tuple(clusters)


def eig(a: SquareOperator) -> EigenSystem:
    """Eigendecomposition with left vectors from the transpose problem."""
    if a.dim > MAX_DENSE_DIM:
        raise InvalidInput(f"dimension {a.dim} exceeds {MAX_DENSE_DIM}")
    try:
        w_r, u = np.linalg.eig(a.entries)
        w_t, vt = np.linalg.eig(a.entries.T)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigensolver failed: {exc}") from exc
    # v* A = w v*  iff  A^T (conj v) = w (conj v)
    v = vt.conj()
    w_l = w_t
    scale = max(a.norm, 1.0)
    cluster_tol = CLUSTER_TOL_REL * scale
    perm = _match_left_to_right(w_r, u, w_l, v, cluster_tol)
    v = v[:, perm]
    u = u / np.linalg.norm(u, axis=0, keepdims=True)
    v = v / np.linalg.norm(v, axis=0, keepdims=True)
    res_r = np.linalg.norm(a.entries @ u - u * w_r[None, :], axis=0)
    res_l = np.linalg.norm(v.conj().T @ a.entries - w_r[:, None] * v.conj().T,
                           axis=1)
    bound = max(EIG_RESIDUAL_TOL * scale, 1e-13)
    if np.max(res_r) > bound or np.max(res_l) > bound:
        raise NumericalFailure(
            f"eigenpair residual {max(np.max(res_r), np.max(res_l)):.3e} "
            f"exceeds {bound:.3e}")
    return EigenSystem(
        eigenvalues=w_r,
        right_vectors=u,
        left_vectors=v,
        cluster_tol=cluster_tol,
        clusters=_merge_clusters(w_r, cluster_tol),
    )


@dataclass(frozen=True)
class NeumannExpansion:
    """Truncated resolvent power series with its geometric tail bound."""

    operator: SquareOperator
    tail_bound: float
    terms: int


def neumann_resolvent(a: SquareOperator, mu0: complex, mu: complex,
                      k_terms: int) -> NeumannExpansion:
    """Continue R(mu0, A) to mu via sum_k (mu0-mu)^k R(mu0,A)^{k+1}."""
    if k_terms < 0:
        raise InvalidInput("number of terms must be nonnegative")
    r0 = resolvent(a, mu0).entries
    step = mu0 - mu
    ratio = abs(step) * np.linalg.norm(r0, 2)
    if ratio >= 1.0:
        raise SeriesDiverges(
            f"|mu0-mu|*||R(mu0,A)|| = {ratio:.3f} >= 1; series diverges")
    acc = r0.copy()
    term = r0.copy()
    for _ in range(k_terms):
        term = step * (r0 @ term)
        acc += term
    tail = np.linalg.norm(r0, 2) * ratio ** (k_terms + 1) / (1.0 - ratio)
    return NeumannExpansion(
        operator=SquareOperator.from_array(acc),
        tail_bound=float(tail),
        terms=k_terms,
    )
