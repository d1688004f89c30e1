"""Positivity certification for matrix semigroups.

Implements the equivalent characterization tests (projection strongly
positive, eigenvector structure, small-shift resolvent positivity, power
method, trajectory sampling) and combines them into a certificate whose
verdict is never emitted against conflicting evidence.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .cones import (
    ConeClass,
    ConeMargins,
    cone_classify,
    default_margins,
    is_nonnegative,
    is_strongly_positive,
    negative_part_norm,
    normalize_sign,
)
from .core import SquareOperator, as_vector, eig, expm, resolvent
from .errors import (
    EvposError,
    InvalidInput,
    NoConvergence,
    NumericalFailure,
    PreconditionFailed,
    SpectralValueHit,
    TailTooLarge,
)
from .serialize import vector_to_json
from .spectral import multiplicity, spectral_projection, spectrum_report

POWER_SEARCH_CAP = 64
DEFAULT_T_MAX = 50.0
DEFAULT_T_POINTS = 200


class Verdict(enum.Enum):
    POSITIVE = "Positive"
    EVENTUALLY_STRONGLY_POSITIVE = "EventuallyStronglyPositive"
    EVENTUALLY_POSITIVE = "EventuallyPositive"
    NOT_EVENTUALLY_POSITIVE = "NotEventuallyPositive"
    INCONCLUSIVE = "Inconclusive"


def default_t_grid(t_max: float = DEFAULT_T_MAX,
                   points: int = DEFAULT_T_POINTS) -> np.ndarray:
    return np.geomspace(1e-3, t_max, points)


def is_metzler(a: SquareOperator, tol: float = 0.0) -> bool:
    """Off-diagonal entries nonnegative: exact characterization of the
    generators of (entrywise) positive matrix semigroups."""
    if not a.is_real:
        return False
    m = a.entries.real.copy()
    np.fill_diagonal(m, 0.0)
    return bool(np.min(m) >= -max(tol, 1e-14 * max(a.norm, 1.0)))


@dataclass(frozen=True)
class ProjectionPFCheck:
    """The three equivalent spectral-projection positivity conditions."""

    projection_strongly_positive: bool
    geo_simple_with_pos_vectors: bool
    alg_simple_range_condition: bool
    agree: bool
    right_vector: np.ndarray
    left_vector: np.ndarray
    pole_order: int

    def all_hold(self) -> bool:
        return (self.agree and self.projection_strongly_positive)


def check_projection_pf(a: SquareOperator, lam0: float,
                        margins: ConeMargins | None = None,
                        system=None) -> ProjectionPFCheck:
    """Evaluate the three equivalent strong-positivity conditions of the
    spectral projection at a real eigenvalue lam0."""
    if abs(complex(lam0).imag) > 1e-12:
        raise InvalidInput("lam0 must be real")
    system = system if system is not None else eig(a)
    proj = spectral_projection(a, lam0, system=system)
    p = proj.projection.entries
    m_p = margins if margins is not None else default_margins(p)
    p_strong = is_strongly_positive(p, m_p)

    alg, geo, _ = multiplicity(a, lam0, system=system)
    cluster = system.cluster_of(lam0)
    idx = cluster.indices[0]
    u = normalize_sign(system.right_vectors[:, idx])
    v = normalize_sign(system.left_vectors[:, idx])
    m_u = margins if margins is not None else default_margins(u)
    m_v = margins if margins is not None else default_margins(v)
    u_strong = is_strongly_positive(u, m_u)
    v_strong = is_strongly_positive(v, m_v)

    cond_geo = geo == 1 and u_strong and v_strong
    # For an algebraically simple real eigenvalue the range condition
    # im(lam0*I - A) cap E+ = {0} holds exactly when the left eigenvector
    # is strongly positive.
    cond_alg = alg == 1 and u_strong and v_strong
    agree = p_strong == cond_geo == cond_alg
    return ProjectionPFCheck(
        projection_strongly_positive=p_strong,
        geo_simple_with_pos_vectors=cond_geo,
        alg_simple_range_condition=cond_alg,
        agree=agree,
        right_vector=u,
        left_vector=v,
        pole_order=proj.pole_order,
    )


@dataclass(frozen=True)
class ResolventPositivityReport:
    """Largest schedule points from which resolvent positivity persists."""

    mode: str
    lam0: float
    schedule: np.ndarray
    per_vector: dict
    uniform_lambda1_positive: float | None
    uniform_lambda1_strong: float | None

    def individual_success(self, strong: bool = False) -> bool:
        key = "lambda1_strong" if strong else "lambda1_positive"
        return all(entry[key] is not None for entry in self.per_vector.values())


def _lambda1_from_flags(schedule, flags) -> float | None:
    """Largest schedule point such that every smaller point passes."""
    k0 = None
    for k in range(len(schedule) - 1, -1, -1):
        if flags[k]:
            k0 = k
        else:
            break
    return float(schedule[k0]) if k0 is not None else None


def resolvent_eventual_positivity(a: SquareOperator, lam0: float,
                                  mode: str, schedule,
                                  margins: ConeMargins | None = None,
                                  vectors: dict | None = None
                                  ) -> ResolventPositivityReport:
    """Test (strong) positivity of R(lam, A) along a schedule lam -> lam0+.

    ``individual`` tests the standard basis plus any user vectors;
    ``uniform`` tests the full matrix entrywise.
    """
    if mode not in ("individual", "uniform"):
        raise InvalidInput(f"mode must be individual or uniform, got {mode!r}")
    schedule = np.asarray(sorted((float(x) for x in schedule), reverse=True))
    if schedule.size == 0 or schedule[-1] <= lam0:
        raise InvalidInput("schedule must decrease toward lam0 from above")
    resolvents = [resolvent(a, lam).entries for lam in schedule]

    per_vector: dict = {}
    uni_pos = uni_strong = None
    if mode == "uniform":
        pos_flags, strong_flags = [], []
        for r in resolvents:
            m = margins if margins is not None else default_margins(r)
            pos_flags.append(is_nonnegative(r, m))
            strong_flags.append(is_strongly_positive(r, m))
        uni_pos = _lambda1_from_flags(schedule, pos_flags)
        uni_strong = _lambda1_from_flags(schedule, strong_flags)
    else:
        tests = {f"e{j}": np.eye(a.dim)[:, j].astype(complex)
                 for j in range(a.dim)}
        if vectors:
            tests.update({k: as_vector(v, a.dim) for k, v in vectors.items()})
        for label, f in tests.items():
            pos_flags, strong_flags = [], []
            for r in resolvents:
                g = r @ f
                m = margins if margins is not None else default_margins(g)
                cls = cone_classify(g, m)
                pos_flags.append(cls.at_least(ConeClass.POSITIVE_NONZERO))
                strong_flags.append(cls is ConeClass.STRONGLY_POSITIVE)
            per_vector[label] = {
                "lambda1_positive": _lambda1_from_flags(schedule, pos_flags),
                "lambda1_strong": _lambda1_from_flags(schedule, strong_flags),
            }
    return ResolventPositivityReport(
        mode=mode,
        lam0=float(lam0),
        schedule=schedule,
        per_vector=per_vector,
        uniform_lambda1_positive=uni_pos,
        uniform_lambda1_strong=uni_strong,
    )


def resolvent_interval_extend(a: SquareOperator, lam0: float, lam1: float,
                              probes: int = 16,
                              margins: ConeMargins | None = None) -> bool:
    """Check that positivity of R(lam1, A) extends over (lam0, lam1].

    Also, when some power R(lam1,A)^n is strongly positive (n capped at
    64), verifies strong positivity of the resolvent at interior samples.
    """
    if probes < 1 or lam1 <= lam0:
        raise InvalidInput("need probes >= 1 and lam1 > lam0")
    r1 = resolvent(a, lam1).entries
    m1 = margins if margins is not None else default_margins(r1)
    if not is_nonnegative(r1, m1):
        raise PreconditionFailed("R(lam1, A) is not entrywise nonnegative")
    samples = lam0 + (lam1 - lam0) * (np.arange(1, probes + 1) / probes)
    mats = []
    for lam in samples:
        r = resolvent(a, lam).entries
        mats.append(r)
        m = margins if margins is not None else default_margins(r)
        if not is_nonnegative(r, m):
            return False
    power = r1.copy()
    strong_power = is_strongly_positive(power, m1)
    n = 1
    while not strong_power and n < POWER_SEARCH_CAP:
        power = power @ r1
        n += 1
        strong_power = is_strongly_positive(
            power, margins if margins is not None else default_margins(power))
    if strong_power:
        for lam, r in zip(samples[:-1], mats[:-1]):  # interior of (lam0, lam1)
            m = margins if margins is not None else default_margins(r)
            if not is_strongly_positive(r, m):
                return False
    return True


@dataclass(frozen=True)
class PowerProjectionTrace:
    lam: float
    spectral_bound: float
    trace: np.ndarray
    rate_estimate: float


def resolvent_power_projection(a: SquareOperator, lam: float,
                               n_max: int) -> PowerProjectionTrace:
    """Trace of || [lam' R(lam', A - s I)]^n - P || for n = 1..n_max.

    The operator is shifted by its spectral bound s before powering, so
    the powers converge exactly when s is a dominant simple pole.
    """
    report = spectrum_report(a)
    s = report.spectral_bound
    lam_shift = lam - s
    if lam_shift <= 0:
        raise InvalidInput("lam must exceed the spectral bound")
    a0 = a.shifted(s)
    t_mat = lam_shift * resolvent(a0, lam_shift).entries
    p = spectral_projection(a, s).projection.entries
    w = a.eigenvalues()
    others = w[np.abs(w - s) > max(1e-8 * max(a.norm, 1.0), 1e-12)]
    if others.size:
        rate = float(np.max(np.abs(lam_shift / (lam_shift - (others - s)))))
    else:
        rate = 0.0
    trace = []
    m = np.eye(a.dim, dtype=complex)
    for _ in range(n_max):
        m = m @ t_mat
        trace.append(float(np.linalg.norm(m - p, 2)))
        if len(trace) > 1 and trace[-1] > 10.0 * max(trace[0], 1e-300):
            raise NoConvergence(
                "powers of the normalized resolvent diverge "
                "(the pole is not simple)", trace=np.asarray(trace))
    return PowerProjectionTrace(
        lam=float(lam), spectral_bound=float(s),
        trace=np.asarray(trace), rate_estimate=rate)


def resolvent_power_positivity(a: SquareOperator, lam: float, f,
                               n_max: int,
                               margins: ConeMargins | None = None
                               ) -> int | None:
    """Smallest n0 with R(lam,A)^n f strongly positive for n in [n0, n_max]."""
    f = as_vector(f, a.dim)
    m_f = margins if margins is not None else default_margins(f)
    if not cone_classify(f, m_f).at_least(ConeClass.POSITIVE_NONZERO):
        raise PreconditionFailed("f must classify at least PositiveNonzero")
    r = resolvent(a, lam).entries
    flags = []
    g = f.copy()
    for _ in range(n_max):
        g = r @ g
        m = margins if margins is not None else default_margins(g)
        flags.append(cone_classify(g, m) is ConeClass.STRONGLY_POSITIVE)
    n0 = None
    for n in range(n_max, 0, -1):
        if flags[n - 1]:
            n0 = n
        else:
            break
    return n0


@dataclass
class PositivityCertificate:
    """Verdict plus the evidence that produced it."""

    verdict: Verdict
    conditions: dict
    witnesses: dict
    t0_estimate: float | None
    lambda1_estimate: float | None
    margins: ConeMargins
    dominance_gap: float
    diagnostics: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        witnesses = {}
        for key, val in self.witnesses.items():
            if isinstance(val, np.ndarray):
                witnesses[key] = vector_to_json(val)
            elif isinstance(val, (list, tuple)):
                witnesses[key] = [
                    {"re": complex(z).real, "im": complex(z).imag} for z in val]
            else:
                witnesses[key] = val
        return {
            "verdict": self.verdict.value,
            "conditions": dict(self.conditions),
            "witnesses": witnesses,
            "t0_estimate": self.t0_estimate,
            "lambda1_estimate": self.lambda1_estimate,
            "margins": self.margins.to_json_dict(),
            "dominance_gap": (self.dominance_gap
                              if math.isfinite(self.dominance_gap) else None),
            "diagnostics": list(self.diagnostics),
        }


def _power_method_check(a0: SquareOperator, p: np.ndarray, others: np.ndarray,
                        margins: ConeMargins | None):
    """Convergence of normalized powers of A0 + c I to the projection.

    The shift c is the stated conservative formula, raised when needed to
    the exact disc bound max |mu|^2 / (-2 Re mu) so that every non-dominant
    eigenvalue lies strictly inside the disc of radius c around -c.
    """
    if others.size == 0:
        return True, 1.0, 0
    re = others.real
    if np.max(re) >= 0:
        return False, None, 0
    c_formula = max(0.0, 2.0 * float(np.max(np.abs(others.imag))) - float(np.min(re)))
    c_disc = float(np.max(np.abs(others) ** 2 / (-2.0 * re)))
    c = 1.05 * max(c_formula, c_disc, 1e-6)
    rate = float(np.max(np.abs(others + c) / c))
    m = np.eye(a0.dim) + a0.entries.real / c
    k = 1
    window_ok = False
    for _ in range(40):
        mm = margins if margins is not None else default_margins(m)
        if is_strongly_positive(m, mm):
            # verified tail: a short run of consecutive powers must stay
            # strongly positive beyond the first passing power
            w = m.copy()
            step = np.eye(a0.dim) + a0.entries.real / c
            window_ok = True
            for _ in range(8):
                w = w @ step
                mw = margins if margins is not None else default_margins(w)
                if not is_strongly_positive(w, mw):
                    window_ok = False
                    break
            if window_ok:
                return True, c, k
        if k > 2 ** 22:
            break
        m = m @ m
        k *= 2
        if not np.all(np.isfinite(m)):
            return False, c, k
    return False, c, k


def certify_matrix_semigroup(a: SquareOperator,
                             margins: ConeMargins | None = None,
                             t_grid=None,
                             horizon: float | None = None
                             ) -> PositivityCertificate:
    """Full verdict pipeline for e^{tA} with A real.

    Conflicting evidence always yields Inconclusive; refutations carry a
    re-checkable witness.
    """
    if not a.is_real:
        raise InvalidInput("certification requires a real matrix")
    t_grid = np.asarray(t_grid if t_grid is not None else default_t_grid())
    report_margins = margins if margins is not None else ConeMargins.relative(1.0)
    conditions: dict = {}
    witnesses: dict = {}
    diagnostics: list = []

    try:
        system = eig(a)
        report = spectrum_report(a, system=system)
    except EvposError as exc:
        return PositivityCertificate(
            verdict=Verdict.INCONCLUSIVE, conditions={}, witnesses={},
            t0_estimate=None, lambda1_estimate=None, margins=report_margins,
            dominance_gap=float("nan"),
            diagnostics=[f"spectral analysis failed: {exc}"])

    s = report.spectral_bound
    gap = report.dominance_gap()
    strip = report.tol_profile["strip_tol"]
    metzler = is_metzler(a)
    conditions["generator_metzler"] = metzler
    conditions["dominant_spectral_bound"] = report.dominant

    if not report.dominant:
        complex_periph = [c for c in report.peripheral
                          if abs(c.value.imag) > strip]
        if complex_periph:
            witnesses["peripheral"] = [c.value for c in report.peripheral]
            wit = _trajectory_refutation_witness(a, s, t_grid, report_margins)
            if wit is not None:
                witnesses.update(wit)
            return PositivityCertificate(
                verdict=Verdict.NOT_EVENTUALLY_POSITIVE,
                conditions=conditions, witnesses=witnesses,
                t0_estimate=None, lambda1_estimate=None,
                margins=report_margins, dominance_gap=gap,
                diagnostics=["peripheral spectrum contains a non-real pair"])
        return PositivityCertificate(
            verdict=Verdict.POSITIVE if metzler else Verdict.INCONCLUSIVE,
            conditions=conditions, witnesses=witnesses,
            t0_estimate=None, lambda1_estimate=None,
            margins=report_margins, dominance_gap=gap,
            diagnostics=["peripheral strip holds several near-real clusters"])

    # Dominant real spectral bound from here on.
    try:
        pf = check_projection_pf(a, s, margins=margins, system=system)
        proj = spectral_projection(a, s, system=system)
    except EvposError as exc:
        return PositivityCertificate(
            verdict=Verdict.POSITIVE if metzler else Verdict.INCONCLUSIVE,
            conditions=conditions, witnesses=witnesses,
            t0_estimate=None, lambda1_estimate=None,
            margins=report_margins, dominance_gap=gap,
            diagnostics=[f"projection analysis failed: {exc}"])

    p = proj.projection.entries
    m_p = margins if margins is not None else default_margins(p)
    conditions["projection_strongly_positive"] = pf.projection_strongly_positive
    conditions["eigenvector_structure"] = pf.geo_simple_with_pos_vectors
    conditions["simple_pole"] = pf.pole_order == 1

    a0 = a.shifted(s)
    traj = [expm(a0, float(t)).entries.real for t in t_grid]
    sup_norms = np.array([np.linalg.norm(m, np.inf) for m in traj])
    bounded_proxy = float(np.max(sup_norms))
    growth_flag = bool(np.max(sup_norms[-len(sup_norms) // 4:])
                       > 2.0 * max(1.0, np.max(sup_norms[:len(sup_norms) // 4])))
    conditions["rescaled_semigroup_bound"] = bounded_proxy
    conditions["rescaled_semigroup_growing"] = growth_flag

    if horizon is None:
        horizon = 20.0 / gap if math.isfinite(gap) and gap > 0 else t_grid[-1]
    t0_strong = _grid_certified_t0(
        t_grid, traj, horizon, margins, strong=True)
    t0_nonneg = _grid_certified_t0(
        t_grid, traj, horizon, margins, strong=False)
    conditions["trajectory_strongly_positive"] = t0_strong is not None

    if pf.all_hold() and pf.pole_order == 1:
        w = a.eigenvalues()
        others = w[np.abs(w - s) > max(1e-8 * max(a.norm, 1.0), 1e-12)] - s
        power_ok, power_c, power_k = _power_method_check(
            a0, p, others, margins)
        conditions["power_method"] = power_ok
        conditions["power_method_shift"] = power_c
        conditions["power_method_steps"] = power_k

        schedule = s + min(1.0, gap if math.isfinite(gap) else 1.0) * (
            2.0 ** -np.arange(0, 24, dtype=float))
        try:
            res_report = resolvent_eventual_positivity(
                a, s, "individual", schedule, margins=margins)
            res_ok = res_report.individual_success(strong=True)
            lam1 = None
            if res_ok:
                lam1 = min(entry["lambda1_strong"]
                           for entry in res_report.per_vector.values())
        except EvposError as exc:
            res_ok, lam1 = False, None
            diagnostics.append(f"resolvent schedule failed: {exc}")
        conditions["resolvent_small_shift"] = res_ok

        agree = res_ok and power_ok and (t0_strong is not None)
        if agree:
            witnesses["right_eigenvector"] = pf.right_vector
            witnesses["left_eigenvector"] = pf.left_vector
            verdict = (Verdict.POSITIVE if metzler
                       else Verdict.EVENTUALLY_STRONGLY_POSITIVE)
            return PositivityCertificate(
                verdict=verdict, conditions=conditions, witnesses=witnesses,
                t0_estimate=t0_strong, lambda1_estimate=lam1,
                margins=report_margins, dominance_gap=gap,
                diagnostics=diagnostics)
        diagnostics.append(
            "equivalent conditions disagree: "
            f"resolvent={res_ok} power={power_ok} trajectory={t0_strong is not None}")
        return PositivityCertificate(
            verdict=Verdict.POSITIVE if metzler else Verdict.INCONCLUSIVE,
            conditions=conditions, witnesses=witnesses,
            t0_estimate=t0_strong, lambda1_estimate=None,
            margins=report_margins, dominance_gap=gap,
            diagnostics=diagnostics)

    if is_nonnegative(p, m_p):
        if pf.pole_order > 1:
            diagnostics.append("spectral bound is a defective (non-simple) pole")
            return PositivityCertificate(
                verdict=Verdict.POSITIVE if metzler else Verdict.INCONCLUSIVE,
                conditions=conditions, witnesses=witnesses,
                t0_estimate=None, lambda1_estimate=None,
                margins=report_margins, dominance_gap=gap,
                diagnostics=diagnostics)
        if metzler:
            verdict = Verdict.POSITIVE
        elif t0_nonneg is not None:
            verdict = Verdict.EVENTUALLY_POSITIVE
            diagnostics.append(
                "projection positive but not strongly positive; verdict "
                "grid-certified by trajectory sampling")
        else:
            verdict = Verdict.INCONCLUSIVE
            diagnostics.append(
                "projection positive but not strongly positive and the "
                "sampled trajectory does not settle in the cone")
        return PositivityCertificate(
            verdict=verdict, conditions=conditions, witnesses=witnesses,
            t0_estimate=t0_nonneg, lambda1_estimate=None,
            margins=report_margins, dominance_gap=gap,
            diagnostics=diagnostics)

    # The projection has a genuinely negative entry: the trajectory limit
    # leaves the cone, so look for a re-checkable refutation witness.
    wit = _projection_refutation_witness(a, s, p, m_p, t_grid, report_margins)
    if wit is not None:
        witnesses.update(wit)
        diagnostics.append("projection has a negative entry; trajectories "
                           "of a basis vector stay outside the cone")
        return PositivityCertificate(
            verdict=Verdict.NOT_EVENTUALLY_POSITIVE,
            conditions=conditions, witnesses=witnesses,
            t0_estimate=None, lambda1_estimate=None,
            margins=report_margins, dominance_gap=gap,
            diagnostics=diagnostics)
    diagnostics.append("projection has a negative entry but no persistent "
                       "trajectory witness was found")
    return PositivityCertificate(
        verdict=Verdict.INCONCLUSIVE,
        conditions=conditions, witnesses=witnesses,
        t0_estimate=None, lambda1_estimate=None,
        margins=report_margins, dominance_gap=gap,
        diagnostics=diagnostics)


def _grid_certified_t0(t_grid, traj, horizon, margins, strong):
    """First grid time whose whole window [t, t+horizon] passes the
    entrywise (strong) positivity test."""
    n = len(t_grid)
    flags = []
    for m in traj:
        mm = margins if margins is not None else default_margins(m)
        if strong:
            flags.append(bool(np.min(m) >= mm.strict_margin))
        else:
            flags.append(bool(np.min(m) >= -mm.zero_tol))
    for i in range(n):
        end = t_grid[i] + horizon
        window = [flags[j] for j in range(i, n) if t_grid[j] <= end]
        if window and all(window):
            # require the window to extend to the end of the grid or the
            # horizon, whichever comes first
            last_in_window = max(j for j in range(i, n) if t_grid[j] <= end)
            if last_in_window == n - 1 or t_grid[last_in_window] >= end - 1e-12:
                return float(t_grid[i])
    return None


def _trajectory_refutation_witness(a, s, t_grid, margins):
    """Find (basis vector, large t) with a persistent negative entry of
    e^{t(A - s I)} f."""
    a0 = a.shifted(s)
    tail = t_grid[t_grid >= np.median(t_grid)]
    for t in tail[::-1][:8]:
        m = expm(a0, float(t)).entries.real
        mm = margins if margins is not None else default_margins(m)
        j = int(np.argmin(np.min(m, axis=0)))
        i = int(np.argmin(m[:, j]))
        if m[i, j] < -mm.zero_tol:
            f = np.zeros(a.dim)
            f[j] = 1.0
            return {
                "refutation_f": f.astype(complex),
                "refutation_t": float(t),
                "refutation_entry": i,
                "refutation_value": float(m[i, j] * math.exp(s * float(t))),
            }
    return None


def _projection_refutation_witness(a, s, p, m_p, t_grid, margins):
    neg = np.unravel_index(int(np.argmin(p.real)), p.shape)
    if p.real[neg] >= -m_p.zero_tol:
        return None
    i, j = int(neg[0]), int(neg[1])
    a0 = a.shifted(s)
    tail = t_grid[-5:]
    vals = [expm(a0, float(t)).entries.real[i, j] for t in tail]
    if all(v < -m_p.zero_tol for v in vals):
        f = np.zeros(a.dim)
        f[j] = 1.0
        return {
            "refutation_f": f.astype(complex),
            "refutation_t": float(tail[-1]),
            "refutation_entry": i,
            "refutation_value": float(vals[-1] * math.exp(s * float(tail[-1]))),
        }
    return None


def dim2_no_gap_check(a: SquareOperator, t_grid=None,
                      margins: ConeMargins | None = None) -> bool:
    """For 2x2 generators, an eventually positive certificate forces the
    sampled semigroup to be positive at every time (no positivity gap)."""
    if a.dim != 2:
        raise InvalidInput("dim2_no_gap_check requires a 2x2 matrix")
    t_grid = np.asarray(t_grid if t_grid is not None else
                        np.linspace(0.0, 20.0, 201))
    cert = certify_matrix_semigroup(a, margins=margins)
    if cert.verdict not in (Verdict.POSITIVE,
                            Verdict.EVENTUALLY_POSITIVE,
                            Verdict.EVENTUALLY_STRONGLY_POSITIVE):
        return True
    for t in t_grid:
        m = expm(a, float(t)).entries.real
        mm = margins if margins is not None else default_margins(m)
        if np.min(m) < -mm.zero_tol:
            return False
    return True


@dataclass(frozen=True)
class SquareGeneratorResult:
    """Certification of A = -B^2 driven by resolvent positivity of B."""

    premise_resolvent_positive: bool
    premise_resolvent_strongly_positive: bool
    resolvent_square_consistent: bool
    certificate: PositivityCertificate
    first_negative_t: float | None


def square_generator_certify(b: SquareOperator,
                             margins: ConeMargins | None = None
                             ) -> SquareGeneratorResult:
    """Certify eventual positivity of e^{-t B^2} from R(0,B) >> 0."""
    w = b.eigenvalues()
    scale = max(b.norm, 1.0)
    if np.max(w.real) >= -1e-12 * scale or np.max(np.abs(w.imag)) > 1e-8 * scale:
        raise PreconditionFailed(
            "the spectrum of B must lie on the negative real axis")
    r0b = resolvent(b, 0.0).entries
    m_r = margins if margins is not None else default_margins(r0b)
    premise_pos = is_nonnegative(r0b, m_r)
    premise_strong = is_strongly_positive(r0b, m_r)

    a = SquareOperator.from_array(-(b.entries @ b.entries))
    r0a = resolvent(a, 0.0).entries
    consistent = bool(np.linalg.norm(r0a - r0b @ r0b)
                      <= 1e-8 * max(1.0, np.linalg.norm(r0a)))
    cert = certify_matrix_semigroup(a, margins=margins)

    first_neg = None
    for t in np.geomspace(1e-14, 1.0, 160):
        m = expm(a, float(t)).entries.real
        mm = margins if margins is not None else default_margins(m)
        if np.min(m) < -mm.zero_tol:
            first_neg = float(t)
            break
    if first_neg is not None:
        cert.witnesses["first_negative_t"] = first_neg
    return SquareGeneratorResult(
        premise_resolvent_positive=premise_pos,
        premise_resolvent_strongly_positive=premise_strong,
        resolvent_square_consistent=consistent,
        certificate=cert,
        first_negative_t=first_neg,
    )


def asymptotic_positivity_trace(a: SquareOperator, f, schedule) -> np.ndarray:
    """Sup-norm distance of (lam - s) R(lam, A) f to the positive cone
    along a schedule lam decreasing to s(A)."""
    f = as_vector(f, a.dim)
    if not cone_classify(f).at_least(ConeClass.POSITIVE_NONZERO):
        raise PreconditionFailed("f must classify at least PositiveNonzero")
    s = spectrum_report(a).spectral_bound
    out = []
    for lam in schedule:
        lam = float(lam)
        if lam <= s:
            raise InvalidInput("schedule must stay above the spectral bound")
        g = (lam - s) * (resolvent(a, lam).entries @ f)
        out.append(negative_part_norm(g))
    return np.asarray(out)


@dataclass(frozen=True)
class LaplaceCheck:
    discrepancy: float
    tail_bound: float
    quad_tol: float

    @property
    def passed(self) -> bool:
        return self.discrepancy <= self.quad_tol + self.tail_bound


def laplace_crosscheck(a: SquareOperator, lam: complex, f, t_max: float,
                       nodes: int = 20001, quad_tol: float = 1e-9,
                       gap_min: float = 1e-3,
                       tail_cap: float = 1e-6) -> LaplaceCheck:
    """Compare R(lam,A) f with the quadrature of its time-domain integral
    representation over [0, t_max] plus a geometric tail bound."""
    f = as_vector(f, a.dim)
    s = spectrum_report(a).spectral_bound
    decay = complex(lam).real - s
    if decay < gap_min:
        raise PreconditionFailed(
            f"Re(lam) - s(A) = {decay:.3e} is below gap_min = {gap_min}")
    if nodes % 2 == 0:
        nodes += 1
    h = t_max / (nodes - 1)
    step = expm(a, h).entries
    weights = np.ones(nodes)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    weights *= h / 3.0
    g = f.astype(complex)
    acc = weights[0] * g
    sup_shifted = float(np.linalg.norm(g, np.inf))
    t = 0.0
    for k in range(1, nodes):
        g = step @ g
        t += h
        acc += weights[k] * np.exp(-lam * t) * g
        sup_shifted = max(sup_shifted,
                          float(np.linalg.norm(g, np.inf)) * math.exp(-s * t))
    tail = sup_shifted * math.exp(-decay * t_max) / decay
    if tail > tail_cap:
        raise TailTooLarge(
            f"tail bound {tail:.3e} exceeds {tail_cap}; increase t_max")
    exact = resolvent(a, lam).entries @ f
    disc = float(np.linalg.norm(acc - exact, np.inf))
    return LaplaceCheck(discrepancy=disc, tail_bound=float(tail),
                        quad_tol=quad_tol)
