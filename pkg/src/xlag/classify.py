"""Empirical Weyl classification of the endpoints 0 and infinity.

Square-integrability of a solution against w near an endpoint is decided
from partial integrals over nested ranges plus a fitted power-law exponent
of the integrand f^2 w.  The endpoint is limit-circle when both solutions at
lam = 0 are square-integrable there, and limit-point otherwise.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .coefficients import Variant, as_k, sqrt_w
from .errors import DomainError
from .frobenius import phi1, second_solution

ZERO_CUTOFFS = tuple(10.0**-j for j in range(1, 9))
INF_CUTOFFS = (10.0, 25.0, 50.0, 100.0, 200.0)
DEFAULT_TOL = 1e-6
BORDER_BAND = 0.05
DIVERGENCE_ABS = 1e9
DIVERGENCE_GROWTH = 10.0

_GL = np.polynomial.legendre.leggauss(20)


class L2Verdict(str, enum.Enum):
    IN = "InL2"
    NOT = "NotInL2"
    BORDERLINE = "Borderline"


class EndpointClass(str, enum.Enum):
    LCNO = "LimitCircleNonOscillatory"
    LP = "LimitPoint"
    BORDERLINE = "Borderline"


class Endpoint(str, enum.Enum):
    ZERO = "0"
    INF = "inf"

    @classmethod
    def parse(cls, value) -> Endpoint:
        if isinstance(value, cls):
            return value
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            if value == 0:
                return cls.ZERO
            if math.isinf(value) and value > 0:
                return cls.INF
        s = str(value).strip().lower()
        if s in ("0", "0.0", "zero"):
            return cls.ZERO
        if s in ("inf", "infinity", "oo", "∞"):
            return cls.INF
        raise DomainError(f"unknown endpoint {value!r}; use 0 or inf")


@dataclass(frozen=True)
class EndpointEvidence:
    endpoint: Endpoint
    solution: str
    cutoffs: tuple
    partial_integrals: np.ndarray
    exponent: float
    verdict: L2Verdict
    note: str
    extrapolated: np.ndarray | None = None


@dataclass(frozen=True)
class OscillationCheck:
    zero_counts: dict
    oscillatory: bool


@dataclass(frozen=True)
class Classification:
    k: float
    variant: Variant
    endpoint: Endpoint
    verdict: EndpointClass
    phi1: EndpointEvidence
    phi2: EndpointEvidence
    oscillation: OscillationCheck


def _panel_integral(h, lo, hi):
    t, wt = _GL
    half = 0.5 * (hi - lo)
    x = 0.5 * (hi + lo)[:, None] + half[:, None] * t
    return (np.asarray(h(x.ravel())).reshape(x.shape) @ wt) * half


def _integrand(k, f):
    def h(x):
        with np.errstate(over="ignore", invalid="ignore"):
            return (np.asarray(f(x), dtype=float) * sqrt_w(k, x)) ** 2
    return h


def _decade_mesh(lo, hi, per_decade=4):
    n = max(1, int(round(per_decade * math.log10(hi / lo))))
    return np.geomspace(lo, hi, n + 1)


def _partials_zero(h, cutoffs):
    # S_j = int_{eps_j}^1 h, built from per-range panel sums so S is monotone
    edges = [1.0, *cutoffs]
    sums = []
    for a, b in zip(edges[1:], edges[:-1]):
        mesh = _decade_mesh(a, b)
        sums.append(float(np.sum(_panel_integral(h, mesh[:-1], mesh[1:]))))
    return np.cumsum(sums)


def _partials_inf(h, cutoffs):
    edges = [1.0, *cutoffs]
    sums = []
    for a, b in zip(edges[:-1], edges[1:]):
        mesh = np.linspace(a, b, int(math.ceil(b - a)) + 1)
        sums.append(float(np.sum(_panel_integral(h, mesh[:-1], mesh[1:]))))
    return np.cumsum(sums)


def _loglog_slope(h, lo, hi, points=9):
    x = np.geomspace(lo, hi, points)
    v = h(x)
    keep = np.isfinite(v) & (v > 1e-300)
    if keep.sum() < 2:
        # integrand vanishes (or underflows) along the whole fit window
        return math.inf
    return float(np.polyfit(np.log(x[keep]), np.log(v[keep]), 1)[0])


def membership_evidence(k, f, endpoint, tol=DEFAULT_TOL, *, solution="f", band=BORDER_BAND):
    """L^2(w) membership evidence for a vectorised callable ``f`` near ``endpoint``.

    Near 0 the ranges are [10^-j, 1], j = 1..8; near infinity [1, X] for
    X in {10, 25, 50, 100, 200}.  Decision rules, in order:

    * non-finite partial integrals: NotInL2;
    * (near 0) fitted integrand exponent below -1 - band: NotInL2, within
      band of -1: Borderline;
    * relative change of the last two totals below ``tol``: InL2.  Near 0
      the totals include the power-law tail int_0^eps estimated from the
      fitted exponent;
    * partial integrals above 1e9, or growing by 10x across the last two
      ranges: NotInL2;
    * otherwise Borderline (no stabilisation).
    """
    k = as_k(k)
    if not tol > 0:
        raise DomainError("tol must be positive")
    ep = Endpoint.parse(endpoint)
    h = _integrand(k, f)
    if ep is Endpoint.ZERO:
        cut = ZERO_CUTOFFS
        S = _partials_zero(h, cut)
        e = _loglog_slope(h, cut[-1], cut[-2])
    else:
        cut = INF_CUTOFFS
        S = _partials_inf(h, cut)
        e = _loglog_slope(h, cut[-2], cut[-1])

    def make(verdict, note, extrap=None):
        return EndpointEvidence(ep, solution, cut, S, e, verdict, note, extrap)

    if not np.all(np.isfinite(S)):
        return make(L2Verdict.NOT, "partial integrals are not finite")
    T = S
    if ep is Endpoint.ZERO:
        if e < -1.0 - band:
            return make(L2Verdict.NOT, f"integrand exponent {e:.3f} below -1")
        if abs(e + 1.0) <= band:
            return make(L2Verdict.BORDERLINE, f"integrand exponent {e:.3f} within {band} of -1")
        eps = np.asarray(cut)
        tail = h(eps) * eps / (e + 1.0) if math.isfinite(e) else np.zeros_like(eps)
        T = S + tail
    extrap = T if T is not S else None
    # stabilisation first: the size of a converged integral says nothing about membership
    if T[-1] == 0.0 or abs(T[-1] - T[-2]) <= tol * abs(T[-1]):
        return make(L2Verdict.IN, "totals stabilised", extrap)
    if S[-1] > DIVERGENCE_ABS:
        return make(L2Verdict.NOT, f"partial integrals exceed {DIVERGENCE_ABS:g}", extrap)
    if S[-2] > 0 and S[-1] >= DIVERGENCE_GROWTH * S[-2]:
        return make(L2Verdict.NOT, "partial integrals grew tenfold across the last ranges", extrap)
    return make(L2Verdict.BORDERLINE, "totals did not stabilise", extrap)


def _solution(k, variant, tag):
    if tag in ("phi1", "φ1"):
        return phi1(k)
    if tag in ("phi2", "φ2"):
        return second_solution(k, variant)
    raise DomainError(f"unknown solution tag {tag!r}; use phi1 or phi2")


def l2_membership(k, variant, solution, endpoint, tol=DEFAULT_TOL) -> EndpointEvidence:
    """Membership evidence for phi1 or phi2 (lam = 0) near an endpoint."""
    k = as_k(k)
    variant = Variant.parse(variant)
    tag = str(solution).lower()
    f = _solution(k, variant, tag)
    return membership_evidence(k, f, endpoint, tol, solution=tag)


def _sign_changes(v):
    s = np.sign(v)
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def oscillation_check(k, variant, endpoint, points=400) -> OscillationCheck:
    """Zero counts of phi1 and phi2 on a grid toward the endpoint.

    A solution counts as oscillatory if it still changes sign on the half of
    the grid nearest the endpoint.
    """
    ep = Endpoint.parse(endpoint)
    if ep is Endpoint.ZERO:
        x = np.geomspace(ZERO_CUTOFFS[-1], 1.0, points)
        inner = x[: points // 2]
    else:
        x = np.linspace(1.0, INF_CUTOFFS[-1], points)
        inner = x[points // 2 :]
    counts = {}
    osc = False
    for tag in ("phi1", "phi2"):
        f = _solution(k, variant, tag)
        counts[tag] = _sign_changes(f(x))
        osc = osc or _sign_changes(f(inner)) > 0
    return OscillationCheck(counts, osc)


def classify_endpoint(k, variant, endpoint, tol=DEFAULT_TOL) -> Classification:
    """Limit-circle / limit-point verdict from the lam = 0 solutions."""
    k = as_k(k)
    variant = Variant.parse(variant)
    ep = Endpoint.parse(endpoint)
    e1 = l2_membership(k, variant, "phi1", ep, tol)
    e2 = l2_membership(k, variant, "phi2", ep, tol)
    osc = oscillation_check(k, variant, ep)
    verdicts = {e1.verdict, e2.verdict}
    if L2Verdict.NOT in verdicts:
        verdict = EndpointClass.LP
    elif L2Verdict.BORDERLINE in verdicts or osc.oscillatory:
        verdict = EndpointClass.BORDERLINE
    else:
        verdict = EndpointClass.LCNO
    return Classification(k, variant, ep, verdict, e1, e2, osc)


@dataclass(frozen=True)
class SweepReport:
    variant: Variant
    endpoint: Endpoint
    ks: tuple
    verdicts: tuple
    k_star: float | None
    monotone: bool
    exponents: tuple

    @property
    def degenerate(self) -> bool:
        return self.k_star is None


def _flip_point(ks, verdicts):
    first_lp = next((i for i, v in enumerate(verdicts) if v is EndpointClass.LP), None)
    if first_lp is None:
        return None
    last_lc = next((i for i in range(first_lp - 1, -1, -1) if verdicts[i] is EndpointClass.LCNO), None)
    if last_lc is None:
        return None
    return 0.5 * (ks[last_lc] + ks[first_lp])


def _is_monotone(verdicts):
    # Borderline is neutral; LC must never follow LP
    seen_lp = False
    for v in verdicts:
        if v is EndpointClass.LP:
            seen_lp = True
        elif v is EndpointClass.LCNO and seen_lp:
            return False
    return True


def threshold_sweep(variant, k_grid, endpoint=0, *, tol=DEFAULT_TOL, workers=None) -> SweepReport:
    """Endpoint verdicts along an ascending k grid and the empirical flip point k*.

    k* is the midpoint of the last limit-circle grid point before the first
    limit-point one.  A second flip is reported through ``monotone`` rather
    than raised.
    """
    variant = Variant.parse(variant)
    ep = Endpoint.parse(endpoint)
    ks = tuple(as_k(v) for v in k_grid)
    if not ks:
        raise DomainError("k grid must be nonempty")
    if any(b <= a for a, b in zip(ks, ks[1:])):
        raise DomainError("k grid must be strictly ascending")

    def one(k):
        return classify_endpoint(k, variant, ep, tol)

    if workers and workers > 1 and len(ks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, ks))
    else:
        results = [one(k) for k in ks]
    verdicts = tuple(r.verdict for r in results)
    return SweepReport(
        variant,
        ep,
        ks,
        verdicts,
        _flip_point(ks, verdicts),
        _is_monotone(verdicts),
        tuple(r.phi2.exponent for r in results),
    )


def k_grid(start, stop, step):
    """Inclusive arithmetic grid start, start+step, ..., stop (rounded to 12 digits)."""
    if not step > 0:
        raise DomainError("grid step must be positive")
    if stop < start:
        raise DomainError("grid must be ascending")
    n = int(math.floor((stop - start) / step + 1e-9))
    return [round(start + i * step, 12) for i in range(n + 1)]
