"""Operator layer: bracket, boundary condition at 0, maximal domain, spectrum.

The spectrum is found by shooting on the cleared form, which does not depend
on the choice of SL coefficients.  Trajectories start at x = delta on the
analytic Frobenius branch and are integrated with an embedded Runge-Kutta
pair (DOP853); eigenvalues are sign changes of the rescaled terminal value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.integrate import solve_ivp

from .classify import (
    Endpoint,
    EndpointClass,
    L2Verdict,
    classify_endpoint,
    membership_evidence,
)
from .coefficients import Variant, as_k, eval_p, gkm_image, sl_image
from .errors import ConfigError, DomainError, NoSignChange, StiffnessFailure
from .frobenius import frobenius_series, phi1, second_solution
from .polynomial import jet
from .xpoly import eigen_residual, family

BC_POINTS = tuple(10.0**-j for j in range(1, 9))
# fit the decay exponent where higher-order terms of p are negligible
BC_FIT_FROM = 3


def bracket(k, variant, f, df, g, dg, x):
    """[f, g](x) = f (p g') - (p f') g for real data."""
    k = as_k(k)
    p = eval_p(k, variant, x)
    return f * (p * dg) - (p * df) * g


@dataclass(frozen=True)
class BoundaryCondition:
    alpha1: float = 1.0
    alpha2: float = 0.0

    def __post_init__(self):
        if self.alpha1 == 0 and self.alpha2 == 0:
            raise DomainError("boundary condition coefficients cannot both vanish")

    def comparison_jet(self, k, variant, x):
        """(u, u') of u = alpha1 phi1 + alpha2 phi2 at ``x``."""
        u1, d1, _ = phi1(k).jet(x)
        if self.alpha2 == 0:
            return self.alpha1 * u1, self.alpha1 * d1
        u2, d2, _ = second_solution(k, variant).jet(x)
        return self.alpha1 * u1 + self.alpha2 * u2, self.alpha1 * d1 + self.alpha2 * d2


@dataclass(frozen=True)
class BCLimit:
    k: float
    variant: Variant
    points: np.ndarray
    values: np.ndarray
    exponent: float
    identically_zero: bool
    satisfied: bool

    @property
    def verdict(self) -> str:
        return "satisfied" if self.satisfied else "violated"


def bc_limit(k, variant, f, condition=BoundaryCondition()) -> BCLimit:
    """[f, u](x) at x = 10^-j, j = 1..8, with u from ``condition`` (phi1 by default).

    The decay exponent is a log-log fit over the smallest points.  The
    condition is satisfied when the values vanish identically or decay with a
    positive exponent.
    """
    k = as_k(k)
    variant = Variant.parse(variant)
    x = np.asarray(BC_POINTS)
    fv, fd, _ = jet(f, x)
    u, ud = condition.comparison_jet(k, variant, x)
    vals = np.asarray(bracket(k, variant, fv, fd, u, ud, x), dtype=float)
    if not np.any(vals):
        return BCLimit(k, variant, x, vals, math.inf, True, True)
    xs, vs = x[BC_FIT_FROM:], np.abs(vals[BC_FIT_FROM:])
    keep = vs > 0
    if keep.sum() >= 2:
        slope = float(np.polyfit(np.log(xs[keep]), np.log(vs[keep]), 1)[0])
    else:
        slope = math.inf
    ok = slope > 0.05 and abs(vals[-1]) < abs(vals[0])
    return BCLimit(k, variant, x, vals, slope, False, bool(ok))


@dataclass(frozen=True)
class OperatorSpec:
    k: float
    variant: Variant
    regime: str
    description: str
    endpoint_class: EndpointClass
    borderline: bool


def operator_spec(k, variant) -> OperatorSpec:
    """Regime at 0 taken from the endpoint classification.

    A Borderline endpoint is treated as limit-circle (the boundary condition
    is imposed) and flagged.
    """
    k = as_k(k)
    variant = Variant.parse(variant)
    c = classify_endpoint(k, variant, Endpoint.ZERO)
    if c.verdict is EndpointClass.LP:
        regime = "LP-no-BC"
        desc = "maximal domain; no boundary condition at 0 or infinity"
    else:
        regime = "LC-with-BC"
        desc = "maximal domain restricted by lim_{x->0+} [f, phi1](x) = 0"
    return OperatorSpec(k, variant, regime, desc, c.verdict, c.verdict is EndpointClass.BORDERLINE)


def _combine(evidences):
    verdicts = {e.verdict for e in evidences}
    if L2Verdict.NOT in verdicts:
        return L2Verdict.NOT
    if L2Verdict.BORDERLINE in verdicts:
        return L2Verdict.BORDERLINE
    return L2Verdict.IN


@dataclass(frozen=True)
class MaximalDomainReport:
    k: float
    variant: Variant
    operator: str
    f_evidence: tuple
    image_evidence: tuple
    f_verdict: L2Verdict
    image_verdict: L2Verdict

    @property
    def member(self) -> bool:
        return self.f_verdict is L2Verdict.IN and self.image_verdict is L2Verdict.IN


def maximal_domain_check(k, variant, f, df, d2f, *, operator="sl", tol=1e-6) -> MaximalDomainReport:
    """Test f in L^2(w) and (image of f) in L^2(w) at both endpoints.

    ``operator="sl"`` uses w^{-1}(-(p f')' + q f) with the variant's p;
    ``operator="gkm"`` uses the left-hand side of the original equation.
    """
    k = as_k(k)
    variant = Variant.parse(variant)
    triple = (f, df, d2f)
    if operator == "sl":
        image = lambda x: sl_image(k, variant, triple, x)  # noqa: E731
    elif operator == "gkm":
        image = lambda x: gkm_image(k, triple, x)  # noqa: E731
    else:
        raise DomainError(f"unknown operator {operator!r}; use sl or gkm")
    fe = tuple(membership_evidence(k, f, ep, tol, solution="f") for ep in Endpoint)
    ie = tuple(membership_evidence(k, image, ep, tol, solution="image") for ep in Endpoint)
    return MaximalDomainReport(k, variant, operator, fe, ie, _combine(fe), _combine(ie))


@dataclass(frozen=True)
class EigenpairReport:
    k: float
    variant: Variant
    n: int
    residual: float
    regime: str
    bc: BCLimit | None
    domain: MaximalDomainReport
    passed: bool


def verify_eigenpair(k, variant, n, *, residual_tol=1e-9) -> EigenpairReport:
    """Eigen-residual, boundary condition (LC regime only) and domain checks for member n.

    The domain check applies the operator of the original equation, i.e. the
    one the eigenvalue claim is about; see :func:`maximal_domain_check`.
    """
    k = as_k(k)
    variant = Variant.parse(variant)
    if int(n) != n or n < 0:
        raise DomainError("n must be a nonnegative integer")
    n = int(n)
    P = family(k).member(n)
    res = eigen_residual(k, n, P)
    spec = operator_spec(k, variant)
    bc = bc_limit(k, variant, P) if spec.regime == "LC-with-BC" else None
    dP = P.deriv()
    dom = maximal_domain_check(k, variant, P, dP, dP.deriv(), operator="gkm")
    ok = res <= residual_tol and dom.member and (bc is None or bc.satisfied)
    return EigenpairReport(k, variant, n, res, spec.regime, bc, dom, bool(ok))


@dataclass(frozen=True)
class ShootingConfig:
    delta: float = 1e-2
    order: int = 12
    rtol: float = 1e-10
    atol: float = 1e-14
    x_max: float | None = None
    scan_step: float = 0.1
    bisect_tol: float = 1e-9

    def __post_init__(self):
        for name in ("delta", "rtol", "atol", "scan_step", "bisect_tol"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ConfigError(f"shooting {name} must be positive, got {v!r}")
        if int(self.order) != self.order or self.order < 2:
            raise ConfigError("series order must be an integer >= 2")
        if self.x_max is not None and not self.x_max > self.delta:
            raise ConfigError("x_max must exceed delta")

    def terminal_point(self, lam_max) -> float:
        if self.x_max is not None:
            return float(self.x_max)
        return max(60.0, 10.0 + 8.0 * lam_max)


MAX_TERMINAL = 600.0


@dataclass(frozen=True)
class Eigenvalue:
    value: float
    interval: tuple
    miss: tuple


@dataclass(frozen=True)
class SpectralResult:
    k: float
    lam_range: tuple
    eigenvalues: tuple
    scan_lambdas: np.ndarray = field(repr=False)
    scan_miss: np.ndarray = field(repr=False)
    x_max: float = 0.0
    delta: float = 0.0

    @property
    def values(self) -> np.ndarray:
        return np.array([e.value for e in self.eigenvalues])

    @property
    def no_sign_change(self) -> bool:
        return not self.eigenvalues


def _seed_delta(k, lam_max, cfg):
    # shrink delta until the last retained series term is below rtol
    delta = cfg.delta
    for _ in range(60):
        s = frobenius_series(k, lam_max, cfg.order)
        if s.truncation_estimate(delta) <= cfg.rtol:
            return delta
        delta *= 0.5
    raise ConfigError("no series start point meets the integrator tolerance")


def _trajectories(k, lams, delta, order, x_end, cfg, t_eval):
    lams = np.asarray(lams, dtype=float)
    m = len(lams)
    y0 = np.empty(2 * m)
    for i, lam in enumerate(lams):
        val, der, _ = frobenius_series(k, lam, order).jet(delta)
        y0[i], y0[m + i] = val, der
    c0 = k - lams * k
    c1 = -1.0 - lams

    def rhs(x, Y):
        y, v = Y[:m], Y[m:]
        p1 = (x - k) * (x + k + 1.0)
        p0 = c0 + c1 * x
        return np.concatenate([v, (p1 * v + p0 * y) / (x * (x + k))])

    # the RK error norm is an RMS over all components; tighten so each meets rtol
    rtol = max(cfg.rtol / math.sqrt(m), 2.3e-14)
    sol = solve_ivp(rhs, (delta, x_end), y0, method="DOP853", rtol=rtol,
                    atol=cfg.atol, t_eval=t_eval)
    if sol.status != 0:
        raise StiffnessFailure(f"integration failed: {sol.message}")
    return sol.y[:m]


def _miss(k, lams, delta, cfg, x_max):
    window = np.linspace(0.5 * x_max, x_max, 201)
    Y = _trajectories(k, lams, delta, cfg.order, x_max, cfg, window)
    top = np.max(np.abs(Y), axis=1)
    return np.where(top > 0, Y[:, -1] / np.where(top > 0, top, 1.0), 0.0)


def shoot_eigenvalues(k, lam_range, config=ShootingConfig(), *, strict=False) -> SpectralResult:
    """Eigenvalues in ``lam_range`` by shooting from the analytic branch at 0.

    The miss function y(X)/max_{[X/2, X]} |y| is scanned on a grid of
    ``config.scan_step`` and every sign change is bisected to
    ``config.bisect_tol``.  An empty result is not an error unless
    ``strict`` is set, in which case NoSignChange is raised.
    """
    k = as_k(k)
    lo, hi = (float(v) for v in lam_range)
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        raise DomainError("lambda range must be finite and increasing")
    cfg = config
    x_max = cfg.terminal_point(hi)
    if x_max > MAX_TERMINAL:
        raise ConfigError(f"terminal point {x_max:g} overflows double range (max {MAX_TERMINAL:g})")
    delta = _seed_delta(k, max(abs(lo), abs(hi)), cfg)
    n = max(1, int(math.ceil((hi - lo) / cfg.scan_step - 1e-9)))
    grid = np.linspace(lo, hi, n + 1)
    F = _miss(k, grid, delta, cfg, x_max)
    idx = np.flatnonzero(np.sign(F[:-1]) * np.sign(F[1:]) < 0)
    a, b = grid[idx].copy(), grid[idx + 1].copy()
    fa = F[idx].copy()
    while a.size and np.max(b - a) > cfg.bisect_tol:
        mid = 0.5 * (a + b)
        fm = _miss(k, mid, delta, cfg, x_max)
        left = np.sign(fm) == np.sign(fa)
        a = np.where(left, mid, a)
        fa = np.where(left, fm, fa)
        b = np.where(left, b, mid)
    eig = tuple(
        Eigenvalue(float(0.5 * (a[i] + b[i])), (float(a[i]), float(b[i])),
                   (float(F[idx[i]]), float(F[idx[i] + 1])))
        for i in range(a.size)
    )
    if strict and not eig:
        raise NoSignChange(f"no sign change of the miss function on [{lo:g}, {hi:g}]")
    return SpectralResult(k, (lo, hi), eig, grid, F, x_max, delta)


def shooting_trajectory(k, lam, x, config=ShootingConfig()):
    """Frobenius-seeded solution of the cleared form at points ``x`` (> delta)."""
    k = as_k(k)
    x = np.asarray(x, dtype=float)
    delta = _seed_delta(k, abs(lam), config)
    if np.any(x <= delta):
        raise DomainError(f"sample points must exceed the start point {delta:g}")
    order = np.argsort(x)
    Y = _trajectories(k, [lam], delta, config.order, float(x.max()), config, x[order])[0]
    out = np.empty_like(Y)
    out[order] = Y
    return out


def with_overrides(config: ShootingConfig, **kw) -> ShootingConfig:
    return replace(config, **{k: v for k, v in kw.items() if v is not None})
