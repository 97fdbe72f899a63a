"""Weighted integration on (0, inf) and inner products in L^2((0, inf); w_k).

Two independent engines are provided:

``gauss``
    Generalised Gauss-Laguerre rules from the Jacobi matrix of the weight
    x^alpha e^{-x} (Golub-Welsch, eigenproblem solved by the in-repo QL
    iteration).  For the X1 weight the rule is taken with alpha = k and the
    factor 1/(x + k)^2 is folded into the integrand.

``adaptive``
    Globally adaptive Gauss-Kronrod (7/15) on (0, X_cut], with the panels
    split geometrically toward 0 and the exponential tail beyond X_cut
    bounded, not added.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .coefficients import as_k, eval_w
from .errors import DivergenceSuspected, DomainError, NonConvergence
from .tridiag import tridiagonal_eigh
from .xpoly import family

DEFAULT_NODES = 200

# Kronrod 15-point abscissae (nonnegative half) and weights; the embedded
# Gauss 7-point rule uses the odd-indexed abscissae.
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
KRONROD_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WK[:-1], _WK[::-1]])
GAUSS7_WEIGHTS = np.zeros(15)
GAUSS7_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS7_WEIGHTS[[9, 11, 13]] = _WG[2::-1]
GAUSS7_WEIGHTS[7] = _WG[3]


@dataclass(frozen=True)
class QuadratureRule:
    """N-point rule for integrals of f(x) x^alpha e^{-x} over (0, inf)."""

    alpha: float
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.nodes)

    def integrate(self, f):
        return float(np.dot(self.weights, f(self.nodes)))


@lru_cache(maxsize=64)
def _rule(alpha, n):
    j = np.arange(n, dtype=float)
    diag = 2.0 * j + alpha + 1.0
    off = np.sqrt(j[1:] * (j[1:] + alpha))
    nodes, first = tridiagonal_eigh(diag, off)
    weights = math.gamma(alpha + 1.0) * first**2
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(alpha, nodes, weights)


def gauss_laguerre_rule(alpha, N) -> QuadratureRule:
    """Golub-Welsch rule exact for polynomials of degree <= 2N-1 against x^alpha e^{-x}.

    Jacobi matrix: diagonal 2j + alpha + 1, off-diagonal sqrt(j (j + alpha)).
    Weights far out in the tail may underflow to zero for large N.
    """
    if not alpha > -1:
        raise DomainError("alpha must exceed -1")
    if int(N) != N or N < 1:
        raise DomainError("rule size must be a positive integer")
    return _rule(float(alpha), int(N))


@dataclass(frozen=True)
class QuadResult:
    value: np.ndarray
    error: np.ndarray
    abs_value: np.ndarray
    intervals: int


def _kronrod_panels(func, a, b):
    # a, b: 1-d arrays of panel ends; func maps (n,) -> (m, n)
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    x = mid[:, None] + half[:, None] * KRONROD_NODES[None, :]
    fx = np.asarray(func(x.ravel()), dtype=float)
    fx = fx.reshape(-1, len(a), 15)
    if not np.all(np.isfinite(fx)):
        raise DivergenceSuspected("integrand is not finite at a quadrature node")
    k = (fx @ KRONROD_WEIGHTS) * half
    g = (fx @ GAUSS7_WEIGHTS) * half
    ak = (np.abs(fx) @ KRONROD_WEIGHTS) * np.abs(half)
    return k, np.abs(k - g), ak


def adaptive_integrate(func, breakpoints, *, rtol=1e-12, atol=0.0, max_intervals=20000):
    """Globally adaptive Gauss-Kronrod integration over consecutive breakpoints.

    ``func`` is vectorised: it maps a 1-d array of abscissae to either a 1-d
    array or an ``(m, n)`` array (m integrands at once).  Every component must
    satisfy ``error <= max(rtol * abs_value, atol)``, where ``abs_value`` is the
    integral of the absolute integrand.  Raises NonConvergence when the panel
    budget is exhausted.
    """
    pts = np.asarray(breakpoints, dtype=float)
    if pts.ndim != 1 or len(pts) < 2 or np.any(np.diff(pts) <= 0):
        raise DomainError("breakpoints must be strictly increasing")
    # Kronrod nodes are interior, so probe the output shape at an interior point
    scalar = np.ndim(func(np.array([0.5 * (pts[0] + pts[1])]))) == 1

    def vfunc(x):
        out = np.asarray(func(x), dtype=float)
        return out[None, :] if out.ndim == 1 else out

    a, b = pts[:-1], pts[1:]
    val, err, absv = _kronrod_panels(vfunc, a, b)
    eps_floor = 50 * np.finfo(float).eps
    while True:
        err = np.maximum(err, eps_floor * absv)
        tot_abs = absv.sum(axis=1)
        tol = np.maximum(rtol * tot_abs, atol)
        tol = np.where(tol > 0, tol, np.finfo(float).tiny)
        norm_err = (err / tol[:, None]).max(axis=0)
        if norm_err.sum() <= 1.0:
            break
        if len(a) >= max_intervals:
            raise NonConvergence(
                f"adaptive quadrature hit the panel cap ({max_intervals})",
                value=_squeeze(val.sum(axis=1), scalar),
                error=_squeeze(err.sum(axis=1), scalar),
            )
        split = norm_err >= 0.5 / len(a)
        mid = 0.5 * (a[split] + b[split])
        na = np.concatenate([a[split], mid])
        nb = np.concatenate([mid, b[split]])
        v2, e2, a2 = _kronrod_panels(vfunc, na, nb)
        keep = ~split
        a = np.concatenate([a[keep], na])
        b = np.concatenate([b[keep], nb])
        val = np.concatenate([val[:, keep], v2], axis=1)
        err = np.concatenate([err[:, keep], e2], axis=1)
        absv = np.concatenate([absv[:, keep], a2], axis=1)
    return QuadResult(
        _squeeze(val.sum(axis=1), scalar),
        _squeeze(err.sum(axis=1), scalar),
        _squeeze(absv.sum(axis=1), scalar),
        len(a),
    )


def _squeeze(v, scalar):
    return float(v[0]) if scalar else v


def x_cut(k) -> float:
    return max(80.0, 20.0 + 10.0 * k)


def half_line_breakpoints(k, depth=40, xc=None):
    """0, geometric points 2^-depth..1 toward the origin, then doublings up to the cut."""
    xc = x_cut(k) if xc is None else xc
    up = [2.0**j for j in range(1, int(math.log2(xc)) + 1) if 2.0**j < xc]
    return np.concatenate([[0.0], 2.0 ** -np.arange(depth, -1, -1), up, [xc]])


def _tail_bound(h, xc):
    # majorant for int_xc^inf |h|, assuming h decays at least geometrically beyond xc
    h0 = np.abs(np.atleast_2d(h(np.array([xc]))))[:, 0]
    h1 = np.abs(np.atleast_2d(h(np.array([xc + 1.0]))))[:, 0]
    if not (np.all(np.isfinite(h0)) and np.all(np.isfinite(h1))):
        return None
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(h0 > 0, h1 / h0, 0.0)
    if np.any(ratio >= 1.0):
        return None
    with np.errstate(divide="ignore"):
        return np.where(ratio > 0, h0 / -np.log(ratio), 0.0)


MAX_CUT = 8192.0


def weighted_integral(k, integrand, *, rtol=1e-12, atol=0.0, max_intervals=20000):
    """int_0^inf integrand(x) w_k(x) dx by the adaptive engine.

    The finite cut starts at max(80, 20 + 10k) and is doubled until the tail
    majorant falls below max(rtol * absolute integral, atol).  Returns
    ``(value, error_bound, abs_value)``; the error bound includes the tail.
    """
    k = as_k(k)

    def h(x):
        with np.errstate(over="ignore", invalid="ignore"):
            return np.asarray(integrand(x)) * eval_w(k, x)

    xc = x_cut(k)
    while True:
        tail = _tail_bound(h, xc)
        if tail is not None:
            res = adaptive_integrate(
                h, half_line_breakpoints(k, xc=xc), rtol=rtol, atol=atol, max_intervals=max_intervals
            )
            if np.all(tail <= np.maximum(rtol * np.asarray(res.abs_value), atol)):
                break
        if xc >= MAX_CUT:
            raise DivergenceSuspected(f"integrand tail is not negligible at x={xc:g}")
        xc *= 2.0
    tail = float(tail[0]) if np.ndim(res.value) == 0 else tail
    return res.value, res.error + tail, res.abs_value


def _gauss_weighted(k, nodes):
    rule = gauss_laguerre_rule(k, nodes)
    return rule.nodes, rule.weights / (rule.nodes + k) ** 2


def inner_product(k, f, g, engine="gauss", tol=1e-12, *, nodes=DEFAULT_NODES, cross_check=False):
    """<f, g> = int_0^inf f g w_k dx.

    With ``cross_check=True`` both engines run and NonConvergence is raised if
    they differ by more than ``tol`` relative to int |f g| w_k.
    """
    k = as_k(k)
    if engine not in ("gauss", "adaptive"):
        raise DomainError(f"unknown engine {engine!r}")
    results = {}
    if engine == "gauss" or cross_check:
        x, wt = _gauss_weighted(k, nodes)
        vals = np.asarray(f(x)) * np.asarray(g(x))
        if not np.all(np.isfinite(vals)):
            raise DivergenceSuspected("integrand overflowed at Gauss nodes")
        results["gauss"] = (float(wt @ vals), float(wt @ np.abs(vals)))
    if engine == "adaptive" or cross_check:
        v, err, absv = weighted_integral(k, lambda x: np.asarray(f(x)) * np.asarray(g(x)), rtol=tol)
        if err > max(tol * absv, 1e-300) * 10:
            raise NonConvergence("adaptive inner product did not meet tolerance", value=v, error=err)
        results["adaptive"] = (v, absv)
    if cross_check:
        gap = abs(results["gauss"][0] - results["adaptive"][0])
        if gap > tol * max(results["gauss"][1], results["adaptive"][1]):
            raise NonConvergence(f"engines disagree by {gap:.3g}", value=results[engine][0], error=gap)
    return results[engine][0]


def family_values(k, count, x):
    """Values of the first ``count`` family members at ``x``, shape (count, len(x))."""
    fam = family(k)
    series = [fam.series(n) for n in range(count)]
    basis = series[-1].basis_values(np.asarray(x, dtype=float))
    out = np.empty((count, basis.shape[0]))
    for i, s in enumerate(series):
        out[i] = basis[:, : len(s.coeffs)] @ s.coeffs
    return out


@dataclass(frozen=True)
class GramMatrix:
    k: float
    entries: np.ndarray
    engine: str

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def relative(self) -> np.ndarray:
        d = np.sqrt(np.diag(self.entries))
        return self.entries / np.outer(d, d)

    @property
    def max_relative_offdiag(self) -> float:
        if self.size < 2:
            return 0.0
        r = np.abs(self.relative())
        np.fill_diagonal(r, 0.0)
        return float(r.max())

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.entries, self.entries.T))

    def is_positive_definite(self) -> bool:
        try:
            np.linalg.cholesky(self.entries)
        except np.linalg.LinAlgError:
            return False
        return True


def gram_matrix(k, N, engine="gauss", *, nodes=DEFAULT_NODES, tol=1e-13) -> GramMatrix:
    """G[i][j] = <L_{i+1}, L_{j+1}> over the first N family members."""
    k = as_k(k)
    if int(N) != N or N < 1:
        raise DomainError("Gram size must be a positive integer")
    N = int(N)
    if engine == "gauss":
        x, wt = _gauss_weighted(k, nodes)
        V = family_values(k, N, x)
        G = (V * wt) @ V.T
    elif engine == "adaptive":
        iu = np.triu_indices(N)

        def products(x):
            V = family_values(k, N, x)
            return V[iu[0]] * V[iu[1]]

        vals, err, absv = weighted_integral(k, products, rtol=tol)
        if np.any(err > 10 * tol * absv):
            raise NonConvergence("adaptive Gram entries did not meet tolerance")
        G = np.zeros((N, N))
        G[iu] = vals
    else:
        raise DomainError(f"unknown engine {engine!r}")
    G = np.triu(G) + np.triu(G, 1).T
    return GramMatrix(k, G, engine)


@dataclass(frozen=True)
class Expansion:
    k: float
    coefficients: np.ndarray
    norms2: np.ndarray
    target_norm2: float
    residuals: np.ndarray
    engine: str

    @property
    def strictly_decreasing(self) -> bool:
        return bool(np.all(np.diff(self.residuals) < 0))

    @property
    def non_increasing(self) -> bool:
        return bool(np.all(np.diff(self.residuals) <= 0))


def expand_function(k, target, N, engine="gauss", *, nodes=DEFAULT_NODES, tol=1e-13) -> Expansion:
    """Best-approximation coefficients of ``target`` in the family and squared residuals.

    ``residuals[M-1] = || target - sum_{i<M} c_i L_{i+1} ||^2`` for M = 1..N,
    computed directly rather than via Bessel's identity.
    """
    k = as_k(k)
    if int(N) != N or N < 1:
        raise DomainError("expansion order must be a positive integer")
    N = int(N)
    if engine == "gauss":
        x, wt = _gauss_weighted(k, nodes)
        t = np.asarray(target(x), dtype=float) * np.ones_like(x)
        if not np.all(np.isfinite(t)):
            raise DivergenceSuspected("target overflowed at Gauss nodes")
        V = family_values(k, N, x)
        tn = float(wt @ t**2)
        norms = (V**2) @ wt
        c = (V @ (wt * t)) / norms
        partial = np.cumsum(c[:, None] * V, axis=0)
        res = ((t - partial) ** 2) @ wt
    elif engine == "adaptive":
        def stacked(x):
            t = np.asarray(target(x), dtype=float) * np.ones_like(x)
            V = family_values(k, N, x)
            return np.vstack([t[None] ** 2, V**2, V * t])

        vals, err, absv = weighted_integral(k, stacked, rtol=tol)
        tn = float(vals[0])
        norms = vals[1 : N + 1]
        c = vals[N + 1 :] / norms

        def resid(x):
            t = np.asarray(target(x), dtype=float) * np.ones_like(x)
            V = family_values(k, N, x)
            return (t - np.cumsum(c[:, None] * V, axis=0)) ** 2

        # residuals shrink far below the target norm, so the tolerance is absolute
        res, _, _ = weighted_integral(k, resid, rtol=0.0, atol=tol * tn)
    else:
        raise DomainError(f"unknown engine {engine!r}")
    if not math.isfinite(tn):
        raise DivergenceSuspected("target norm is not finite")
    return Expansion(k, np.asarray(c), np.asarray(norms), tn, np.asarray(res), engine)
