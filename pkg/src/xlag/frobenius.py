"""Local solution structure at the regular singular point x = 0.

The cleared form has a regular singular point at 0 with exponents {0, -k}.
The analytic branch (exponent 0) is given by an explicit three-term
recurrence.  The second solution at lam = 0 is built by reduction of order,

    phi2(x) = phi1(x) * int_1^x dt / (phi1(t)^2 p(t)),    phi1 = x + k + 1,

with the integral evaluated by Gauss-Legendre panels on a geometric mesh
toward 0 and a unit mesh toward infinity.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from .coefficients import Variant, _p_exponent, as_k, cleared_form, eval_p
from .errors import DomainError, NonConvergence
from .polynomial import Polynomial

PANEL_NODES = 20
PANEL_CHECK_NODES = 30
PANEL_RTOL = 1e-13

_GL = np.polynomial.legendre.leggauss(PANEL_NODES)
_GL_CHECK = np.polynomial.legendre.leggauss(PANEL_CHECK_NODES)


def phi1(k) -> Polynomial:
    """x + k + 1, the polynomial solution at lam = 0."""
    k = as_k(k)
    return Polynomial([k + 1.0, 1.0])


def indicial_polynomial(k) -> np.ndarray:
    """Coefficients (descending) of the indicial polynomial at 0.

    Assembled from the cleared form P2 y'' + P1 y' + P0 y as
    P2'(0) r (r - 1) + P1(0) r, then normalised to be monic.
    """
    cf = cleared_form(as_k(k), 0.0)
    a = cf.second.deriv()(0.0)
    b = cf.first(0.0)
    # sanity: the singular point is regular, i.e. P2(0) = 0 and P2'(0) != 0
    if cf.second(0.0) != 0.0 or a == 0.0:
        raise DomainError("x = 0 is not a regular singular point")
    c = np.array([a, b - a, 0.0])
    return c / a


def indicial_exponents(k):
    """The two local exponents at 0, larger first."""
    r = np.roots(indicial_polynomial(k))
    r = np.sort(np.real_if_close(r).astype(float))[::-1]
    return float(r[0]) + 0.0, float(r[1]) + 0.0


@dataclass(frozen=True)
class FrobeniusSeries:
    """Analytic-branch series sum_{m<=J} a_m x^m with a_0 = 1."""

    k: float
    lam: float
    exponent: float
    coeffs: np.ndarray
    order: int

    def polynomial(self) -> Polynomial:
        return Polynomial(self.coeffs)

    def __call__(self, x):
        return self.polynomial()(x)

    def jet(self, x):
        return self.polynomial().jet(x)

    def residual(self, x):
        """Cleared-form residual of the truncated series at ``x``."""
        return cleared_form(self.k, self.lam).evaluate(self.polynomial(), x)

    def truncation_estimate(self, x) -> float:
        """Size of the last retained term relative to the series value."""
        x = float(x)
        return abs(self.coeffs[-1] * x**self.order) / max(abs(self(x)), 1e-300)


def series_coefficients(k, lam, J):
    """a_0..a_J of the analytic branch in the arithmetic of ``k`` and ``lam``.

    Matching x^m in the cleared form gives

        k (m+1)(m+1+k) a_{m+1} = (k(1-lam) - m(m-2)) a_m + (m-2-lam) a_{m-1}.

    Passing :class:`fractions.Fraction` inputs gives exact coefficients.
    """
    one = k / k
    a = [one]
    prev = 0 * one
    for m in range(J):
        nxt = ((k * (1 - lam) - m * (m - 2)) * a[m] + (m - 2 - lam) * prev) / (k * (m + 1) * (m + 1 + k))
        prev = a[m]
        a.append(nxt)
    return a


def frobenius_series(k, lam, J) -> FrobeniusSeries:
    """Analytic-branch series of order J (a_0 = 1) at spectral parameter ``lam``."""
    k = as_k(k)
    if int(J) != J or J < 2:
        raise DomainError("series order J must be an integer >= 2")
    a = np.array(series_coefficients(k, float(lam), int(J)), dtype=float)
    a.setflags(write=False)
    return FrobeniusSeries(k, float(lam), 0.0, a, int(J))


def _gl_panels(g, lo, hi, rule=_GL):
    # vectorised Gauss-Legendre over panels [lo_i, hi_i]
    t, wt = rule
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = mid[..., None] + half[..., None] * t
    return (g(x) @ wt) * half


class SecondSolution:
    """Reduction-of-order solution phi2 for one (k, variant).

    Integral checkpoints at 2^-j (below 1) and at the integers (above 1) are
    cached; the cache only grows and is guarded by a lock.
    """

    def __init__(self, k, variant):
        self.k = as_k(k)
        self.variant = Variant.parse(variant)
        self._a = _p_exponent(self.k, self.variant)
        self._phi1 = phi1(self.k)
        self._lock = threading.Lock()
        # below[j] = int_{2^-j}^1 g ; above[m-1] = int_1^m g
        self._below = [0.0]
        self._above = [0.0]
        self._below_err = [0.0]
        self._above_err = [0.0]

    def p(self, x):
        return eval_p(self.k, self.variant, x)

    def integrand(self, x):
        """1 / (phi1^2 p), evaluated without forming p."""
        x = np.asarray(x, dtype=float)
        k = self.k
        with np.errstate(over="ignore"):
            return np.exp(x - self._a * np.log(x)) * ((x + k) / (x + k + 1.0)) ** 2

    def _panel(self, lo, hi):
        v = _gl_panels(self.integrand, lo, hi)
        check = _gl_panels(self.integrand, lo, hi, _GL_CHECK)
        return check, np.abs(check - v)

    def _extend_below(self, j):
        with self._lock:
            n = len(self._below) - 1
            if n >= j:
                return
            idx = np.arange(n, j, dtype=float)
            v, e = self._panel(2.0 ** -(idx + 1), 2.0**-idx)
            if np.any(e > PANEL_RTOL * np.abs(v)):
                raise NonConvergence("reduction-of-order panel rule did not converge near 0",
                                     value=self._below[-1], error=float(e.max()))
            self._below.extend(self._below[-1] + np.cumsum(v))
            self._below_err.extend(self._below_err[-1] + np.cumsum(e))

    def _extend_above(self, m):
        with self._lock:
            n = len(self._above)
            if n >= m:
                return
            idx = np.arange(n, m, dtype=float)
            v, e = self._panel(idx, idx + 1.0)
            if np.any(e > PANEL_RTOL * np.abs(v)):
                raise NonConvergence("reduction-of-order panel rule did not converge",
                                     value=self._above[-1], error=float(e.max()))
            self._above.extend(self._above[-1] + np.cumsum(v))
            self._above_err.extend(self._above_err[-1] + np.cumsum(e))

    def integral(self, x, with_error=False):
        """I(x) = int_1^x dt/(phi1^2 p), signed (negative for x < 1)."""
        x = np.asarray(x, dtype=float)
        if np.any(~(x > 0)) or np.any(~np.isfinite(x)):
            raise DomainError("phi2 is defined for finite x > 0 only")
        flat = np.atleast_1d(x).ravel()
        out = np.zeros_like(flat)
        err = np.zeros_like(flat)
        lo_mask = flat < 1.0
        if lo_mask.any():
            xs = flat[lo_mask]
            j = np.floor(-np.log2(xs)).astype(int)
            # guard the floor against rounding at exact powers of two
            j = np.where(2.0 ** -(j + 1) > xs, j + 1, j)
            j = np.where(2.0**-j < xs, j - 1, j)
            self._extend_below(int(j.max()))
            below = np.asarray(self._below)
            part, e = self._panel(xs, 2.0**-j)
            out[lo_mask] = -(below[j] + part)
            err[lo_mask] = np.asarray(self._below_err)[j] + e
        hi_mask = ~lo_mask
        if hi_mask.any():
            xs = flat[hi_mask]
            m = np.floor(xs).astype(int)
            self._extend_above(int(m.max()))
            above = np.asarray(self._above)
            part, e = self._panel(m.astype(float), xs)
            out[hi_mask] = above[m - 1] + part
            err[hi_mask] = np.asarray(self._above_err)[m - 1] + e
        out = out.reshape(np.shape(x))
        err = err.reshape(np.shape(x))
        if np.ndim(x) == 0:
            out, err = float(out), float(err)
        return (out, err) if with_error else out

    def __call__(self, x):
        I = self.integral(x)
        return self._phi1(x) * I

    def jet(self, x):
        """(phi2, phi2', phi2'') from the defining formula.

        phi2' = I + 1/(phi1 p) and phi2'' = 2 g + phi1 g' with g = 1/(phi1^2 p).
        """
        x = np.asarray(x, dtype=float)
        I = self.integral(x)
        f1 = self._phi1(x)
        g = self.integrand(x)
        dg = -g * (2.0 / f1 + self._a / x - 1.0 - 2.0 / (x + self.k))
        return f1 * I, I + f1 * g, 2.0 * g + f1 * dg


_cache = {}
_cache_lock = threading.Lock()


def second_solution(k, variant) -> SecondSolution:
    key = (as_k(k), Variant.parse(variant))
    with _cache_lock:
        if key not in _cache:
            _cache[key] = SecondSolution(*key)
        return _cache[key]


def phi2(k, variant, x):
    """Reduction-of-order second solution at ``x`` (> 0); phi2(1) = 0."""
    return second_solution(k, variant)(x)


@dataclass(frozen=True)
class WronskianReport:
    k: float
    variant: Variant
    points: np.ndarray
    values: np.ndarray
    max_deviation: float


def wronskian_check(k, variant, points, *, p_variant=None, h_rel=1e-3) -> WronskianReport:
    """p * (phi1 phi2' - phi1' phi2) on ``points``; should equal 1.

    phi2' is taken by a fourth-order central difference of the quadrature
    values, so the check exercises the integral itself.  ``p_variant`` lets
    the caller multiply by another variant's p (a deliberate mismatch).
    """
    k = as_k(k)
    variant = Variant.parse(variant)
    x = np.asarray(points, dtype=float)
    if x.ndim != 1 or x.size == 0 or np.any(~(x > 0)):
        raise DomainError("Wronskian grid must be a nonempty set of positive points")
    sol = second_solution(k, variant)
    h = h_rel * np.minimum(x, 1.0)
    f = [sol(x + j * h) for j in (-2, -1, 1, 2)]
    d2 = (f[0] - 8.0 * f[1] + 8.0 * f[2] - f[3]) / (12.0 * h)
    P1 = phi1(k)
    pv = variant if p_variant is None else Variant.parse(p_variant)
    vals = eval_p(k, pv, x) * (P1(x) * d2 - sol(x))
    return WronskianReport(k, variant, x, vals, float(np.max(np.abs(vals - 1.0))))


@dataclass(frozen=True)
class ExponentFit:
    k: float
    variant: Variant
    slope: float
    expected: float
    integer_k: bool


def phi2_local_exponent(k, variant, lo=1e-6, hi=1e-3, points=13) -> ExponentFit:
    """Log-log slope of |phi2| near 0, with the expected value min(0, 1 - a).

    Here a is the exponent of x in p.  For a = 1 the slope carries a
    logarithmic factor; integer k is flagged for that reason.
    """
    k = as_k(k)
    variant = Variant.parse(variant)
    x = np.geomspace(lo, hi, points)
    v = np.abs(phi2(k, variant, x))
    keep = v > 1e-250
    if keep.sum() < 2:
        raise NonConvergence("too few usable points for the slope fit")
    slope = np.polyfit(np.log(x[keep]), np.log(v[keep]), 1)[0]
    a = _p_exponent(k, variant)
    return ExponentFit(k, variant, float(slope), min(0.0, 1.0 - a), float(k).is_integer())
