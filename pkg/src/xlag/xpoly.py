"""X1-Laguerre polynomials as polynomial eigenfunctions of the cleared form.

The member with index n has degree n + 1 and eigenvalue n; there is no
constant member.  Members are normalised to be monic.

Two representations are built from the same eigen-condition:

* :func:`build_xlaguerre` works in the monomial basis and returns a
  :class:`~xlag.polynomial.Polynomial`.  Accurate evaluation degrades
  roughly like e^n relative to the coefficient scale, hence the default cap.
* :func:`build_xlaguerre_series` works in the generalised Laguerre basis
  L_j^(k), where the cleared form is banded; evaluation stays accurate to
  high degree.  Quadrature code uses this representation.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

from .coefficients import as_k, cleared_form
from .errors import ConsistencyError, DomainError, RankError
from .polynomial import Polynomial, _two_prod

MAX_INDEX = 30
SERIES_MAX_INDEX = 400
CONSISTENCY_TOL = 1e-10
RANK_TOL = 1e-12


class LaguerreSeries:
    """Finite expansion sum_j a_j L_j^(alpha)(x) in generalised Laguerre polynomials."""

    __slots__ = ("alpha", "coeffs")

    def __init__(self, alpha, coeffs):
        if not alpha > -1:
            raise DomainError("alpha must exceed -1")
        self.alpha = float(alpha)
        c = np.array(np.atleast_1d(coeffs), dtype=float)
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else np.zeros(1)
        c.setflags(write=False)
        self.coeffs = c

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def basis_values(self, x):
        """Array of L_j^(alpha)(x) for j = 0..degree, stacked on the last axis."""
        x = np.asarray(x, dtype=float)
        a = self.alpha
        out = np.empty(x.shape + (len(self.coeffs),))
        out[..., 0] = 1.0
        if len(self.coeffs) > 1:
            out[..., 1] = 1.0 + a - x
        for j in range(1, len(self.coeffs) - 1):
            out[..., j + 1] = ((2 * j + 1 + a - x) * out[..., j] - (j + a) * out[..., j - 1]) / (j + 1)
        return out

    def __call__(self, x):
        v = self.basis_values(x) @ self.coeffs
        return v if np.ndim(v) else float(v)

    def deriv(self) -> LaguerreSeries:
        # d/dx L_j^(a) = -L_{j-1}^(a+1)
        if len(self.coeffs) == 1:
            return LaguerreSeries(self.alpha + 1, [0.0])
        return LaguerreSeries(self.alpha + 1, -self.coeffs[1:])

    def jet(self, x):
        d1 = self.deriv()
        return self(x), d1(x), d1.deriv()(x)

    def to_polynomial(self) -> Polynomial:
        out = Polynomial([0.0])
        for j, a in enumerate(self.coeffs):
            if a:
                out = out + a * classical_laguerre(self.alpha, j)
        return out

    def __repr__(self):
        return f"LaguerreSeries(alpha={self.alpha}, coeffs={self.coeffs.tolist()})"


def eval_poly(P, x):
    """Evaluate a polynomial (Horner for monomial coefficients)."""
    return P(x)


def classical_laguerre(alpha, n) -> Polynomial:
    """Generalised Laguerre polynomial L_n^(alpha), value at 0 = binom(n+alpha, n)."""
    if not alpha > -1:
        raise DomainError("alpha must exceed -1")
    if n < 0:
        raise DomainError("degree must be nonnegative")
    x = Polynomial.identity()
    prev, cur = Polynomial([1.0]), Polynomial([1.0 + alpha]) - x
    if n == 0:
        return prev
    for j in range(1, n):
        prev, cur = cur, ((2 * j + 1 + alpha - x) * cur - (j + alpha) * prev) * (1.0 / (j + 1))
    return cur


def spectrum_value(n) -> float:
    if int(n) != n or n < 0:
        raise DomainError("spectral index must be a nonnegative integer")
    return float(n)


@dataclass(frozen=True)
class SpectrumIndex:
    n: int

    @property
    def lambda_n(self) -> float:
        return spectrum_value(self.n)


def monomial_system(k, m, lam):
    """Coefficient-matching system for a monic degree-m polynomial.

    Column j holds the coefficients (powers 0..m+1) of the cleared form applied
    to x^j.  Returns ``(A, b)`` where ``A`` has the m unknown columns
    c_0..c_{m-1} and ``b`` is minus the column of the fixed leading term.
    """
    cf = cleared_form(k, lam)
    cols = np.zeros((m + 2, m + 1))
    for j in range(m + 1):
        e = np.zeros(j + 1)
        e[j] = 1.0
        r = cf.apply(Polynomial(e)).coeffs
        cols[: len(r), j] = r
    return cols[:, :m], -cols[:, m]


def laguerre_system(k, m, lam):
    """Same eigen-condition in the basis L_j^(k); the matrix is tridiagonal.

    Uses cleared(y) = -(x+k) T[y] + 2x y' - (x-k) y - lam (x+k) y with
    T[y] = x y'' + (k+1-x) y', for which T[L_j^(k)] = -j L_j^(k).  The
    leading coefficient a_m = (-1)^m m! makes the result monic.
    """
    cols = np.zeros((m + 2, m + 1))
    for j in range(m + 1):
        s = j - lam - 1.0
        cols[j + 1, j] = -s * (j + 1)
        cols[j, j] = s * (2 * j + k + 1) + k * (j - lam + 1.0) + 2.0 * j
        if j > 0:
            cols[j - 1, j] = -(j + k) * (j - lam + 1.0)
    lead = (-1.0) ** m * math.factorial(m)
    return cols[:, :m], -cols[:, m] * lead, lead


def _adapted_scale(x):
    # |x_j|, with (numerically) zero entries filled by log-linear interpolation
    a = np.abs(x)
    nb = np.maximum(np.concatenate([[0.0], a[:-1]]), np.concatenate([a[1:], [0.0]]))
    nz = a > 1e-12 * nb
    if not nz.any():
        return np.ones_like(a)
    idx = np.arange(len(a))
    return np.exp(np.interp(idx, idx[nz], np.log(a[nz])))


def _qr_pass(A, b, cs, rank_tol=None):
    rs = np.max(np.abs(A * cs), axis=1)
    rs = np.where(rs > 0, rs, np.maximum(np.abs(b), 1.0))
    As, bs = A * cs / rs[:, None], b / rs
    Q, R = np.linalg.qr(As)
    d = np.abs(np.diag(R))
    if rank_tol is not None and d.min() <= rank_tol * d.max():
        raise RankError(f"coefficient system is rank deficient (min/max |R_ii| = {d.min() / d.max():.3g})")
    y = np.linalg.solve(R, Q.T @ bs)
    r = As @ y - bs
    denom = np.linalg.norm(As, 2) * np.linalg.norm(y) + np.linalg.norm(bs)
    return y * cs, float(np.linalg.norm(r) / denom) if denom > 0 else 0.0


def _exact_residual(A, b, x):
    # b - A x with each row summed exactly (error-free products + fsum)
    p, e = _two_prod(A, x[None, :])
    return np.array([math.fsum([bi, *(-pi), *(-ei)]) for bi, pi, ei in zip(b, p, e)])


def solve_overdetermined(A, b, tol=CONSISTENCY_TOL, rank_tol=RANK_TOL, max_passes=6, refine_steps=2):
    """QR least squares with rank and consistency checks.

    Rows are scaled to unit max-norm.  The first pass scales columns to unit
    2-norm and carries the rank check; later passes rescale each column by the magnitude of the current
    solution component, which makes the result accurate componentwise (not
    just normwise) when the unknowns span many orders of magnitude.
    Returns ``(x, backward_error)`` measured in the final scaled variables.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    if A.shape[1] == 0:
        err = 0.0 if not np.any(b) else 1.0
        if err > tol:
            raise ConsistencyError("coefficient system is inconsistent")
        return np.zeros(0), err
    norms = np.linalg.norm(A, axis=0)
    if np.any(norms == 0):
        raise RankError("coefficient system has a zero column")
    x, err = _qr_pass(A, b, 1.0 / norms, rank_tol)
    for _ in range(max_passes - 1):
        x_new, err = _qr_pass(A, b, _adapted_scale(x))
        settled = np.allclose(x_new, x, rtol=1e-13, atol=0.0)
        x = x_new
        if settled:
            break
    # iterative refinement with residuals accumulated in extra precision
    cs = _adapted_scale(x)
    for _ in range(refine_steps):
        dx, _ = _qr_pass(A, _exact_residual(A, b, x), cs)
        x = x + dx
    _, err = _qr_pass(A, b, cs)
    if err > tol:
        raise ConsistencyError(f"coefficient system is inconsistent (backward error {err:.3g})")
    return x, err


def _check_index(n, cap):
    if int(n) != n or n < 0:
        raise DomainError("index n must be a nonnegative integer")
    if n > cap:
        raise DomainError(f"index n={n} exceeds the configured cap {cap}")
    return int(n)


def build_xlaguerre(k, n, *, cap=MAX_INDEX, tol=CONSISTENCY_TOL) -> Polynomial:
    """Monic degree-(n+1) polynomial solving the equation with lam = n."""
    k = as_k(k)
    n = _check_index(n, cap)
    m = n + 1
    A, b = monomial_system(k, m, float(n))
    c, _ = solve_overdetermined(A, b, tol=tol)
    return Polynomial(np.append(c, 1.0))


def build_xlaguerre_series(k, n, *, cap=SERIES_MAX_INDEX, tol=CONSISTENCY_TOL) -> LaguerreSeries:
    """Laguerre-basis representation of :func:`build_xlaguerre` (same monic member)."""
    k = as_k(k)
    n = _check_index(n, cap)
    m = n + 1
    A, b, lead = laguerre_system(k, m, float(n))
    a, _ = solve_overdetermined(A, b, tol=tol)
    return LaguerreSeries(k, np.append(a, lead))


class XLaguerreFamily:
    """Lazily built members for one k.  Thread-safe, append-only cache."""

    def __init__(self, k, cap=MAX_INDEX):
        self.k = as_k(k)
        self.cap = cap
        self._poly = {}
        self._series = {}
        self._lock = threading.Lock()

    def member(self, n) -> Polynomial:
        with self._lock:
            if n not in self._poly:
                self._poly[n] = build_xlaguerre(self.k, n, cap=self.cap)
            return self._poly[n]

    def series(self, n) -> LaguerreSeries:
        with self._lock:
            if n not in self._series:
                self._series[n] = build_xlaguerre_series(self.k, n)
            return self._series[n]

    def members(self, count):
        return [self.member(n) for n in range(count)]

    def snapshot(self):
        with self._lock:
            return dict(self._poly)


_families = {}
_families_lock = threading.Lock()


def family(k) -> XLaguerreFamily:
    k = as_k(k)
    with _families_lock:
        if k not in _families:
            _families[k] = XLaguerreFamily(k)
        return _families[k]


@dataclass(frozen=True)
class ConstantCheckRow:
    lam: float
    residual: Polynomial
    nonzero: bool


@dataclass(frozen=True)
class ConstantCheckReport:
    k: float
    rows: tuple
    confirmed: bool


def assert_no_constant_eigenpolynomial(k, lambda_grid) -> ConstantCheckReport:
    """Substitute y = 1 into the cleared form for each lam; the residual must never vanish."""
    k = as_k(k)
    grid = [float(v) for v in lambda_grid]
    if not grid:
        raise DomainError("lambda grid must be nonempty")
    one = Polynomial([1.0])
    rows = []
    for lam in grid:
        r = cleared_form(k, lam).apply(one)
        scale = max(1.0, abs(lam)) * max(1.0, k)
        rows.append(ConstantCheckRow(lam, r, r.max_abs_coeff() > 1e-14 * scale))
    return ConstantCheckReport(k, tuple(rows), all(r.nonzero for r in rows))


def sample_points(k, n, count=64):
    """Points spanning (0, beyond the largest zero] of member n."""
    return np.linspace(0.0, 4.0 * (n + 1) + 2.0 * k + 2.0, count + 1)[1:]


def eigen_residual(k, n, P=None, x=None) -> float:
    """Scaled cleared-form residual of member n at lam = n.

    max_x |C[P](x)| / max_x (|P2 P''| + |P1 P'| + |P0 P|)(x), where C is the
    cleared form with coefficients P2, P1, P0.
    """
    k = as_k(k)
    P = family(k).member(n) if P is None else P
    x = sample_points(k, n) if x is None else np.asarray(x, dtype=float)
    cf = cleared_form(k, float(n))
    f, d1, d2 = P.jet(x)
    scale = np.abs(cf.second(x) * d2) + np.abs(cf.first(x) * d1) + np.abs(cf.zeroth(x) * f)
    return float(np.max(np.abs(cf.evaluate(P, x))) / np.max(scale))
