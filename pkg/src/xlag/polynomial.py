"""Dense real polynomials in the monomial basis and smooth-function jets."""

from __future__ import annotations

import numpy as np


_SPLITTER = 134217729.0  # 2**27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, al * bl - (((p - ah * bh) - al * bh) - ah * bl)


class Polynomial:
    """Real polynomial stored as ascending monomial coefficients.

    Trailing exact zeros are trimmed, so the leading coefficient is nonzero
    unless the polynomial is identically zero (stored as ``[0.0]``).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.array(np.atleast_1d(coeffs), dtype=float)
        if c.ndim != 1:
            raise ValueError("coefficients must be a flat sequence")
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else np.zeros(1)
        c.setflags(write=False)
        self.coeffs = c

    @classmethod
    def identity(cls):
        return cls([0.0, 1.0])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> float:
        return float(self.coeffs[-1])

    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0.0

    def __call__(self, x):
        """Compensated Horner evaluation; vectorised over ``x``.

        Accurate as if computed in twice the working precision, then rounded.
        """
        x = np.asarray(x, dtype=float)
        acc = np.full(x.shape, self.coeffs[-1])
        err = np.zeros(x.shape)
        for c in self.coeffs[-2::-1]:
            p, pe = _two_prod(acc, x)
            acc, se = _two_sum(p, c)
            err = err * x + (pe + se)
        out = acc + err
        return out if out.ndim else float(out)

    def horner(self, x):
        """Plain Horner evaluation."""
        x = np.asarray(x, dtype=float)
        acc = np.full(x.shape, self.coeffs[-1])
        for c in self.coeffs[-2::-1]:
            acc = acc * x + c
        return acc if acc.ndim else float(acc)

    def eval_terms(self, x):
        """Term-by-term summation (reference path for Horner)."""
        x = np.asarray(x, dtype=float)
        powers = x[..., None] ** np.arange(len(self.coeffs))
        out = powers @ self.coeffs
        return out if np.ndim(out) else float(out)

    def deriv(self, m: int = 1) -> Polynomial:
        c = self.coeffs
        for _ in range(m):
            if len(c) == 1:
                return Polynomial([0.0])
            c = c[1:] * np.arange(1, len(c))
        return Polynomial(c)

    def jet(self, x):
        """Values of (P, P', P'') at ``x``."""
        d1 = self.deriv()
        return self(x), d1(x), d1.deriv()(x)

    def monic(self) -> Polynomial:
        if self.is_zero():
            raise ValueError("zero polynomial has no monic normalisation")
        return Polynomial(self.coeffs / self.coeffs[-1])

    def max_abs_coeff(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        if np.isscalar(other):
            return Polynomial([float(other)])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        out = np.zeros(n)
        out[: len(self.coeffs)] += self.coeffs
        out[: len(other.coeffs)] += other.coeffs
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def __repr__(self):
        return f"Polynomial({self.coeffs.tolist()})"


def jet(y, x, h=None):
    """Return ``(y, y', y'')`` at ``x`` for the supported function kinds.

    ``y`` may be a :class:`Polynomial` (or anything with a ``jet`` method), a
    3-tuple of callables ``(f, df, d2f)``, or a bare callable, in which case
    the derivatives come from fourth-order central differences.
    """
    if hasattr(y, "jet"):
        return y.jet(x)
    if isinstance(y, (tuple, list)):
        if len(y) != 3:
            raise ValueError("expected (f, f', f'') triple")
        return tuple(f(x) for f in y)
    x = np.asarray(x, dtype=float)
    if h is None:
        h = 1e-3 * np.maximum(np.abs(x), 1e-2)
    f = [y(x + j * h) for j in (-2, -1, 0, 1, 2)]
    d1 = (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * h)
    d2 = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h)
    return f[2], d1, d2
