"""The X1-Laguerre differential equation and its Sturm-Liouville coefficients.

The equation, for k > 0 and x in (0, inf), is

    -x y'' + ((x - k)/(x + k)) ((x + k + 1) y' - y) = lam * y.

Multiplying through by (x + k) gives the denominator-free *cleared form*

    -x(x + k) y'' + (x - k)(x + k + 1) y' - (x - k) y - lam (x + k) y = 0,

which is what the polynomial and shooting machinery works with.

Two Sturm-Liouville coefficient triples are provided.  They share

    q(x) = -(x - k) x^k e^{-x} / (x + k)^3,    w(x) = x^k e^{-x} / (x + k)^2,

and differ in the leading coefficient: ``Variant.NOTE`` takes
p(x) = x^k e^{-x}/(x + k)^2 as printed in the source note, while
``Variant.DERIVED`` takes p(x) = x^(k+1) e^{-x}/(x + k)^2, the integrating
factor that makes the SL equation equivalent to the equation above.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .polynomial import Polynomial, jet

_TINY = 1e-300


class Variant(str, enum.Enum):
    NOTE = "note"
    DERIVED = "derived"

    @property
    def label(self) -> str:
        return {"note": "NoteVerbatim", "derived": "SelfAdjointDerived"}[self.value]

    @classmethod
    def parse(cls, value) -> Variant:
        if isinstance(value, cls):
            return value
        s = str(value).strip().lower()
        aliases = {"noteverbatim": "note", "selfadjointderived": "derived"}
        try:
            return cls(aliases.get(s, s))
        except ValueError:
            raise DomainError(f"unknown coefficient variant {value!r}") from None


@dataclass(frozen=True)
class SLParameter:
    k: float

    def __post_init__(self):
        k = float(self.k)
        if not (math.isfinite(k) and k > 0):
            raise DomainError(f"k must be a positive real, got {self.k!r}")
        object.__setattr__(self, "k", k)

    def __float__(self):
        return self.k


def as_k(param) -> float:
    """Accept an :class:`SLParameter` or a bare number and return validated k."""
    if isinstance(param, SLParameter):
        return param.k
    return SLParameter(param).k


def _positive(x):
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise DomainError("coefficients are defined for x > 0 only")
    return x


def _xpow(x, a):
    # x**a through exp(a ln x); x below 1e-300 is treated as 0 (a > 0 here)
    safe = np.where(x < _TINY, 1.0, x)
    out = np.exp(a * np.log(safe))
    return np.where(x < _TINY, 0.0, out)


def _out(v):
    return float(v) if np.ndim(v) == 0 else v


def _p_exponent(k, variant) -> float:
    return k if Variant.parse(variant) is Variant.NOTE else k + 1.0


def eval_p(param, variant, x):
    k = as_k(param)
    x = _positive(x)
    return _out(_xpow(x, _p_exponent(k, variant)) * np.exp(-x) / (x + k) ** 2)


def eval_dp(param, variant, x):
    """Derivative p'(x) of the chosen variant's leading coefficient."""
    k = as_k(param)
    x = _positive(x)
    a = _p_exponent(k, variant)
    p = _xpow(x, a) * np.exp(-x) / (x + k) ** 2
    return _out(p * (a / x - 1.0 - 2.0 / (x + k)))


def eval_q(param, x):
    k = as_k(param)
    x = _positive(x)
    return _out(-(x - k) * _xpow(x, k) * np.exp(-x) / (x + k) ** 3)


def eval_w(param, x):
    k = as_k(param)
    x = _positive(x)
    return _out(_xpow(x, k) * np.exp(-x) / (x + k) ** 2)


def sqrt_w(param, x):
    """sqrt(w(x)), computed without forming w (keeps f*sqrt(w) finite)."""
    k = as_k(param)
    x = _positive(x)
    return _out(_xpow(x, 0.5 * k) * np.exp(-0.5 * x) / (x + k))


def ode_residual_gkm(param, lam, y, x):
    """LHS - RHS of the original (non-SL) equation at ``x``."""
    k = as_k(param)
    x = _positive(x)
    f, d1, d2 = jet(y, x)
    r = -x * d2 + ((x - k) / (x + k)) * ((x + k + 1.0) * d1 - f) - lam * f
    return _out(r)


def ode_residual_sl(param, variant, lam, y, x):
    """-(p y')' + q y - lam w y at ``x`` with the chosen variant's p."""
    k = as_k(param)
    x = _positive(x)
    f, d1, d2 = jet(y, x)
    p = eval_p(k, variant, x)
    dp = eval_dp(k, variant, x)
    r = -dp * d1 - p * d2 + eval_q(k, x) * f - lam * eval_w(k, x) * f
    return _out(r)


def sl_image(param, variant, y, x):
    """w^{-1} M_k[y] at ``x``: the action of the SL expression divided by the weight."""
    k = as_k(param)
    x = _positive(x)
    f, d1, d2 = jet(y, x)
    # p/w and p'/w are elementary; avoids 0/0 for tiny x
    ratio = x if Variant.parse(variant) is Variant.DERIVED else np.ones_like(x)
    a = _p_exponent(k, variant)
    dratio = ratio * (a / x - 1.0 - 2.0 / (x + k))
    return _out(-dratio * d1 - ratio * d2 - (x - k) / (x + k) * f)


def gkm_image(param, y, x):
    """Left-hand side of the original equation (the operator it defines)."""
    return ode_residual_gkm(param, 0.0, y, x)


@dataclass(frozen=True)
class ClearedForm:
    """Polynomial coefficients of the cleared form, affine in lam.

    ``apply(y)`` returns ``second*y'' + first*y' + zeroth*y`` where
    ``zeroth = zeroth_const + lam*zeroth_lambda``.
    """

    k: float
    lam: float
    second: Polynomial = field(init=False)
    first: Polynomial = field(init=False)
    zeroth_const: Polynomial = field(init=False)
    zeroth_lambda: Polynomial = field(init=False)

    def __post_init__(self):
        k = self.k
        object.__setattr__(self, "second", Polynomial([0.0, -k, -1.0]))
        object.__setattr__(self, "first", Polynomial([-k * (k + 1.0), 1.0, 1.0]))
        object.__setattr__(self, "zeroth_const", Polynomial([k, -1.0]))
        object.__setattr__(self, "zeroth_lambda", Polynomial([-k, -1.0]))

    @property
    def zeroth(self) -> Polynomial:
        return self.zeroth_const + self.lam * self.zeroth_lambda

    def apply(self, y: Polynomial) -> Polynomial:
        return self.second * y.deriv(2) + self.first * y.deriv() + self.zeroth * y

    def evaluate(self, y, x):
        f, d1, d2 = jet(y, x)
        return _out(self.second(x) * d2 + self.first(x) * d1 + self.zeroth(x) * f)


def cleared_form(param, lam) -> ClearedForm:
    return ClearedForm(as_k(param), float(lam))


@dataclass(frozen=True)
class EquivalenceReport:
    k: float
    variant: Variant
    max_discrepancy: float
    scale: float
    tol: float
    passed: bool
    vacuous: bool

    @property
    def relative_discrepancy(self) -> float:
        return self.max_discrepancy / self.scale if self.scale > 0 else 0.0


def check_equivalence(param, variant, sample_polynomials, sample_points, tol=1e-10, lambdas=(0.0, 1.0, 2.5)):
    """Compare the SL residual against w times the residual of the original equation.

    The two agree identically iff the variant's SL equation is equivalent to the
    original one.  Discrepancies are measured relative to the largest term
    magnitude encountered; a sample set made only of zero functions is vacuous.
    """
    k = as_k(param)
    variant = Variant.parse(variant)
    samples = list(sample_polynomials)
    x = _positive(np.asarray(list(sample_points), dtype=float))
    if not samples or x.size == 0:
        raise DomainError("check_equivalence needs nonempty samples and points")
    w = eval_w(k, x)
    worst = 0.0
    scale = 0.0
    for y in samples:
        f, d1, d2 = jet(y, x)
        terms = np.abs(x * d2) + np.abs((x - k) / (x + k)) * (np.abs((x + k + 1) * d1) + np.abs(f))
        for lam in lambdas:
            sl = ode_residual_sl(k, variant, lam, y, x)
            gkm = ode_residual_gkm(k, lam, y, x)
            worst = max(worst, float(np.max(np.abs(sl - w * gkm))))
            scale = max(scale, float(np.max(w * (terms + abs(lam) * np.abs(f)))))
    vacuous = scale == 0.0
    passed = vacuous or worst <= tol * scale
    return EquivalenceReport(k, variant, worst, scale, tol, passed, vacuous)
