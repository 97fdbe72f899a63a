import numpy as np
import pytest
import sympy as sp

from xlag.coefficients import (
    SLParameter,
    Variant,
    check_equivalence,
    cleared_form,
    eval_dp,
    eval_p,
    eval_q,
    eval_w,
    gkm_image,
    ode_residual_gkm,
    ode_residual_sl,
    sl_image,
    sqrt_w,
)
from xlag.errors import DomainError
from xlag.polynomial import Polynomial

KS = [0.5, 1.0, 2.0, 5.0]


def symbolic_discrepancy(p_power):
    """sympy: SL residual minus w times the original residual, simplified."""
    x, k, lam = sp.symbols("x k lam", positive=True)
    y = sp.Function("y")(x)
    w = x**k * sp.exp(-x) / (x + k) ** 2
    q = -(x - k) * x**k * sp.exp(-x) / (x + k) ** 3
    p = x**p_power(k) * sp.exp(-x) / (x + k) ** 2
    sl = -sp.diff(p * sp.diff(y, x), x) + q * y - lam * w * y
    gkm = -x * sp.diff(y, x, 2) + (x - k) / (x + k) * ((x + k + 1) * sp.diff(y, x) - y) - lam * y
    return sp.simplify(sp.expand(sl - w * gkm) / (x**k * sp.exp(-x)))


def test_symbolic_oracle_derived_is_equivalent():
    assert symbolic_discrepancy(lambda k: k + 1) == 0


def test_symbolic_oracle_note_is_not():
    assert symbolic_discrepancy(lambda k: k) != 0


@pytest.mark.parametrize("k", KS)
def test_check_equivalence_matches_symbolic_oracle(k):
    samples = [Polynomial([1.0]), Polynomial([k + 1.0, 1.0]), Polynomial([0.3, -1.0, 0.2, 0.05])]
    pts = np.geomspace(0.05, 30, 25)
    assert check_equivalence(k, Variant.DERIVED, samples, pts).passed
    rep = check_equivalence(k, Variant.NOTE, samples, pts)
    assert not rep.passed
    assert rep.relative_discrepancy > 1e-3


def test_equivalence_with_zero_samples_is_vacuous():
    rep = check_equivalence(1.0, "note", [Polynomial([0.0])], [0.5, 1.0])
    assert rep.vacuous and rep.passed


@pytest.mark.parametrize("variant", list(Variant))
def test_dp_matches_finite_difference(variant):
    x = np.array([0.3, 1.0, 4.0, 12.0])
    h = 1e-6 * x
    fd = (eval_p(2.5, variant, x + h) - eval_p(2.5, variant, x - h)) / (2 * h)
    np.testing.assert_allclose(eval_dp(2.5, variant, x), fd, rtol=1e-7)


def test_coefficient_values():
    k, x = 2.0, 3.0
    w = x**k * np.exp(-x) / (x + k) ** 2
    assert eval_w(k, x) == pytest.approx(w, rel=1e-15)
    assert eval_p(k, "note", x) == pytest.approx(w, rel=1e-15)
    assert eval_p(k, "derived", x) == pytest.approx(x * w, rel=1e-15)
    assert eval_q(k, x) == pytest.approx(-(x - k) * w / (x + k), rel=1e-15)
    assert sqrt_w(k, x) ** 2 == pytest.approx(w, rel=1e-14)


def test_tiny_and_large_x_do_not_overflow():
    x = np.array([1e-310, 1e-200, 700.0])
    v = eval_w(3.0, x)
    assert np.all(np.isfinite(v))
    assert v[0] == 0.0


@pytest.mark.parametrize("bad", [0.0, -1.0, float("nan"), float("inf")])
def test_invalid_k(bad):
    with pytest.raises(DomainError):
        SLParameter(bad)
    with pytest.raises(DomainError):
        eval_w(bad, 1.0)


def test_invalid_x():
    with pytest.raises(DomainError):
        eval_p(1.0, "note", 0.0)
    with pytest.raises(DomainError):
        eval_w(1.0, np.array([1.0, -2.0]))


def test_variant_parsing():
    assert Variant.parse("NoteVerbatim") is Variant.NOTE
    assert Variant.parse("derived") is Variant.DERIVED
    assert Variant.DERIVED.label == "SelfAdjointDerived"
    with pytest.raises(DomainError):
        Variant.parse("other")


def test_first_solution_solves_original_equation():
    x = np.linspace(0.01, 40, 50)
    for k in KS:
        r = ode_residual_gkm(k, 0.0, Polynomial([k + 1.0, 1.0]), x)
        np.testing.assert_allclose(r / (1 + x), 0.0, atol=1e-13)


@pytest.mark.parametrize("variant", list(Variant))
def test_sl_image_is_residual_over_weight(variant):
    P = Polynomial([1.0, -0.5, 0.25])
    x = np.geomspace(0.01, 20, 30)
    lhs = sl_image(1.5, variant, P, x)
    rhs = ode_residual_sl(1.5, variant, 0.0, P, x) / eval_w(1.5, x)
    np.testing.assert_allclose(lhs, rhs, rtol=1e-10, atol=1e-12)


def test_cleared_form_is_original_times_denominator():
    P = Polynomial([0.2, 1.0, -0.3, 0.1])
    x = np.linspace(0.1, 10, 20)
    for lam in (0.0, 1.7):
        cf = cleared_form(3.0, lam)
        np.testing.assert_allclose(
            cf.evaluate(P, x), (x + 3.0) * ode_residual_gkm(3.0, lam, P, x), rtol=1e-12, atol=1e-10
        )
    np.testing.assert_allclose(gkm_image(3.0, P, x), ode_residual_gkm(3.0, 0.0, P, x))
