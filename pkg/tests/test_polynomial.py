from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xlag.polynomial import Polynomial, jet

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)


def exact_value(coeffs, x):
    xf = Fraction(x)
    return float(sum(Fraction(c) * xf**j for j, c in enumerate(coeffs)))


def test_trims_trailing_zeros():
    P = Polynomial([1.0, 2.0, 0.0, 0.0])
    assert P.degree == 1
    assert Polynomial([0.0, 0.0]).is_zero()
    assert Polynomial([0.0]).degree == 0


def test_arithmetic():
    x = Polynomial.identity()
    P = (x + 1) * (x - 1)
    np.testing.assert_array_equal(P.coeffs, [-1.0, 0.0, 1.0])
    np.testing.assert_array_equal((P - P).coeffs, [0.0])
    np.testing.assert_array_equal((2 - x).coeffs, [2.0, -1.0])
    assert P.monic() == P
    with pytest.raises(ValueError):
        Polynomial([0.0]).monic()


def test_derivatives():
    P = Polynomial([1.0, 2.0, 3.0, 4.0])
    np.testing.assert_array_equal(P.deriv().coeffs, [2.0, 6.0, 12.0])
    np.testing.assert_array_equal(P.deriv(2).coeffs, [6.0, 24.0])
    assert P.deriv(4).is_zero()
    f, d1, d2 = P.jet(2.0)
    assert (f, d1, d2) == (49.0, 62.0, 54.0)


def test_compensated_horner_beats_plain_on_cancellation():
    # (x - 1)^12 expanded: heavy cancellation near x = 1
    P = Polynomial([1.0])
    for _ in range(12):
        P = P * Polynomial([-1.0, 1.0])
    # condition number ~7e15: plain Horner keeps no digits, compensated keeps ~all
    x = 1.1
    exact = exact_value(P.coeffs, x)
    assert abs(P(x) - exact) <= 1e-12 * abs(exact)
    assert abs(P.horner(x) - exact) > abs(P(x) - exact)


@settings(max_examples=200, deadline=None)
@given(st.lists(finite, min_size=1, max_size=12), st.floats(min_value=-3, max_value=3))
def test_evaluation_matches_exact(coeffs, x):
    P = Polynomial(coeffs)
    exact = exact_value(P.coeffs, x)
    bound = sum(abs(c) * abs(x) ** j for j, c in enumerate(P.coeffs))
    assert abs(P(x) - exact) <= 4e-16 * bound + 1e-300
    np.testing.assert_allclose(P.eval_terms(x), exact, atol=1e-13 * bound + 1e-300)


def test_vectorised_evaluation_shape():
    P = Polynomial([1.0, 1.0])
    x = np.linspace(0, 1, 6).reshape(2, 3)
    assert P(x).shape == (2, 3)
    assert isinstance(P(0.5), float)


def test_jet_kinds():
    x = np.array([0.5, 1.5])
    triple = (np.sin, np.cos, lambda t: -np.sin(t))
    for got, want in zip(jet(triple, x), triple):
        np.testing.assert_array_equal(got, want(x))
    f, d1, d2 = jet(np.exp, x)
    np.testing.assert_allclose(d1, np.exp(x), rtol=1e-9)
    np.testing.assert_allclose(d2, np.exp(x), rtol=1e-6)
    with pytest.raises(ValueError):
        jet((np.sin, np.cos), x)


def test_hash_and_equality():
    assert Polynomial([1.0, 2.0]) == Polynomial([1.0, 2.0, 0.0])
    assert hash(Polynomial([1.0, 2.0])) == hash(Polynomial([1.0, 2.0, 0.0]))
    assert Polynomial([1.0]) != Polynomial([2.0])
