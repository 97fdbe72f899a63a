import threading
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest

from xlag.coefficients import Variant, eval_dp, eval_p, eval_q, ode_residual_sl
from xlag.errors import DomainError
from xlag.frobenius import (
    frobenius_series,
    indicial_exponents,
    phi1,
    phi2,
    phi2_local_exponent,
    second_solution,
    series_coefficients,
    wronskian_check,
)
from xlag.xpoly import build_xlaguerre


def test_phi1():
    np.testing.assert_array_equal(phi1(1.0).coeffs, [2.0, 1.0])
    assert phi1(2.5)(0.0) == 3.5


@pytest.mark.parametrize("k", [0.5, 1.0, 2.5, 7.0])
def test_indicial_exponents(k):
    hi, lo = indicial_exponents(k)
    assert hi == 0.0
    assert lo == pytest.approx(-k, abs=1e-14)


def test_series_at_zero_is_phi1():
    for k in [0.5, 2.0]:
        s = frobenius_series(k, 0.0, 8)
        np.testing.assert_allclose(s.coeffs[:2], [1.0, 1.0 / (k + 1)], rtol=1e-15)
        np.testing.assert_array_equal(s.coeffs[2:], 0.0)


def test_series_matches_second_member():
    s = frobenius_series(1.0, 1.0, 6)
    np.testing.assert_allclose(s.coeffs, [1.0, 0.0, -1.0 / 3, 0, 0, 0, 0], atol=1e-15)


@pytest.mark.parametrize("k", [0.5, 1.0, 2.5])
def test_series_proportional_to_members(k):
    for n in range(6):
        P = build_xlaguerre(k, n)
        s = frobenius_series(k, float(n), n + 4)
        want = np.zeros(n + 5)
        want[: n + 2] = P.coeffs / P.coeffs[0]
        np.testing.assert_allclose(s.coeffs, want, rtol=1e-9, atol=1e-9)


def test_exact_recurrence_satisfies_cleared_form():
    # rational arithmetic: the truncated series leaves only x^J and higher
    k, lam, J = Fraction(1), Fraction(1, 2), 12
    a = series_coefficients(k, lam, J)
    assert a[0] == 1 and all(isinstance(c, Fraction) for c in a)
    # cleared form: P2 = -k x - x^2, P1 = -k(k+1) + x + x^2, P0 = k(1 - lam) - (1 + lam) x
    P2 = {1: -k, 2: Fraction(-1)}
    P1 = {0: -k * (k + 1), 1: Fraction(1), 2: Fraction(1)}
    P0 = {0: k * (1 - lam), 1: -1 - lam}
    res = [Fraction(0)] * (J + 3)
    for m, c in enumerate(a):
        for j, v in P2.items():
            res[m - 2 + j] += v * m * (m - 1) * c if m >= 2 else 0
        for j, v in P1.items():
            res[m - 1 + j] += v * m * c if m >= 1 else 0
        for j, v in P0.items():
            res[m + j] += v * c
    assert all(v == 0 for v in res[:J])
    assert res[J] != 0


def test_float_series_residual_is_tiny():
    s = frobenius_series(1.0, 0.5, 12)
    x = np.geomspace(1e-2, 1e-1, 7)
    assert np.all(np.abs(s.residual(x)) <= 1e-14)
    assert s.truncation_estimate(0.1) < 1e-6


def test_series_order_validation():
    with pytest.raises(DomainError):
        frobenius_series(1.0, 0.0, 1)


@pytest.mark.parametrize("variant", list(Variant))
def test_phi2_vanishes_at_one(variant):
    assert phi2(2.0, variant, 1.0) == 0.0


@pytest.mark.parametrize("k, variant", [(1.0, "note"), (0.5, "derived"), (3.0, "note")])
def test_integral_matches_mpmath(k, variant):
    sol = second_solution(k, variant)
    a = k if Variant.parse(variant) is Variant.NOTE else k + 1
    g = lambda t: mp.exp(t) * t ** (-a) * ((t + k) / (t + k + 1)) ** 2
    mp.mp.dps = 30
    for x in [0.01, 0.3, 1.7, 6.0]:
        ref = float(mp.quad(g, [1, x]))
        v, err = sol.integral(x, with_error=True)
        assert v == pytest.approx(ref, rel=1e-12)
        assert err <= 1e-10 * abs(v)


def test_phi2_domain():
    with pytest.raises(DomainError):
        phi2(1.0, "note", 0.0)
    with pytest.raises(DomainError):
        phi2(1.0, "note", np.array([1.0, np.inf]))


def test_phi2_solves_derived_equation():
    x = np.linspace(0.2, 10, 40)
    for k in [0.5, 2.0, 5.0]:
        sol = second_solution(k, "derived")
        f, d1, d2 = sol.jet(x)
        r = ode_residual_sl(k, "derived", 0.0, sol, x)
        scale = (np.abs(eval_p(k, "derived", x) * d2) + np.abs(eval_dp(k, "derived", x) * d1)
                 + np.abs(eval_q(k, x) * f))
        assert np.all(np.abs(r) <= 1e-7 * scale)


@pytest.mark.parametrize("variant", list(Variant))
def test_wronskian_identity(variant):
    rep = wronskian_check(1.0, variant, [0.5, 1.0, 2.0, 5.0])
    assert rep.max_deviation <= 1e-8
    rep = wronskian_check(5.0, variant, [0.1, 1.0, 10.0])
    assert rep.max_deviation <= 1e-8
    rep = wronskian_check(2.0, variant, np.geomspace(0.05, 20, 30))
    assert rep.max_deviation <= 1e-8


def test_wronskian_detects_swapped_p():
    rep = wronskian_check(1.0, "note", [0.5, 2.0, 5.0], p_variant="derived")
    assert rep.max_deviation > 0.1


def test_wronskian_grid_validation():
    with pytest.raises(DomainError):
        wronskian_check(1.0, "note", [])


@pytest.mark.parametrize("k", [0.5, 2.5])
def test_local_exponents(k):
    note = phi2_local_exponent(k, "note")
    derived = phi2_local_exponent(k, "derived")
    assert note.expected == min(0.0, 1.0 - k)
    assert derived.expected == -k
    assert note.slope == pytest.approx(note.expected, abs=0.05)
    assert derived.slope == pytest.approx(-k, abs=0.05)
    assert not note.integer_k


def test_integer_k_is_flagged():
    fit = phi2_local_exponent(1.0, "note")
    assert fit.integer_k
    # log factor: slope near 0 but not a clean power law
    assert abs(fit.slope) < 0.2


def test_concurrent_evaluation_is_consistent():
    sol = second_solution(1.7, "derived")
    x = np.geomspace(1e-6, 30, 50)
    out = [None] * 4

    def work(i):
        out[i] = sol(x)

    threads = [threading.Thread(target=work, args=(i,)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for v in out:
        np.testing.assert_array_equal(v, out[0])
