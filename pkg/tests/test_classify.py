import numpy as np
import pytest

from xlag.classify import (
    Endpoint,
    EndpointClass,
    L2Verdict,
    classify_endpoint,
    k_grid,
    l2_membership,
    membership_evidence,
    oscillation_check,
    threshold_sweep,
)
from xlag.errors import DomainError

VARIANTS = ["note", "derived"]


@pytest.mark.parametrize("variant", VARIANTS)
@pytest.mark.parametrize("k", [0.5, 2.0, 5.0, 10.0])
def test_infinity_is_limit_point(k, variant):
    c = classify_endpoint(k, variant, "inf")
    assert c.verdict is EndpointClass.LP
    assert c.phi1.verdict is L2Verdict.IN
    assert c.phi2.verdict is L2Verdict.NOT
    assert c.phi2.partial_integrals[-1] > 1e6


@pytest.mark.parametrize("variant", VARIANTS)
def test_partial_integrals_are_monotone(variant):
    for ep in ("0", "inf"):
        for sol in ("phi1", "phi2"):
            S = l2_membership(2.0, variant, sol, ep).partial_integrals
            assert np.all(np.diff(S) >= 0)


@pytest.mark.parametrize("k", [0.5, 2.0, 2.9])
def test_note_phi2_in_l2_near_zero_below_three(k):
    assert l2_membership(k, "note", "phi2", 0).verdict is L2Verdict.IN


@pytest.mark.parametrize("k", [3.5, 4.0])
def test_note_phi2_not_in_l2_near_zero_above_three(k):
    assert l2_membership(k, "note", "phi2", 0).verdict is L2Verdict.NOT


def test_derived_phi2_near_zero():
    ev = l2_membership(2.0, "derived", "phi2", 0)
    assert ev.verdict is L2Verdict.NOT
    assert ev.exponent == pytest.approx(-2.0, abs=0.05)
    assert l2_membership(0.5, "derived", "phi2", 0).verdict is L2Verdict.IN


def test_note_exponent_near_zero():
    ev = l2_membership(2.0, "note", "phi2", 0)
    assert ev.exponent == pytest.approx(0.0, abs=0.05)


@pytest.mark.parametrize("variant", VARIANTS)
def test_small_k_is_limit_circle_at_zero(variant):
    assert classify_endpoint(0.5, variant, 0).verdict is EndpointClass.LCNO


@pytest.mark.parametrize("variant", VARIANTS)
def test_k4_is_limit_point_at_zero(variant):
    assert classify_endpoint(4.0, variant, 0).verdict is EndpointClass.LP


def test_boundary_cases_are_borderline():
    assert classify_endpoint(3.0, "note", 0).verdict is EndpointClass.BORDERLINE
    assert classify_endpoint(1.0, "derived", 0).verdict is EndpointClass.BORDERLINE


def test_phi1_never_oscillates():
    for k in [0.5, 3.0, 8.0]:
        for ep in ("0", "inf"):
            osc = oscillation_check(k, "note", ep)
            assert osc.zero_counts["phi1"] == 0
            assert not osc.oscillatory


def test_membership_evidence_on_known_functions():
    # f = 1/x against w ~ x^k near 0: integrand x^{k-2}
    ev = membership_evidence(1.5, lambda x: x**-1.0, 0)
    assert ev.verdict is L2Verdict.IN
    ev = membership_evidence(0.5, lambda x: x**-1.0, 0)
    assert ev.verdict is L2Verdict.NOT
    ev = membership_evidence(1.0, lambda x: x**-1.0, 0)
    assert ev.verdict is L2Verdict.BORDERLINE
    ev = membership_evidence(1.0, lambda x: np.exp(x / 2), "inf")
    assert ev.verdict is L2Verdict.BORDERLINE or ev.verdict is L2Verdict.NOT
    ev = membership_evidence(1.0, lambda x: np.exp(x), "inf")
    assert ev.verdict is L2Verdict.NOT


def test_validation():
    with pytest.raises(DomainError):
        membership_evidence(1.0, np.ones_like, 0, tol=0.0)
    with pytest.raises(DomainError):
        l2_membership(1.0, "note", "phi3", 0)
    with pytest.raises(DomainError):
        Endpoint.parse("1")
    assert Endpoint.parse(float("inf")) is Endpoint.INF
    assert Endpoint.parse(0) is Endpoint.ZERO


def test_k_grid():
    g = k_grid(0.25, 6.0, 0.25)
    assert len(g) == 24 and g[0] == 0.25 and g[-1] == 6.0
    with pytest.raises(DomainError):
        k_grid(1.0, 0.0, 0.25)
    with pytest.raises(DomainError):
        k_grid(0.0, 1.0, 0.0)


def test_note_sweep_flips_at_three():
    rep = threshold_sweep("note", k_grid(0.25, 6.0, 0.25))
    assert rep.monotone
    assert rep.k_star == pytest.approx(3.0, abs=0.25)


def test_derived_sweep_flips_at_one():
    rep = threshold_sweep("derived", k_grid(0.25, 6.0, 0.25), workers=4)
    assert rep.monotone
    assert rep.k_star == pytest.approx(1.0, abs=0.25)


def test_variants_agree_below_one():
    for k in [0.25, 0.5, 0.75]:
        a = classify_endpoint(k, "note", 0).verdict
        b = classify_endpoint(k, "derived", 0).verdict
        assert a is b


def test_parallel_sweep_matches_serial():
    g = k_grid(2.0, 4.0, 0.5)
    assert threshold_sweep("note", g, workers=3).verdicts == threshold_sweep("note", g).verdicts


def test_single_point_sweep_is_degenerate():
    rep = threshold_sweep("note", [2.0])
    assert rep.degenerate and rep.k_star is None
    with pytest.raises(DomainError):
        threshold_sweep("note", [2.0, 1.0])
    with pytest.raises(DomainError):
        threshold_sweep("note", [])
