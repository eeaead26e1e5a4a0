import math

import pytest

import wpa


def test_thresholds():
    d = wpa.DomainSpec.disc_radius(2.0, 1.2)
    assert wpa.alpha_threshold(d) == pytest.approx(1 / 3, abs=1e-9)
    assert wpa.harnack_alpha_bound(d) == pytest.approx(1 / 3, abs=1e-9)
    assert wpa.pv_criterion(d, 0.3)["pass"] is True
    assert wpa.pv_criterion(d, 0.5)["pass"] is False
    seg = wpa.CompactFamily.segment(4.0)
    assert wpa.alpha_k(seg, "closed_form") == pytest.approx(1.0)
    assert wpa.alpha_k(seg, "limit") == pytest.approx(1.0, abs=1e-3)


def test_maps_and_constants():
    m = wpa.ExteriorMap.from_domain(wpa.DomainSpec.of(wpa.CompactFamily.arc(math.pi), 0.0))
    assert m.green_infinity(-1) == pytest.approx(math.log(1 + math.sqrt(2)))
    assert m.inverse(0) == math.inf
    value, argmax, fell_back = wpa.m_k(wpa.CompactFamily.arc(math.pi))
    assert fell_back and value == pytest.approx(1 + math.sqrt(2), abs=1e-6)
    r = wpa.r_k_alpha(wpa.CompactFamily.segment(3.0), wpa.RationalExponent(1, 2), 3 + 2 * math.sqrt(2))
    assert r == pytest.approx(0.0278629341, rel=1e-8)


def test_exact_and_fit():
    assert wpa.pi_partial_sum_at_one_exact(2, 1, 2, 4) == 3
    assert wpa.pi_partial_sum_at_one_exact(2, 1, 2, 3) == -3
    big = wpa.pi_partial_sum_at_one_exact(40, 1, 4, 100)
    assert isinstance(big, int) and abs(big) > 2**64
    assert wpa.pi_poly(1, 1.0, 1, 1) == [0, 1, -1]
    fam = wpa.CompactFamily.segment(4.0)
    fit = wpa.weighted_fit(wpa.k_samples(fam, 256), wpa.RationalExponent(1, 2), 2, [0, 0, 3, -1])
    assert fit["sup_residual"] < 1e-8


def test_construction():
    fam = wpa.CompactFamily.segment(3.0)
    e = wpa.RationalExponent(1, 2)
    M = wpa.m_k(fam)[0]
    r = 0.9 * wpa.r_k_alpha(fam, e, M)
    res = wpa.lemma_construct(fam, e, 0.1, [1], 5, 10.0, r, wpa.interval_samples(1.0, 1.15, 64))
    assert res["certificate"]["pass"] is True
    stages = wpa.stage_build(fam, e, [[1], [2, -1]], 2, "halfspace")
    assert stages["complete"] is True


def test_errors():
    with pytest.raises(ValueError):
        wpa.RationalExponent(2, 4)
    with pytest.raises(ValueError):
        wpa.k_alpha_member(wpa.CompactFamily.segment(3.0), wpa.RationalExponent(1, 2), 5.0, 0.5)
    with pytest.raises(wpa.WpaError):
        wpa.choose_C(2.0, 1, 1, 0.9, [1.0])
