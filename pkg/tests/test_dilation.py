"""Dilation gauges, factorization certificates, and Boyd indices."""

import numpy as np
import pytest

from orlicz_lab import (
    CertificateError,
    YoungFunction,
    boyd_indices,
    gauge_estimate,
    gauge_lower,
    gauge_upper,
    gauge_upper_auto,
    weight_W,
)


def test_power_gauge_closed_form():
    # C_phi(lam) = lam^{-1/p} for phi(x) = |x|^p
    for p in (1.0, 2.0, 4.0):
        phi = YoungFunction.power(p)
        for lam in (0.25, 0.5, 2.0, 8.0):
            expect = lam ** (-1.0 / p)
            lo = gauge_lower(phi, lam)
            up = gauge_upper_auto(phi, lam)
            assert lo == pytest.approx(expect, rel=1e-6)
            assert up == pytest.approx(expect, rel=1e-6)


def test_gauge_lower_below_upper():
    phi = YoungFunction.exp_minus_one()
    for lam in (0.1, 0.7, 1.0, 3.0, 20.0):
        est = gauge_estimate(phi, lam)
        assert est.lower <= est.upper * (1 + 1e-9)
        # crude bracket always contains the estimate
        assert est.crude[0] <= est.upper * (1 + 1e-9)
        assert est.lower <= est.crude[1] * (1 + 1e-9)


def test_gauge_at_one():
    for phi in (YoungFunction.power(3.0), YoungFunction.exp_minus_one()):
        assert gauge_lower(phi, 1.0) == pytest.approx(1.0, rel=1e-9)
        assert gauge_upper_auto(phi, 1.0) == pytest.approx(1.0, rel=1e-9)


def test_gauge_upper_rejects_bad_certificate():
    phi = YoungFunction.power(2.0)
    # a majorant that actually lies below phi is not a valid certificate
    bad = YoungFunction.power_over_p(2.0)  # x^2/2 < x^2
    with pytest.raises(CertificateError):
        gauge_upper(phi, 2.0, majorant=bad)


def test_gauge_upper_crude_fallback():
    # a window function factorizes poorly; the crude bound must still hold
    phi = YoungFunction.indicator_window(2.0)
    up = gauge_upper_auto(phi, 0.5)
    assert up <= 1.0 / 0.5 + 1e-9


def test_weight_w_powers():
    # W(t) = t^{1/p1 + 1/p2 - 1/p3} up to the gauge direction convention
    p1, p2, p3 = 2.0, 2.0, 1.0
    phi1, phi2, phi3 = (YoungFunction.power(p) for p in (p1, p2, p3))
    for t in (0.5, 1.0, 2.0, 4.0):
        w = weight_W(phi1, phi2, phi3, t)
        assert w == pytest.approx(1.0, rel=1e-6)  # exponents cancel


def test_boyd_indices_power():
    for p in (1.5, 2.0, 4.0):
        est = boyd_indices(YoungFunction.power(p))
        assert est.lower_index == pytest.approx(1.0 / p, abs=1e-6)
        assert est.upper_index == pytest.approx(1.0 / p, abs=1e-6)


def test_boyd_indices_ordering():
    est = boyd_indices(YoungFunction.exp_minus_one())
    assert est.lower_index <= est.upper_index + 1e-9
    assert est.upper_index == pytest.approx(1.0, abs=1e-6)


def test_gauge_monotone_in_lambda():
    phi = YoungFunction.power(2.0)
    lams = np.geomspace(0.1, 10.0, 9)
    lows = [gauge_lower(phi, float(l)) for l in lams]
    assert all(a >= b - 1e-12 for a, b in zip(lows, lows[1:]))
