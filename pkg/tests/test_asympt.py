import math

import numpy as np
import pytest

from cuspedge import (Boundedness, EdgeFamily, check_prop_F,
                      check_theorem_G_bounded, discriminant_curve, fit_leading,
                      richardson_limit, verify_family)
from cuspedge.asympt import classify_boundedness, family_params, k_sign_flip
from cuspedge.classify import INFINITE, order_at
from conftest import MU, order_four_witness


def test_richardson_limit_geometric_tail():
    ts = [0.1 * 2.0 ** -k for k in range(7)]
    vals = [2.0 + 3.0 * t + 0.5 * t * t for t in ts]
    lim, resid = richardson_limit(vals)
    assert lim == pytest.approx(2.0, abs=1e-12)
    assert resid <= 1e-10


def test_fit_leading_pole_coefficient():
    fit = fit_leading(lambda t: 4.0 / t + 1.3 + 0.2 * t, pole=1)
    assert fit.value == pytest.approx(4.0, abs=1e-10)


def test_classify_boundedness():
    assert classify_boundedness(lambda t: 2.0 + t) is Boundedness.Bounded
    assert classify_boundedness(lambda t: 1.0 / t) is Boundedness.Unbounded


def test_family_params_read_profile(edge_e):
    p = family_params(edge_e, 0.0)
    assert p.mu0 == pytest.approx(0.7, abs=1e-10)
    assert p.mu1 == pytest.approx(0.25, abs=1e-10)
    assert p.k1 == pytest.approx(0.3, abs=1e-8)
    assert p.k2 == pytest.approx(0.45, abs=1e-8)


def test_verify_family_all_witnesses(edge_e, edge_t, edge_ss, edge_st,
                                     edge_sl, edge_light, edge_o4):
    for edge in (edge_e, edge_t, edge_ss, edge_st, edge_sl, edge_light):
        rep = verify_family(edge, 0.1)
        assert rep.passed, "\n".join(rep.lines())
    rep = verify_family(edge_o4, 0.0)
    assert rep.passed, "\n".join(rep.lines())


def test_k_sign_flip_on_timelike_edge(edge_t):
    assert k_sign_flip(edge_t, 0.1)


def test_theorem_g_dichotomy():
    from cuspedge.jet import MuSpec
    bounded = order_four_witness(kappa=1.3, sigma=1,
                                 mu=MuSpec(coeffs=(0.7, 0.0, 0.1, 0.0)))
    unbounded = order_four_witness(kappa=1.3, sigma=1)
    rb = check_theorem_G_bounded(bounded, 0.0)
    ru = check_theorem_G_bounded(unbounded, 0.0)
    assert rb.condition_holds and rb.decision is Boundedness.Bounded
    assert rb.consistent
    assert not ru.condition_holds and ru.decision is Boundedness.Unbounded
    assert ru.consistent


def test_prop_f_three_way_sweep():
    deep = order_four_witness(kappa=0.49, sigma=-1)   # kappa = mu0^2
    flat4a = order_four_witness(kappa=0.8, sigma=-1)
    flat4b = order_four_witness(kappa=0.49, sigma=1)
    r = check_prop_F(deep, 0.0)
    assert r.order == INFINITE or r.order >= 5
    assert r.consistent
    for edge in (flat4a, flat4b):
        r = check_prop_F(edge, 0.0)
        assert r.order == 4 and r.consistent


def test_discriminant_curve_shape(edge_light_general):
    dc = discriminant_curve(edge_light_general)
    assert abs(dc.psi_prime0) <= 1e-4
    assert abs(dc.psi_second0) > 1e-4
    assert dc.fit_residual <= 1e-3
