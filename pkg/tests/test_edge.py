import numpy as np
import pytest

from cuspedge import (EUCLIDEAN, LORENTZIAN, EdgeError, EdgeFamily, EdgeSpec,
                      MuSpec, S, T, build_edge, const, cos, curvature_bundle,
                      fund_forms, inner, sin)
from cuspedge.edge import (ClosedFormSurface, ReparametrizedSurface,
                           fund_form_jets)
from cuspedge.classify import order_at
from conftest import MU, frame_witness

RNG = np.random.default_rng(11)


def _sphere(metric=EUCLIDEAN, r=1.0):
    return ClosedFormSurface((const(r) * cos(S) * cos(T),
                              const(r) * sin(S) * cos(T),
                              const(r) * sin(T)), metric)


def test_unit_sphere_curvatures():
    sph = _sphere()
    cb = curvature_bundle(sph, 0.3, 0.2)
    assert cb.K == pytest.approx(1.0, rel=1e-10)
    assert cb.h_abs == pytest.approx(1.0, rel=1e-10)
    assert cb.lambda1 == pytest.approx(cb.lambda2, rel=1e-8)


def test_normal_orthogonal_to_tangents(edge_t):
    for s, t in [(0.1, 0.2), (-0.2, 0.35), (0.0, -0.15)]:
        j = fund_form_jets(edge_t, s, t, 2)
        nu = np.array([x.value() for x in j["nu"]])
        fs = np.array([x.value() for x in j["fs"]])
        ft = np.array([x.value() for x in j["ft"]])
        scale = max(1.0, np.abs(nu).max() * max(np.abs(fs).max(),
                                                np.abs(ft).max()))
        assert abs(inner(LORENTZIAN, nu, fs)) <= 1e-10 * scale
        assert abs(inner(LORENTZIAN, nu, ft)) <= 1e-10 * scale


def test_normal_square_is_minus_delta(edge_t, edge_ss):
    # <nu~, nu~> = -Delta in the Lorentzian metric
    for edge in (edge_t, edge_ss):
        for s, t in [(0.1, 0.2), (-0.3, -0.1)]:
            j = fund_form_jets(edge, s, t, 2)
            nu = np.array([x.value() for x in j["nu"]])
            delta = j["delta"].value()
            q = inner(LORENTZIAN, nu, nu)
            assert q == pytest.approx(-delta, rel=1e-9, abs=1e-13)


def test_gauss_curvature_sign_flips_with_metric():
    comps = ((const(1.0) + const(0.5) * T ** 2) * cos(S),
             (const(1.0) + const(0.5) * T ** 2) * sin(S),
             S - const(1.0 / 3.0) * T ** 3 + const(0.125) * T ** 4)
    se = ClosedFormSurface(comps, EUCLIDEAN)
    sl = ClosedFormSurface(comps, LORENTZIAN)
    for _ in range(10):
        s, t = RNG.uniform(-0.8, 0.8), RNG.uniform(0.1, 0.4) * RNG.choice([-1, 1])
        if abs(fund_forms(sl, s, t).delta) < 1e-6:
            continue
        ke = curvature_bundle(se, s, t).K
        kl = curvature_bundle(sl, s, t).K
        if abs(ke) > 1e-10 and abs(kl) > 1e-10:
            assert np.sign(kl) == -np.sign(ke), (s, t)


def test_eigen_relations(edge_t, edge_e):
    # lambda1 * lambda2 = K (Euclidean) or -sgn(Delta) K (Lorentzian),
    # lambda1 + lambda2 = 2H
    for edge in (edge_t, edge_e):
        for s, t in [(0.1, 0.2), (-0.2, 0.3), (0.25, -0.18)]:
            cb = curvature_bundle(edge, s, t)
            ksign = 1.0 if not edge.metric.is_lorentzian \
                else -np.sign(cb.forms.delta)
            prod = cb.lambda1 * cb.lambda2
            tot = cb.lambda1 + cb.lambda2
            assert prod.real == pytest.approx(ksign * cb.K, rel=1e-9)
            assert abs(prod.imag) <= 1e-9 * max(1.0, abs(prod))
            assert tot.real == pytest.approx(2 * cb.h_signed, rel=1e-9)


def test_jets_match_finite_differences(edge_ss):
    h = 1e-5
    for _ in range(12):
        s, t = RNG.uniform(-0.4, 0.4), RNG.uniform(-0.4, 0.4)
        j = edge_ss.jets(s, t, 2)
        got_s = np.array([x.coefficient(1, 0) for x in j])
        got_t = np.array([x.coefficient(0, 1) for x in j])
        fd_s = (np.array(edge_ss.point(s + h, t)) -
                np.array(edge_ss.point(s - h, t))) / (2 * h)
        fd_t = (np.array(edge_ss.point(s, t + h)) -
                np.array(edge_ss.point(s, t - h))) / (2 * h)
        assert np.abs(got_s - fd_s).max() <= 1e-5
        assert np.abs(got_t - fd_t).max() <= 1e-5


def test_order_is_reparametrization_invariant(edge_t):
    base_order = order_at(edge_t, 0.12)
    # diffeomorphism fixing the singular axis t = 0
    repar = ReparametrizedSurface(edge_t, S + const(0.1) * S ** 2,
                                  T + const(0.2) * T ** 2 + const(0.05) * S * T)
    assert order_at(repar, 0.12) == base_order


def test_degenerate_profile_rejected():
    # f_tt(s, 0) parallel to Gamma' is not a generalized cuspidal edge
    spec = EdgeSpec(EdgeFamily.ClosedForm,
                    components=(S + T * T, const(0.0) + T ** 3, const(0.0)),
                    metric=EUCLIDEAN)
    with pytest.raises(EdgeError):
        build_edge(spec)


def test_theta_rejected_for_adapted_families():
    with pytest.raises(EdgeError):
        EdgeSpec(EdgeFamily.E, mu=MU, theta=const(0.3))


def test_singular_axis_rank_one(edge_e):
    j = edge_e.jets(0.2, 0.0, 2)
    ft = np.array([x.coefficient(0, 1) for x in j])
    assert np.abs(ft).max() <= 1e-12
    ftt = np.array([2 * x.coefficient(0, 2) for x in j])
    fs = np.array([x.coefficient(1, 0) for x in j])
    assert np.linalg.norm(np.cross(fs, ftt)) > 1e-6
