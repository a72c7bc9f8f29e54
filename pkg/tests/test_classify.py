import math

import numpy as np
import pytest

from cuspedge import (Convexity, SingularType, UmbilicKind, causal_type_at,
                      convexity_of, edge_invariants, make_example, order_at,
                      sigma_c, singular_point_report, singular_type,
                      umbilic_scan)
from cuspedge.classify import INFINITE
from cuspedge.metric3 import CausalClass


def test_orders_of_gallery_examples():
    assert order_at(make_example("order3_circle"), 0.4) == 3
    assert order_at(make_example("order5_helix", beta=2.0), -0.3) == 5
    assert order_at(make_example("fold"), 0.1) == 2
    assert order_at(make_example("null_spiral"), 0.2) == INFINITE


def test_order_rejects_deep_finite_vanishing():
    # Delta of the fold vanishes nowhere near order MAX; sanity only
    edge = make_example("order3_circle")
    assert order_at(edge, 0.0, max_order=8) == 3


def test_sigma_c_and_invariants(edge_ss, edge_st):
    for edge in (edge_ss, edge_st):
        sc, dc = sigma_c(edge, 0.1)
        assert sc in (-1, 0, 1)
        inv = edge_invariants(edge, 0.1)
        # sgn kappa_nu^L = sgn d^C
        assert np.sign(inv["kappa_nu_l"]) == np.sign(dc)


def test_euclidean_pythagoras(edge_e):
    inv = edge_invariants(edge_e, 0.2)
    total = inv["kappa_s_e"] ** 2 + inv["kappa_nu_e"] ** 2
    # (kappa^E)^2 = (kappa_s^E)^2 + (kappa_nu^E)^2
    j = edge_e.jets(0.2, 0.0, 2)
    gp = np.array([x.coefficient(1, 0) for x in j])
    gpp = np.array([2 * x.coefficient(2, 0) for x in j])
    kap2 = float(np.dot(np.cross(gp, gpp), np.cross(gp, gpp))) / \
        float(np.dot(gp, gp)) ** 3
    assert kap2 == pytest.approx(total, rel=1e-9)


def test_causal_types(edge_t, edge_ss, edge_sl, edge_e):
    assert causal_type_at(edge_t, 0.1) is CausalClass.Timelike
    assert causal_type_at(edge_ss, 0.1) is CausalClass.Spacelike
    assert causal_type_at(edge_sl, 0.1) is CausalClass.Lightlike
    assert causal_type_at(edge_e, 0.1) is None


def test_singular_type_cuspidal_edge(edge_e):
    stype, mu0, mu0p, estimated = singular_type(edge_e, 0.1)
    assert stype is SingularType.CuspidalEdge
    assert mu0 == pytest.approx(0.7, abs=1e-12)
    assert not estimated


def test_singular_type_cross_cap():
    edge = make_example("cuspidal_cross_cap")
    stype, mu0, mu0p, est = singular_type(edge, 0.0, allow_estimates=True)
    assert stype is SingularType.CuspidalCrossCap
    assert abs(mu0) <= 1e-9
    assert mu0p == pytest.approx(3.0 / (2.0 * math.sqrt(2.0)), abs=1e-4)
    assert est
    stype, mu0, _, _ = singular_type(edge, 0.5, allow_estimates=True)
    assert stype is SingularType.CuspidalEdge
    assert mu0 == pytest.approx(1.5 / (2.0 * math.sqrt(2.0)), abs=1e-4)


def test_singular_type_needs_estimates_opt_in():
    edge = make_example("cuspidal_cross_cap")
    stype, mu0, mu0p, est = singular_type(edge, 0.5)
    assert stype is SingularType.Undetermined
    assert not est


def test_report_roundtrip(edge_t):
    rep = singular_point_report(edge_t, 0.1)
    d = rep.to_dict()
    assert d["order"] == 2
    assert d["causal_type"] == "timelike"
    assert d["singular_type"] == "cuspidal_edge"


def test_convexity(edge_e):
    assert convexity_of(edge_e, 0.1) in (Convexity.Convex, Convexity.Concave,
                                         Convexity.Flat)


def test_umbilics_do_not_accumulate_on_generic_edge(edge_t):
    # shrinking boxes around a non-umbilic point stay empty
    for half in (0.2, 0.1, 0.05):
        pts = umbilic_scan(edge_t, (0.1 - half, 0.1 + half),
                           (0.2 - half / 2, 0.2 + half / 2), grid=(10, 10))
        assert pts == []


def test_umbilics_accumulate_on_cross_cap_example():
    edge = make_example("umbilic_cross_cap")
    # odd s-count so the grid samples the u = 0 axis exactly
    pts = umbilic_scan(edge, (-0.25, 0.25), (0.05, 0.4), grid=(17, 9))
    assert len(pts) >= 3
    assert all(abs(p.s) <= 1e-5 for p in pts)
    assert min(p.t for p in pts) < 0.12  # approaches the singular point
