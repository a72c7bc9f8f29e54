import math
import warnings

import numpy as np
import pytest

from cuspedge import (CuspClass, CuspStyle, MuSpec, build_cusp, classify_cusp,
                      cuspidal_curvature_limit)
from cuspedge.cusp2d import adaptive_simpson


def test_zero_mu_gives_parabola_axis():
    for style in CuspStyle:
        c = build_cusp(style, MuSpec(coeffs=(0.0, 0.0, 0.0, 0.0)))
        a, b = c.point(0.3)
        assert a == pytest.approx(0.045, abs=1e-12)
        assert b == pytest.approx(0.0, abs=1e-12)


def test_limit_is_twice_mu0():
    ce = build_cusp(CuspStyle.EuclideanTrig, MuSpec(coeffs=(3.0, 0.0, 0.0, 0.0)))
    cl = build_cusp(CuspStyle.LorentzHyperbolic, MuSpec(coeffs=(0.5, 0.0, 0.0, 0.0)))
    assert cuspidal_curvature_limit(ce) == pytest.approx(6.0, abs=1e-6)
    assert cuspidal_curvature_limit(cl) == pytest.approx(1.0, abs=1e-6)


def test_expansion_coefficients():
    mu = MuSpec(coeffs=(0.7, 0.3, -0.2, 0.1))
    m0, m1 = 0.7, 0.3
    for style, sign in ((CuspStyle.EuclideanTrig, -1.0),
                        (CuspStyle.LorentzHyperbolic, 1.0)):
        c = build_cusp(style, mu)
        al, be = c.coefficients(6)
        assert al[2] == pytest.approx(1.0, abs=1e-12)
        assert al[3] == pytest.approx(0.0, abs=1e-12)
        assert al[4] == pytest.approx(sign * 3 * m0 ** 2, abs=1e-12)
        assert al[5] == pytest.approx(sign * 12 * m0 * m1, abs=1e-12)
        assert be[3] == pytest.approx(2 * m0, abs=1e-12)
        assert be[4] == pytest.approx(3 * m1, abs=1e-12)
        assert be[5] == pytest.approx(4 * (sign * m0 ** 3 + (-0.2)), abs=1e-12)


def test_mu_reconstruction_from_curvature():
    mu = MuSpec(coeffs=(0.7, 0.3, -0.2, 0.1))
    for style in CuspStyle:
        c = build_cusp(style, mu)
        for t in np.linspace(1e-3, 0.3, 12):
            got = c.curvature(t) * math.sqrt(2 * abs(c.arc_length(t)))
            assert got == pytest.approx(mu.as_expr()(0.0, t), abs=1e-6)


def test_classification():
    cusp = build_cusp(CuspStyle.EuclideanTrig, MuSpec(coeffs=(3.0, 0, 0, 0)))
    flat = build_cusp(CuspStyle.EuclideanTrig, MuSpec(coeffs=(0.0, 1.0, 0, 0)))
    assert classify_cusp(cusp) is CuspClass.Cusp
    assert classify_cusp(flat) is CuspClass.GeneralizedCuspOnly


def test_degenerate_limit_warns():
    flat = build_cusp(CuspStyle.EuclideanTrig, MuSpec(coeffs=(0.0, 1.0, 0, 0)))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        cuspidal_curvature_limit(flat)
    assert len(caught) == 1


def test_metric_style_mismatch_rejected():
    from cuspedge import EUCLIDEAN
    cl = build_cusp(CuspStyle.LorentzHyperbolic, MuSpec(coeffs=(0.5, 0, 0, 0)))
    with pytest.raises(ValueError):
        cuspidal_curvature_limit(cl, metric=EUCLIDEAN)


def test_build_cusp_input_validation():
    with pytest.raises(TypeError):
        build_cusp(CuspStyle.EuclideanTrig, (0.7, 0.3))
    with pytest.raises(ValueError):
        build_cusp(CuspStyle.EuclideanTrig, MuSpec(coeffs=(0.7,)), order=2)


def test_adaptive_simpson():
    val, err = adaptive_simpson(math.exp, 0.0, 1.0, 1e-12)
    assert val == pytest.approx(math.e - 1.0, abs=1e-11)
