import numpy as np
import pytest
from hypothesis import given, strategies as st

from cuspedge import (EUCLIDEAN, LORENTZIAN, CausalClass, causal_class, cross,
                      inner)
from cuspedge.metric3 import metric_by_name, vec3

V = vec3(1.0, 2.0, 3.0)

coord = st.floats(-10, 10, allow_nan=False)
vecs = st.tuples(coord, coord, coord).map(lambda t: vec3(*t))


def test_inner_euclidean():
    assert inner(EUCLIDEAN, V, V) == 14.0


def test_inner_lorentzian():
    assert inner(LORENTZIAN, V, V) == 1.0 + 4.0 - 9.0


def test_cross_euclidean_axes():
    assert np.allclose(cross(EUCLIDEAN, vec3(1, 0, 0), vec3(0, 1, 0)),
                       vec3(0, 0, 1))


def test_cross_lorentzian_flips_third():
    got = cross(LORENTZIAN, vec3(1, 0, 0), vec3(0, 1, 0))
    assert np.allclose(got, vec3(0, 0, -1))


@given(vecs, vecs)
def test_cross_metric_orthogonal(a, b):
    for metric in (EUCLIDEAN, LORENTZIAN):
        c = cross(metric, a, b)
        scale = max(1.0, float(np.abs(c).max()))
        assert abs(inner(metric, a, c)) <= 1e-9 * scale
        assert abs(inner(metric, b, c)) <= 1e-9 * scale


@given(vecs, vecs, vecs)
def test_cross_gives_determinant(a, b, v):
    # <v, a x b> = det(a, b, v) in both metrics
    for metric in (EUCLIDEAN, LORENTZIAN):
        det = float(np.linalg.det(np.column_stack([a, b, v])))
        assert inner(metric, v, cross(metric, a, b)) == pytest.approx(det, abs=1e-6)


def test_causal_class():
    assert causal_class(LORENTZIAN, vec3(1, 0, 0)) is CausalClass.Spacelike
    assert causal_class(LORENTZIAN, vec3(0, 0, 1)) is CausalClass.Timelike
    assert causal_class(LORENTZIAN, vec3(1, 0, 1)) is CausalClass.Lightlike


def test_causal_class_rejects_euclidean():
    with pytest.raises(ValueError):
        causal_class(EUCLIDEAN, V)


def test_metric_by_name_roundtrip():
    assert metric_by_name("euclidean") is EUCLIDEAN
    assert metric_by_name("lorentzian") is LORENTZIAN
    with pytest.raises(ValueError):
        metric_by_name("galilean")
