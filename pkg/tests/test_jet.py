import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

settings.register_profile("suite", deadline=None, max_examples=40)
settings.load_profile("suite")

from cuspedge import Jet2, S, T, const, cos, exp, lift, sin, sqrt
from cuspedge.jet import MuSpec, fd_oracle

ORDER = 5
BASE = (0.0, 0.0)


def _jet_from(coeffs):
    j = Jet2(BASE, ORDER)
    arr = np.zeros((ORDER + 1, ORDER + 1))
    for (i, k), v in coeffs.items():
        arr[i, k] = v
    j.c[:] = arr * np.tril(np.ones((ORDER + 1, ORDER + 1)))[::-1]
    return j


small = st.floats(-4, 4, allow_nan=False, allow_infinity=False)
tables = st.dictionaries(
    st.tuples(st.integers(0, ORDER), st.integers(0, ORDER)).filter(
        lambda ik: ik[0] + ik[1] <= ORDER),
    small, max_size=8).map(_jet_from)


@given(tables, tables, tables)
def test_ring_axioms(a, b, c):
    assert np.allclose(((a + b) + c).c, (a + (b + c)).c, atol=1e-9)
    assert np.allclose((a * b).c, (b * a).c, atol=1e-9)
    lhs, rhs = a * (b + c), a * b + a * c
    scale = max(1.0, float(np.abs(lhs.c).max()))
    assert np.allclose(lhs.c, rhs.c, atol=1e-8 * scale)


@given(tables)
def test_additive_identity_and_inverse(a):
    zero = Jet2(BASE, ORDER)
    assert np.allclose((a + zero).c, a.c)
    assert np.allclose((a + (-a)).c, zero.c)


@given(tables, st.floats(-3, 3, allow_nan=False))
def test_scalar_mul_matches_repeated_add(a, lam):
    assert np.allclose((a * lam).c, lam * a.c, atol=1e-9)


def test_derivative_antiderivative_roundtrip():
    e = (const(1.0) + S * T + T ** 3)
    j = lift(e, BASE, ORDER)
    back = j.derivative("t").antiderivative_t(constant=j.coefficient(0, 0))
    # constant-in-t terms of s-degree > 0 are lost; compare the t-columns
    assert np.allclose(back.c[:, 1:ORDER], j.c[:, 1:ORDER])


EXPRS = [
    sin(S) * cos(T) + T ** 2,
    exp(const(0.3) * S - T),
    (const(2.0) + S ** 2 + T ** 2),
    sqrt(const(4.0) + S + T),
    S * T ** 3 - const(0.5) * S ** 2,
]


def test_jet_matches_finite_differences():
    """Partials up to order 2 agree with central differences at 20 points."""
    rng = np.random.default_rng(7)
    for _ in range(20):
        base = tuple(rng.uniform(-0.5, 0.5, 2))
        e = EXPRS[rng.integers(len(EXPRS))]
        j = lift(e, base, 4)
        for (i, k) in ((0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)):
            got = j.coefficient(i, k) * math.factorial(i) * math.factorial(k)
            ref = fd_oracle(lambda s, t: e(s, t), base, (i, k))
            assert got == pytest.approx(ref, abs=1e-6, rel=1e-5), (e, base, i, k)


def test_compose_with_identity():
    j = lift(sin(S) + T ** 2, BASE, ORDER)
    ps = Jet2.variable_s(BASE, ORDER)
    pt = Jet2.variable_t(BASE, ORDER)
    assert np.allclose(j.compose(ps - ps.value(), pt - pt.value()).c, j.c,
                       atol=1e-12)


def test_sqrt_squares_back():
    j = lift(const(2.0) + S + T ** 2, BASE, ORDER)
    r = j.sqrt()
    assert np.allclose((r * r).c, j.c, atol=1e-12)


def test_reciprocal():
    j = lift(const(2.0) + S - T, BASE, ORDER)
    one = j * (1.0 / j)
    expect = Jet2.constant(1.0, BASE, ORDER)
    assert np.allclose(one.c, expect.c, atol=1e-12)


def test_mu_spec_polynomial_jet():
    mu = MuSpec(coeffs=(0.7, 0.25, 0.1, 0.0))
    j = mu.jet(BASE, 4)
    # coeffs are derivatives mu^(k)(0); Taylor entries divide by k!
    assert j.t_coefficients()[:3] == pytest.approx([0.7, 0.25, 0.05])


def test_backends_agree():
    from cuspedge import _kernels
    rng = np.random.default_rng(3)
    a = rng.standard_normal((7, 7))
    b = rng.standard_normal((7, 7))
    ref = _kernels.mul_numpy(a, b, 6)
    assert np.allclose(_kernels.mul(a, b, 6), ref, atol=1e-12)
