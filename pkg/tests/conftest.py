import math

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("suite", deadline=None, max_examples=40)
settings.load_profile("suite")

from cuspedge import (EUCLIDEAN, LORENTZIAN, EdgeFamily, EdgeSpec, FrameData,
                      FrameIVP, MuSpec, S, build_edge, builtin_frame, const)

MU = MuSpec(coeffs=(0.7, 0.25, 0.1, 0.0))


def frame_witness(family, epsilons, metric, F0, k1=0.3, k2=0.45, omega=0.12,
                  mu=MU, s_span=(-0.5, 0.5), **kw):
    data = FrameData(epsilons, const(k1), const(k2), const(omega), metric)
    ivp = FrameIVP(data, np.asarray(F0, float), np.zeros(3))
    spec = EdgeSpec(family, frame=ivp, mu=mu, **kw)
    return build_edge(spec, s_span=s_span)


F0_T = [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]
F0_ST = [[1.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]]


@pytest.fixture(scope="session")
def edge_e():
    return frame_witness(EdgeFamily.E, (1, 1, 1), EUCLIDEAN, np.eye(3))


@pytest.fixture(scope="session")
def edge_t():
    return frame_witness(EdgeFamily.T, (-1, 1, 1), LORENTZIAN, F0_T)


@pytest.fixture(scope="session")
def edge_ss():
    return frame_witness(EdgeFamily.Ss, (1, 1, -1), LORENTZIAN, np.eye(3))


@pytest.fixture(scope="session")
def edge_st():
    return frame_witness(EdgeFamily.St, (1, -1, 1), LORENTZIAN, F0_ST)


@pytest.fixture(scope="session")
def edge_sl():
    return frame_witness(EdgeFamily.Sl, (1, 1, -1), LORENTZIAN, np.eye(3),
                         theta=const(math.pi / 4))


@pytest.fixture(scope="session")
def edge_light():
    ivp = builtin_frame("lightlike_lift", kappa=1.0, phi_prime=1.0)
    spec = EdgeSpec(EdgeFamily.LightGeneral, frame=ivp, mu=MU,
                    theta=const(0.4) + const(0.05) * S)
    return build_edge(spec, s_span=(-0.5, 0.5))


@pytest.fixture(scope="session")
def edge_light_general():
    # nonzero phi'' keeps the quasi-umbilic curve quadratic instead of flat
    ivp = builtin_frame("lightlike_lift", kappa=1.0,
                        phi_prime=const(1.0) + S)
    spec = EdgeSpec(EdgeFamily.LightGeneral, frame=ivp, mu=MU,
                    theta=const(0.4) + const(0.05) * S)
    return build_edge(spec, s_span=(-0.5, 0.5))


def order_four_witness(kappa, sigma, mu=MU, phi_prime=1.0):
    ivp = builtin_frame("lightlike_lift", kappa=kappa, phi_prime=phi_prime)
    spec = EdgeSpec(EdgeFamily.OrderFour, frame=ivp, mu=mu, sigma=sigma)
    return build_edge(spec, s_span=(-0.5, 0.5))


@pytest.fixture(scope="session")
def edge_o4():
    return order_four_witness(kappa=1.3, sigma=1)
