"""Named example surfaces with their known exact quantities.

Every entry carries an `expected` table mapping quantity names to either a
closed-form evaluator in (s, t) checked at 1e-8 relative tolerance, or a
fitted/discrete value checked at the looser tolerance recorded with it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .edge import EdgeFamily, EdgeSpec, build_edge
from .expr import Expr, S, T, const, cos, exp, sin
from .frame import builtin_frame
from .jet import MuSpec
from .metric3 import EUCLIDEAN, LORENTZIAN

CLOSED_FORM_TOL = 1e-8
FITTED_TOL = 1e-3


@dataclass(frozen=True)
class Expected:
    value: object            # scalar, enum value name, or callable (s, t) -> float
    tol: float = CLOSED_FORM_TOL
    kind: str = "closed_form"


@dataclass
class GalleryEntry:
    name: str
    edge: object
    expected: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    doc: str = ""


def _fold():
    spec = EdgeSpec(EdgeFamily.ClosedForm, components=(S, T * T, const(0.0)),
                    metric=EUCLIDEAN, label="fold")
    edge = build_edge(spec, s_span=(-1.0, 1.0))
    return GalleryEntry("fold", edge, {
        "singular_type": Expected("undetermined", kind="discrete"),
        "mu0": Expected(0.0, 1e-8, "fitted"),
        "order": Expected(2, kind="discrete"),
    }, doc="standard fold (s, t^2, 0); mu vanishes identically")


def _cuspidal_cross_cap():
    spec = EdgeSpec(EdgeFamily.ClosedForm, components=(S, T * T, S * T ** 3),
                    metric=EUCLIDEAN, label="cuspidal_cross_cap")
    edge = build_edge(spec, s_span=(-1.0, 1.0))
    return GalleryEntry("cuspidal_cross_cap", edge, {
        "singular_type_at_0": Expected("cuspidal_cross_cap", kind="discrete"),
        # section curvature of c(t) = (t^2, s t^3) gives mu0(s) = 3s/(2 sqrt 2)
        "mu0_at": Expected(lambda s: 3.0 * s / (2.0 * math.sqrt(2.0)),
                           1e-4, "fitted"),
    }, doc="(s, t^2, s t^3); cuspidal edge for s != 0, cross cap at s = 0")


def _order3_circle():
    x = T ** 2 * 0.5
    y = T ** 3 * (1.0 / 3.0)
    w = const(1.0) - x - y
    z = y - x
    spec = EdgeSpec(EdgeFamily.ClosedForm,
                    components=(w * cos(S), w * sin(S), z),
                    metric=LORENTZIAN, label="order3_circle")
    edge = build_edge(spec, s_span=(-math.pi, math.pi))

    def poly(t):
        return 6.0 - 3.0 * t * t - 2.0 * t ** 3

    return GalleryEntry("order3_circle", edge, {
        "E": Expected(lambda s, t: (2 * t ** 3 + 3 * t * t - 6) ** 2 / 36.0),
        "F": Expected(lambda s, t: 0.0),
        "G": Expected(lambda s, t: 4.0 * t ** 3),
        "delta": Expected(lambda s, t: t ** 3 * poly(t) ** 2 / 9.0),
        "L": Expected(lambda s, t: t * (1 - t) * poly(t) ** 2 / 36.0),
        "M": Expected(lambda s, t: 0.0),
        "N": Expected(lambda s, t: t * t * poly(t) / 3.0),
        "K": Expected(lambda s, t: -3.0 * (1 - t) / (4.0 * t ** 3 * poly(t))),
        "H_abs": Expected(
            lambda s, t: abs((6 + 9 * t * t - 14 * t ** 3)
                             / (8 * abs(t) ** 2.5 * poly(t)))),
        "order": Expected(3, kind="discrete"),
    }, doc="cuspidal edge of order 3 along the unit circle")


def _order4_helix(a=1.0, sigma=1):
    a = float(a)
    sigma = int(sigma)
    if sigma not in (-1, 1):
        raise ValueError("sigma must be +-1")
    r = const(1.0) - const(0.5 * sigma) * T ** 2
    z = S + const(sigma * a / 3.0) * T ** 3
    spec = EdgeSpec(EdgeFamily.ClosedForm,
                    components=(r * cos(S), r * sin(S), z),
                    metric=LORENTZIAN, label="order4_helix")
    edge = build_edge(spec, s_span=(-1.0, 1.0))
    a2 = a * a

    def delta(t):
        return (t ** 4 * (-a2 - sigma) + t ** 6 * (a2 * sigma + 0.25)
                - a2 * t ** 8 / 4.0)

    def K(t):
        num = t ** 4 * (8 * (a2 * sigma + 1) - 12 * a2 * t * t
                        + 6 * a2 * sigma * t ** 4 - a2 * t ** 6)
        return num / (8.0 * delta(t) ** 2)

    def H_abs(t):
        # (G L - 2 F M + E N)/(2 Delta sqrt|Delta|) from the same E..N forms;
        # this is half the usual quoted closed form, which omits the trace/2
        num = a * t ** 6 * ((8 * a2 + 14 * sigma) - t * t * (8 * a2 * sigma + 3)
                            + 2 * a2 * t ** 4)
        return abs(num / (16.0 * abs(delta(t)) ** 1.5))

    causal = "timelike" if sigma > 0 or a2 > 1 else "spacelike"
    convex = "convex" if sigma > 0 else "concave"
    return GalleryEntry("order4_helix", edge, {
        "E": Expected(lambda s, t: t * t * (t * t - 4 * sigma) / 4.0),
        "F": Expected(lambda s, t: -a * sigma * t * t),
        "G": Expected(lambda s, t: t * t - a2 * t ** 4),
        "delta": Expected(lambda s, t: delta(t)),
        "L": Expected(lambda s, t: -a * sigma * t * t * (sigma * t * t - 2) ** 2 / 4.0),
        "M": Expected(lambda s, t: t * t),
        "N": Expected(lambda s, t: -a * t * t * (sigma * t * t - 2) / 2.0),
        "K": Expected(lambda s, t: K(t)),
        "H_abs": Expected(lambda s, t: H_abs(t)),
        "order": Expected(4 if abs(a2 + sigma) > 1e-12 else 5, kind="discrete"),
        "causal": Expected(causal, kind="discrete"),
        "convexity": Expected(convex, kind="discrete"),
        "H_bounded": Expected(True, kind="discrete"),
    }, params={"a": a, "sigma": sigma},
        doc="order-4 edge along a lightlike helix; H stays bounded")


def _order5_helix(beta=2.0):
    beta = float(beta)
    r = const(1.0) + const(0.5) * T ** 2
    z = S - const(beta / 6.0) * T ** 3 + const(0.125) * T ** 4
    spec = EdgeSpec(EdgeFamily.ClosedForm,
                    components=(r * cos(S), r * sin(S), z),
                    metric=LORENTZIAN, label="order5_helix")
    edge = build_edge(spec, s_span=(-1.0, 1.0))
    expected = {
        "E": Expected(lambda s, t: t * t * (t * t + 4) / 4.0),
        "F": Expected(lambda s, t: t * t * (beta - t) / 2.0),
        "G": Expected(
            lambda s, t: t * t * (4 - beta * beta * t * t
                                  + 2 * beta * t ** 3 - t ** 4) / 4.0),
        "order": Expected(5, kind="discrete"),
        "causal_flips": Expected(True, kind="discrete"),
        "H_bounded": Expected(False, kind="discrete"),
        "K_bounded": Expected(False, kind="discrete"),
    }
    if beta == 2.0:
        def q(t):
            return -16 + 16 * t - 16 * t * t + 8 * t ** 3 - 4 * t ** 4 + t ** 5

        def delta_exact(s, t):
            e_ = t * t * (t * t + 4) / 4.0
            f_ = t * t * (2.0 - t) / 2.0
            g_ = t * t * (4 - 4 * t * t + 4 * t ** 3 - t ** 4) / 4.0
            return e_ * g_ - f_ * f_

        expected["delta"] = Expected(delta_exact)
        expected["K"] = Expected(
            lambda s, t: -16 * (-24 + 32 * t - 36 * t * t + 24 * t ** 3
                                - 18 * t ** 4 + 8 * t ** 5 - 3 * t ** 6 + t ** 7)
            / (t ** 5 * q(t) ** 2))
        expected["H_abs"] = Expected(
            lambda s, t: abs((-16 + 24 * t + 8 * t * t - 44 * t ** 3 + 44 * t ** 4
                              - 32 * t ** 5 + 16 * t ** 6 - 6 * t ** 7 + t ** 8)
                             / (abs(t) ** 2.5 * abs(q(t)) ** 1.5)))
    return GalleryEntry("order5_helix", edge, expected, params={"beta": beta},
                        doc="order-5 edge; causal type changes across the edge")


def _null_spiral():
    # base curve (gamma(s), 0) with plane curvature e^s; f = Gamma + t(a1 + a2)
    ivp = builtin_frame("lightlike_lift", kappa=exp(S), phi_prime=0.0)
    spec = EdgeSpec(EdgeFamily.ClosedForm, frame=ivp, xy=(T, T),
                    label="null_spiral")
    edge = build_edge(spec, s_span=(-1.0, 1.0), validate=False)
    return GalleryEntry("null_spiral", edge, {
        "order": Expected("infinite", kind="discrete"),
        "delta_identically_zero": Expected(True, kind="discrete"),
    }, doc="lightlike ruled strip; Delta vanishes identically")


def _umbilic_cross_cap():
    # f = Gamma + v Gamma', Gamma(u) = (u, u^2, u^4); umbilics fill the v-axis
    spec = EdgeSpec(
        EdgeFamily.ClosedForm,
        components=(S + T, S * S + 2 * S * T, S ** 4 + 4 * S ** 3 * T),
        metric=LORENTZIAN, label="umbilic_cross_cap")
    edge = build_edge(spec, s_span=(-1.0, 1.0), validate=False)
    return GalleryEntry("umbilic_cross_cap", edge, {
        "umbilics_on_v_axis": Expected(True, kind="discrete"),
    }, doc="tangent developable of (u, u^2, u^4); umbilics accumulate at 0")


_MAKERS = {
    "fold": _fold,
    "cuspidal_cross_cap": _cuspidal_cross_cap,
    "order3_circle": _order3_circle,
    "order4_helix": _order4_helix,
    "order5_helix": _order5_helix,
    "null_spiral": _null_spiral,
    "umbilic_cross_cap": _umbilic_cross_cap,
}

# (a, sigma) pairs covering the three causal/convexity branches
ORDER4_BRANCHES = ((1.0, 1), (2.0, -1), (0.5, -1))


def list_gallery():
    return sorted(_MAKERS)


def gallery_entry(name, **params) -> GalleryEntry:
    maker = _MAKERS.get(name)
    if maker is None:
        raise KeyError(f"unknown gallery example {name!r}; "
                       f"known: {', '.join(list_gallery())}")
    return maker(**params)


def make_example(name, **params):
    """Named example surface; its GalleryEntry table rides along as
    `.gallery` on the returned handle."""
    entry = gallery_entry(name, **params)
    entry.edge.gallery = entry
    return entry.edge
