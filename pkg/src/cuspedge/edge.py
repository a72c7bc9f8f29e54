"""Generalized cuspidal edges f(s, t) with singular set {t = 0}.

An edge is either assembled over a moving frame,

    f(s, t) = Gamma(s) + X(s, t) a1(s) + Y(s, t) a2(s),

with (X, Y) coming from a cusp profile mu via

    lambda = int_0^t mu ds',   (A, B) = int_0^t u (cos, sin)(lambda) du
                               (cosh/sinh on the hyperbolic families)
    (X, Y) = (cos th A + sin th B, -sin th A + cos th B),

or given by raw closed-form components.  Each family fixes the frame
signature, the metric, and the trig/hyperbolic branch:

    E             Euclidean,  epsilons (1, 1, 1),    trig
    T             Lorentzian, epsilons (-1, 1, 1),   trig   (timelike curve)
    Ss / St       Lorentzian, (1, 1, -1)/(1, -1, 1), hyperbolic
    Sl            Lorentzian, (1, 1, -1), trig, lightlike normal direction
    LightGeneral  Lorentzian, (1, 1, -1), trig, lightlike lift base curve
    OrderFour     Lorentzian, same frame as LightGeneral, theta in {0, pi}
    ClosedForm    any metric, raw components or raw (X, Y) over a frame

All derived quantities are computed from truncated Taylor jets of f, so
derivatives carry no discretization error; jets at t != 0 of the integral
profiles are obtained by Taylor-stepping the antiderivatives along t.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .expr import Expr
from .frame import FrameData, FrameField, FrameIVP, integrate_frame
from .jet import DEFAULT_ORDER, Jet2, MuSpec, lift
from .metric3 import (EUCLIDEAN, LORENTZIAN, CausalClass, Metric, causal_class,
                      cross, inner, metric_by_name)

MARCH_ORDER = 10
MARCH_STEP = 0.0625
LIGHTLIKE_CUTOFF = 1e-12
QUASI_DIAGONAL_TOL = 1e-10


class EdgeError(ValueError):
    pass


class LightlikePointError(EdgeError):
    """Raised when curvatures are requested where Delta ~ 0 (lightlike locus)."""


class EdgeFamily(enum.Enum):
    E = "e"
    T = "t"
    Ss = "s_s"
    St = "s_t"
    Sl = "s_l"
    LightGeneral = "light_general"
    OrderFour = "order_four"
    ClosedForm = "closed_form"


_HYPERBOLIC = {EdgeFamily.Ss, EdgeFamily.St}

_FAMILY_EPSILONS = {
    EdgeFamily.E: (1, 1, 1),
    EdgeFamily.T: (-1, 1, 1),
    EdgeFamily.Ss: (1, 1, -1),
    EdgeFamily.St: (1, -1, 1),
    EdgeFamily.Sl: (1, 1, -1),
    EdgeFamily.LightGeneral: (1, 1, -1),
    EdgeFamily.OrderFour: (1, 1, -1),
}


@dataclass
class EdgeSpec:
    family: EdgeFamily
    frame: FrameIVP | None = None
    mu: MuSpec | None = None
    theta: Expr | None = None
    sigma: int | None = None
    components: tuple | None = None
    xy: tuple | None = None
    metric: Metric | None = None
    label: str = ""

    def __post_init__(self):
        fam = self.family
        if fam == EdgeFamily.ClosedForm:
            if self.components is None and (self.frame is None or self.xy is None):
                raise EdgeError("closed form needs components, or a frame plus raw (X, Y)")
            if self.components is not None and self.metric is None:
                raise EdgeError("closed-form components need an explicit metric")
        else:
            if self.frame is None or self.mu is None:
                raise EdgeError(f"family {fam.name} needs a frame and a mu profile")
            want = _FAMILY_EPSILONS[fam]
            if tuple(self.frame.data.epsilons) != want:
                raise EdgeError(
                    f"family {fam.name} needs frame signature {want}, "
                    f"got {self.frame.data.epsilons}")
            if fam == EdgeFamily.OrderFour and self.sigma not in (-1, 1):
                raise EdgeError("order-four edges need sigma = +-1")
            if fam in (EdgeFamily.E, EdgeFamily.T, EdgeFamily.Ss, EdgeFamily.St) \
                    and self.theta is not None:
                raise EdgeError(
                    f"family {fam.name} has theta = 0 by definition; fold the "
                    "angle into the frame instead")
        if self.metric is None:
            if self.frame is not None:
                self.metric = self.frame.data.metric
            else:
                self.metric = EUCLIDEAN if fam == EdgeFamily.E else LORENTZIAN

    # -- serialization -----------------------------------------------------
    def to_dict(self):
        d = {"family": self.family.value, "label": self.label,
             "metric": self.metric.name}
        if self.frame is not None:
            fd = self.frame.data
            d["frame"] = {
                "epsilons": list(fd.epsilons),
                "k1": fd.k1.to_dict(), "k2": fd.k2.to_dict(),
                "omega": fd.omega.to_dict(),
                "metric": fd.metric.name,
                "phi_prime": None if fd.phi_prime is None else fd.phi_prime.to_dict(),
                "F0": np.asarray(self.frame.F0).tolist(),
                "Gamma0": np.asarray(self.frame.Gamma0).tolist(),
                "s_init": self.frame.s_init,
                "label": self.frame.label,
            }
        if self.mu is not None:
            d["mu"] = self.mu.to_dict()
        if self.theta is not None:
            d["theta"] = self.theta.to_dict()
        if self.sigma is not None:
            d["sigma"] = self.sigma
        if self.components is not None:
            d["components"] = [c.to_dict() for c in self.components]
        if self.xy is not None:
            d["xy"] = [c.to_dict() for c in self.xy]
        return d

    @staticmethod
    def from_dict(d):
        frame = None
        if d.get("frame") is not None:
            fr = d["frame"]
            data = FrameData(
                tuple(fr["epsilons"]),
                Expr.from_dict(fr["k1"]), Expr.from_dict(fr["k2"]),
                Expr.from_dict(fr["omega"]),
                metric_by_name(fr["metric"]),
                None if fr.get("phi_prime") is None else Expr.from_dict(fr["phi_prime"]),
            )
            frame = FrameIVP(data, np.asarray(fr["F0"], float),
                             np.asarray(fr["Gamma0"], float),
                             float(fr.get("s_init", 0.0)), fr.get("label", ""))
        return EdgeSpec(
            family=EdgeFamily(d["family"]),
            frame=frame,
            mu=None if d.get("mu") is None else MuSpec.from_dict(d["mu"]),
            theta=None if d.get("theta") is None else Expr.from_dict(d["theta"]),
            sigma=d.get("sigma"),
            components=None if d.get("components") is None
            else tuple(Expr.from_dict(c) for c in d["components"]),
            xy=None if d.get("xy") is None
            else tuple(Expr.from_dict(c) for c in d["xy"]),
            metric=metric_by_name(d["metric"]) if d.get("metric") else None,
            label=d.get("label", ""),
        )


class JetSurface:
    """Anything that can hand out Taylor jets of its components."""

    metric: Metric

    def __init__(self, metric):
        self.metric = metric
        self._cache = {}

    def jets(self, s, t, order=DEFAULT_ORDER):
        key = (round(float(s), 12), round(float(t), 12), order)
        out = self._cache.get(key)
        if out is None:
            out = self._jets(s, t, order)
            if len(self._cache) > 4096:
                self._cache.clear()
            self._cache[key] = out
        return out

    def _jets(self, s, t, order):
        raise NotImplementedError

    def point(self, s, t):
        fx, fy, fz = self.jets(s, t, 2)
        return np.array([fx.value(), fy.value(), fz.value()])


class ClosedFormSurface(JetSurface):
    def __init__(self, components, metric):
        super().__init__(metric)
        self.components = tuple(components)

    def _jets(self, s, t, order):
        return tuple(lift(c, (s, t), order) for c in self.components)


class ReparametrizedSurface(JetSurface):
    """Pullback of a surface under (u, v) -> (s(u, v), t(u, v))."""

    def __init__(self, base, s_expr, t_expr):
        super().__init__(base.metric)
        self.base_surface = base
        self.s_expr, self.t_expr = s_expr, t_expr

    def _jets(self, u, v, order):
        sj = lift(self.s_expr, (u, v), order)
        tj = lift(self.t_expr, (u, v), order)
        s0, t0 = sj.value(), tj.value()
        inner_jets = self.base_surface.jets(s0, t0, order)
        p, q = sj - s0, tj - t0
        return tuple(j.compose(p, q) for j in inner_jets)


class Edge(JetSurface):
    """A generalized cuspidal edge built from an EdgeSpec."""

    def __init__(self, spec: EdgeSpec, s_span=(-1.0, 1.0), validate=True):
        super().__init__(spec.metric)
        self.spec = spec
        self.s_span = tuple(s_span)
        self.field = None
        if spec.frame is not None:
            self.field = integrate_frame(spec.frame, s_span)
        self._march_cache = {}
        if validate:
            self._validate()

    # -- jets ----------------------------------------------------------------
    def _jets(self, s, t, order):
        spec = self.spec
        if spec.family == EdgeFamily.ClosedForm and spec.components is not None:
            return tuple(lift(c, (s, t), order) for c in spec.components)
        base = (s, t)
        n = max(order, MARCH_ORDER)
        if spec.xy is not None:
            X = lift(spec.xy[0], base, n)
            Y = lift(spec.xy[1], base, n)
        else:
            A, B = self._profile_jets(s, t, n)
            if spec.family == EdgeFamily.OrderFour:
                X, Y = spec.sigma * A, spec.sigma * B
            elif spec.theta is not None:
                th = lift(spec.theta, base, n)
                ct, st = th.cos(), th.sin()
                X = ct * A + st * B
                Y = ct * B - st * A
            else:
                X, Y = A, B
        a, gamma = self.field.jets(s, n)
        out = []
        for comp in range(3):
            g = Jet2(base, n)
            g.c[: n + 1, 0] = gamma[comp]
            a1 = Jet2(base, n)
            a1.c[: n + 1, 0] = a[1, comp]
            a2 = Jet2(base, n)
            a2.c[: n + 1, 0] = a[2, comp]
            out.append((g + X * a1 + Y * a2).truncated(order))
        return tuple(out)

    def _profile_jets(self, s, t, order):
        """Jets of the integrals (A, B) at (s, t), marched out from t = 0."""
        key = (round(float(s), 12), round(float(t), 12), order)
        hit = self._march_cache.get(key)
        if hit is not None:
            return hit
        hyp = self.spec.family in _HYPERBOLIC
        mu_expr = self.spec.mu.as_expr()
        nsteps = max(1, math.ceil(abs(t) / MARCH_STEP))
        h = t / nsteps
        zeros = np.zeros(1)
        lam_c, a_c, b_c = zeros, zeros, zeros
        for k in range(nsteps + 1):
            tau = k * h
            base = (s, tau)
            mu = lift(mu_expr, base, order)
            lam = mu.antiderivative_t(lam_c).truncated(order)
            u = Jet2.variable_t(base, order)
            ca = (lam.cosh() if hyp else lam.cos()) * u
            cb = (lam.sinh() if hyp else lam.sin()) * u
            A = ca.antiderivative_t(a_c).truncated(order)
            B = cb.antiderivative_t(b_c).truncated(order)
            if k == nsteps:
                out = (A, B)
                break
            lam_c = lam.eval_partial_t(h)
            a_c = A.eval_partial_t(h)
            b_c = B.eval_partial_t(h)
        if len(self._march_cache) > 4096:
            self._march_cache.clear()
        self._march_cache[key] = out
        return out

    # -- validation ----------------------------------------------------------
    def _validate(self):
        lo, hi = self.s_span
        for s in np.linspace(lo + 1e-3, hi - 1e-3, 5):
            f = self.jets(s, 0.0, 3)
            ft = np.array([c.coefficient(0, 1) for c in f])
            fs = np.array([c.coefficient(1, 0) for c in f])
            ftt = np.array([2 * c.coefficient(0, 2) for c in f])
            scale = max(1.0, float(np.linalg.norm(fs)))
            if np.linalg.norm(ft) > 1e-9 * scale:
                raise EdgeError(
                    f"singular set is not t=0: |f_t({s:.3f}, 0)| = "
                    f"{np.linalg.norm(ft):.3e}")
            if np.linalg.norm(np.cross(fs, ftt)) <= 1e-8 * scale * max(
                    1.0, float(np.linalg.norm(ftt))):
                raise EdgeError(
                    f"f_tt and Gamma' are dependent at s = {s:.3f}; "
                    "not a generalized cuspidal edge")


def build_edge(spec: EdgeSpec, s_span=(-1.0, 1.0), validate=True) -> Edge:
    return Edge(spec, s_span, validate)


# -- fundamental forms --------------------------------------------------------

@dataclass(frozen=True)
class FundForms:
    E: float
    F: float
    G: float
    delta: float
    L: float
    M: float
    N: float
    nu: np.ndarray = field(repr=False)
    metric: Metric = field(repr=False, default=None)


@dataclass(frozen=True)
class CurvatureBundle:
    forms: FundForms
    K: float
    h_signed: float
    h_abs: float
    lambda1: complex
    lambda2: complex
    is_quasi_diagonal: bool
    wtilde: np.ndarray = field(repr=False, default=None)
    shape_operator: np.ndarray = field(repr=False, default=None)


def _derivative_values(jets):
    """First and second derivative vectors from order >= 2 jets."""
    fs = np.array([j.coefficient(1, 0) for j in jets])
    ft = np.array([j.coefficient(0, 1) for j in jets])
    fss = np.array([2 * j.coefficient(2, 0) for j in jets])
    fst = np.array([j.coefficient(1, 1) for j in jets])
    ftt = np.array([2 * j.coefficient(0, 2) for j in jets])
    return fs, ft, fss, fst, ftt


def fund_forms(surf: JetSurface, s, t) -> FundForms:
    jets = surf.jets(s, t, 2)
    fs, ft, fss, fst, ftt = _derivative_values(jets)
    m = surf.metric
    E = inner(m, fs, fs)
    F = inner(m, fs, ft)
    G = inner(m, ft, ft)
    nu = cross(m, fs, ft)
    # <v, cross(a, b)> = det(a, b, v) in either metric, so L, M, N agree with
    # the determinant forms det(f_s, f_t, f_ss) etc.
    L = inner(m, fss, nu)
    M = inner(m, fst, nu)
    N = inner(m, ftt, nu)
    return FundForms(E, F, G, E * G - F * F, L, M, N, nu, m)


def wtilde_matrix(ff: FundForms) -> np.ndarray:
    return np.array([[ff.G, -ff.F], [-ff.F, ff.E]]) @ \
        np.array([[ff.L, ff.M], [ff.M, ff.N]])


def lightlike_cutoff(ff: FundForms) -> float:
    scale2 = max(1.0, abs(ff.E) + 2 * abs(ff.F) + abs(ff.G))
    return LIGHTLIKE_CUTOFF * scale2 * scale2


def curvature_bundle(surf: JetSurface, s, t) -> CurvatureBundle:
    ff = fund_forms(surf, s, t)
    if abs(ff.delta) <= lightlike_cutoff(ff):
        raise LightlikePointError(
            f"first fundamental form degenerate at (s, t) = ({s}, {t}): "
            f"Delta = {ff.delta:.3e}")
    wt = wtilde_matrix(ff)
    denom = ff.delta * math.sqrt(abs(ff.delta))
    W = wt / denom
    det_tilde = ff.L * ff.N - ff.M * ff.M
    K = det_tilde / ff.delta ** 2
    if surf.metric.is_lorentzian:
        K = -K
    h_signed = 0.5 * (W[0, 0] + W[1, 1])
    tr, det = W[0, 0] + W[1, 1], W[0, 0] * W[1, 1] - W[0, 1] * W[1, 0]
    root = cmath.sqrt(tr * tr - 4 * det)
    l1 = (tr + root) / 2
    l2 = (tr - root) / 2
    if abs(l2) > abs(l1):
        l1, l2 = l2, l1
    off = max(abs(wt[0, 1]), abs(wt[1, 0]))
    quasi = off <= QUASI_DIAGONAL_TOL * max(np.abs(wt).max(), 1e-300)
    return CurvatureBundle(ff, K, h_signed, abs(h_signed), l1, l2, quasi, wt, W)


def fund_form_jets(surf: JetSurface, s, t, order=DEFAULT_ORDER):
    """Jets of E, F, G, Delta, L, M, N and nu at (s, t).

    Second-order quantities lose two total degrees relative to `order`.
    """
    jets = surf.jets(s, t, order)
    fs = tuple(j.derivative("s") for j in jets)
    ft = tuple(j.derivative("t") for j in jets)
    fss = tuple(j.derivative("s") for j in fs)
    fst = tuple(j.derivative("t") for j in fs)
    ftt = tuple(j.derivative("t") for j in ft)
    m = surf.metric
    E = inner(m, fs, fs)
    F = inner(m, fs, ft)
    G = inner(m, ft, ft)
    nu = cross(m, fs, ft)
    L = inner(m, fss, nu)
    M = inner(m, fst, nu)
    N = inner(m, ftt, nu)
    return {"E": E, "F": F, "G": G, "delta": E * G - F * F,
            "L": L, "M": M, "N": N, "nu": nu,
            "fs": fs, "ft": ft, "fss": fss, "fst": fst, "ftt": ftt}


def delta_t_jet(edge: JetSurface, s, order=12):
    """Taylor coefficients in t of Delta(s, .) at t = 0."""
    jets = fund_form_jets(edge, s, 0.0, order + 2)
    return jets["delta"].t_coefficients()[: order + 1]
