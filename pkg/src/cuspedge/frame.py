"""Moving frames F = (a0, a1, a2) along a curve, F' = F K(s).

K is determined by curvature functions k1, k2, a normal-connection function
omega, and the signature epsilons of the frame vectors:

    K = [[0,   -e0 e1 k1, -e0 e2 k2],
         [k1,   0,        -e1 e2 om],
         [k2,   om,        0       ]]

The base curve satisfies Gamma' = a0 + phi'(s) a2 (phi' = 0 unless the frame
is a lightlike lift of a plane curve, where a2 is the vertical direction).

Frames are integrated by fixed-step RK4 with a metric Gram-Schmidt projection
after every step; s-jets of the frame come from solving G' = G K order by
order with G(s0) = I, never from differencing the numeric solution.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .expr import Expr
from .jet import DEFAULT_ORDER, Jet2, lift
from .metric3 import EUCLIDEAN, LORENTZIAN, Metric, metric_by_name

RK4_STEP = 1e-3
ORTHONORMAL_TOL = 1e-8


class FrameError(ValueError):
    pass


@dataclass(frozen=True)
class FrameData:
    epsilons: tuple[int, int, int]
    k1: Expr
    k2: Expr
    omega: Expr
    metric: Metric
    phi_prime: Expr | None = None

    def __post_init__(self):
        for e in self.epsilons:
            if e not in (-1, 1):
                raise FrameError(f"frame signature entries must be +-1, got {e}")

    def kmatrix(self, s: float) -> np.ndarray:
        k1, k2 = self.k1(s, 0.0), self.k2(s, 0.0)
        om = self.omega(s, 0.0)
        return self._assemble(k1, k2, om)

    def _assemble(self, k1, k2, om):
        e0, e1, e2 = self.epsilons
        return np.array([
            [0.0, -e0 * e1 * k1, -e0 * e2 * k2],
            [k1, 0.0, -e1 * e2 * om],
            [k2, om, 0.0],
        ])


@dataclass(frozen=True)
class FrameIVP:
    """Frame data plus initial conditions at s = s_init."""
    data: FrameData
    F0: np.ndarray
    Gamma0: np.ndarray
    s_init: float = 0.0
    label: str = ""


def gram_matrix(metric: Metric, F: np.ndarray) -> np.ndarray:
    return F.T @ metric.matrix @ F


def metric_gram_schmidt(metric: Metric, F: np.ndarray, epsilons) -> np.ndarray:
    """Re-orthonormalize frame columns with respect to the metric.

    Assumes the columns are close to orthonormal already (no lightlike
    degeneracies), which RK4 with small steps guarantees.
    """
    E = metric.matrix
    out = np.empty_like(F)
    for i in range(3):
        v = F[:, i].copy()
        for j in range(i):
            v -= epsilons[j] * (v @ E @ out[:, j]) * out[:, j]
        q = v @ E @ v
        if q * epsilons[i] <= 0.0:
            raise FrameError(f"column {i} lost its causal character (<v,v>={q})")
        out[:, i] = v / math.sqrt(abs(q))
    return out


def _check_orthonormal(metric, F, epsilons, tol=ORTHONORMAL_TOL):
    err = np.max(np.abs(gram_matrix(metric, F) - np.diag(epsilons)))
    if err > tol:
        raise FrameError(f"initial frame is not metric-orthonormal (err={err:.3e})")
    # negative orientation would flip the determinant forms and hence H, d_C
    if np.linalg.det(F) < 0:
        raise FrameError("initial frame is negatively oriented (det F0 < 0)")


class FrameField:
    """Numeric frame F(s) and base point Gamma(s) over an s-interval."""

    def __init__(self, ivp: FrameIVP, s_span, step=RK4_STEP):
        self.ivp = ivp
        self.data = ivp.data
        self.step = float(step)
        _check_orthonormal(self.data.metric, ivp.F0, self.data.epsilons)
        self._nodes = {0: (np.asarray(ivp.F0, float), np.asarray(ivp.Gamma0, float))}
        self._lo = self._hi = 0
        self._jet_cache = {}
        self.extend(s_span[0])
        self.extend(s_span[1])

    # -- integration -------------------------------------------------------
    def _phi_prime(self, s):
        return self.data.phi_prime(s, 0.0) if self.data.phi_prime is not None else 0.0

    def _rhs(self, s, F, G):
        dF = F @ self.data.kmatrix(s)
        dG = F[:, 0] + self._phi_prime(s) * F[:, 2]
        return dF, dG

    def _rk4(self, s, F, G, h):
        k1F, k1G = self._rhs(s, F, G)
        k2F, k2G = self._rhs(s + h / 2, F + h / 2 * k1F, G + h / 2 * k1G)
        k3F, k3G = self._rhs(s + h / 2, F + h / 2 * k2F, G + h / 2 * k2G)
        k4F, k4G = self._rhs(s + h, F + h * k3F, G + h * k3G)
        F = F + h / 6 * (k1F + 2 * k2F + 2 * k3F + k4F)
        G = G + h / 6 * (k1G + 2 * k2G + 2 * k3G + k4G)
        return metric_gram_schmidt(self.data.metric, F, self.data.epsilons), G

    def _node_s(self, idx):
        return self.ivp.s_init + idx * self.step

    def extend(self, s):
        while self._node_s(self._hi) < s:
            F, G = self._nodes[self._hi]
            self._nodes[self._hi + 1] = self._rk4(self._node_s(self._hi), F, G, self.step)
            self._hi += 1
        while self._node_s(self._lo) > s:
            F, G = self._nodes[self._lo]
            self._nodes[self._lo - 1] = self._rk4(self._node_s(self._lo), F, G, -self.step)
            self._lo -= 1

    def eval(self, s):
        """Frame and base point at s: returns (F, Gamma)."""
        self.extend(s)
        idx = int(round((s - self.ivp.s_init) / self.step))
        idx = min(max(idx, self._lo), self._hi)
        F, G = self._nodes[idx]
        ds = s - self._node_s(idx)
        if abs(ds) < 1e-15:
            return F.copy(), G.copy()
        nsub = max(1, math.ceil(abs(ds) / self.step))
        h = ds / nsub
        s_cur = self._node_s(idx)
        for _ in range(nsub):
            F, G = self._rk4(s_cur, F, G, h)
            s_cur += h
        return F, G

    # -- formal jets ---------------------------------------------------------
    def jets(self, s0, order=DEFAULT_ORDER):
        """s-jets of the frame vectors and the base point at s0.

        Returns (a, gamma) with a[v, comp, k] and gamma[comp, k] the Taylor
        coefficients in (s - s0)^k.
        """
        key = (round(s0, 12), order)
        if key in self._jet_cache:
            return self._jet_cache[key]
        F0, Gamma0 = self.eval(s0)
        base = (s0, 0.0)
        k1 = lift(self.data.k1, base, order)
        k2 = lift(self.data.k2, base, order)
        om = lift(self.data.omega, base, order)
        K = np.zeros((order + 1, 3, 3))
        for m in range(order + 1):
            K[m] = self.data._assemble(k1.c[m, 0], k2.c[m, 0], om.c[m, 0])
        # G' = G K, G(s0) = I, solved order by order
        G = np.zeros((order + 2, 3, 3))
        G[0] = np.eye(3)
        for k in range(order + 1):
            acc = np.zeros((3, 3))
            for j in range(k + 1):
                acc += G[j] @ K[k - j]
            G[k + 1] = acc / (k + 1)
        a = np.einsum("ij,kjv->vik", F0, G[: order + 1]).copy()
        # Gamma' = a0 + phi'(s) a2
        if self.data.phi_prime is not None:
            pp = lift(self.data.phi_prime, base, order).c[:, 0]
            vel = a[0].copy()
            for m in range(order + 1):
                vel[:, m:] += pp[m] * a[2][:, : order + 1 - m]
        else:
            vel = a[0]
        gamma = np.zeros((3, order + 1))
        gamma[:, 0] = Gamma0
        gamma[:, 1:] = vel[:, :order] / np.arange(1, order + 1)
        out = (a, gamma)
        self._jet_cache[key] = out
        return out


def integrate_frame(ivp: FrameIVP, s_span, step=RK4_STEP) -> FrameField:
    return FrameField(ivp, s_span, step)


def frame_jet(field: FrameField, s0, order=DEFAULT_ORDER):
    return field.jets(s0, order)


# -- builtin initial-value setups -------------------------------------------

def builtin_frame(name, **params) -> FrameIVP:
    """Named frame setups.

    frenet_of(kappa, tau): Euclidean Frenet frame from curvature/torsion
        expressions, starting at the origin with the standard axes.
    circle(radius, metric): planar circle with inward unit normal and
        constant third direction e3.
    helix(a, b): Euclidean arc-length helix (a cos, a sin, b) with its
    Frenet frame.
    lightlike_lift(kappa, phi_prime): lightlike lift (gamma(s), phi(s)) of a
        unit-speed plane curve of curvature kappa, frame (e, n, e3) in the
        Lorentzian metric.  Defaults reproduce Gamma = (cos s, sin s, s).
    """
    c = Expr._coerce
    if name == "frenet_of":
        data = FrameData((1, 1, 1), c(params["kappa"]), c(0.0),
                         c(params.get("tau", 0.0)), EUCLIDEAN)
        return FrameIVP(data, np.eye(3), np.zeros(3), label=name)
    if name == "circle":
        r = float(params.get("radius", 1.0))
        metric = params.get("metric", EUCLIDEAN)
        if isinstance(metric, str):
            metric = metric_by_name(metric)
        eps = (1, 1, -1) if metric.is_lorentzian else (1, 1, 1)
        data = FrameData(eps, c(1.0 / r), c(0.0), c(0.0), metric)
        F0 = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
        return FrameIVP(data, F0, np.array([r, 0.0, 0.0]), label=name)
    if name == "helix":
        a, b = float(params.get("a", 1.0)), float(params.get("b", 1.0))
        w = a * a + b * b
        data = FrameData((1, 1, 1), c(a / w), c(0.0), c(b / w), EUCLIDEAN)
        rw = math.sqrt(w)
        F0 = np.array([[0.0, -1.0, 0.0],
                       [a / rw, 0.0, -b / rw],
                       [b / rw, 0.0, a / rw]])
        return FrameIVP(data, F0, np.array([a, 0.0, 0.0]), label=name)
    if name == "lightlike_lift":
        kappa = c(params.get("kappa", 1.0))
        phi_prime = c(params.get("phi_prime", 1.0))
        data = FrameData((1, 1, -1), kappa, c(0.0), c(0.0), LORENTZIAN,
                         phi_prime=phi_prime)
        gamma0 = np.asarray(params.get("gamma0", (1.0, 0.0, 0.0)), float)
        F0 = np.asarray(params.get("F0", [[0.0, -1.0, 0.0],
                                          [1.0, 0.0, 0.0],
                                          [0.0, 0.0, 1.0]]), float)
        return FrameIVP(data, F0, gamma0, label=name)
    raise ValueError(f"unknown builtin frame {name!r}")
