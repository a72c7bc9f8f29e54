"""Pointwise classification of singular points of a generalized cuspidal edge.

Everything is read off jets at (s, 0): the vanishing order of Delta(s, .),
the normal-plane sign sigma_C = sgn det(Gamma', f_tt, Gamma''), the causal
type of the point (reversed causal class of the normal nu), the curve
invariants kappa_s / kappa_nu in both metrics, and the cuspidal-edge /
cuspidal-cross-cap decision from the cusp profile mu0(s).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .cusp2d import adaptive_simpson
from .edge import (Edge, EdgeFamily, JetSurface, curvature_bundle,
                   fund_form_jets, wtilde_matrix)
from .jet import DEFAULT_ORDER, lift
from .metric3 import EUCLIDEAN, CausalClass, causal_class, cross, inner

ORDER_TOL = 1e-9
MAX_ORDER = 8
SIGMA_C_TOL = 1e-9
MU_TOL = 1e-9
INFINITE = math.inf


class SingularType(enum.Enum):
    CuspidalEdge = "cuspidal_edge"
    CuspidalCrossCap = "cuspidal_cross_cap"
    Undetermined = "undetermined"


class Convexity(enum.Enum):
    Convex = "convex"
    Concave = "concave"
    Flat = "flat"


class UmbilicKind(enum.Enum):
    Umbilic = "umbilic"
    QuasiUmbilic = "quasi_umbilic"


@dataclass
class SingularPointReport:
    s: float
    order: float
    sigma_c: int
    d_c: float
    singular_type: SingularType
    causal_type: CausalClass | None
    mu0: float | None
    mu0_prime: float | None
    convexity: Convexity | None
    invariants: dict
    mu_estimated: bool = False

    def to_dict(self):
        return {
            "s": self.s,
            "order": "infinite" if self.order == INFINITE else int(self.order),
            "sigma_c": self.sigma_c,
            "d_c": self.d_c,
            "singular_type": self.singular_type.value,
            "causal_type": None if self.causal_type is None else self.causal_type.value,
            "mu0": self.mu0,
            "mu0_prime": self.mu0_prime,
            "convexity": None if self.convexity is None else self.convexity.value,
            "invariants": self.invariants,
            "mu_estimated": self.mu_estimated,
        }


def order_at(surf: JetSurface, s, t0=0.0, max_order=MAX_ORDER, tol=ORDER_TOL):
    """Vanishing order of Delta(s, .) in t at t0 (normally the singular axis).

    Returns the least k with a non-negligible k-th Taylor coefficient, or
    INFINITE when the whole jet vanishes and (for surfaces that can be
    sampled off the axis) Delta itself vanishes there too.
    """
    jets = fund_form_jets(surf, s, t0, max_order + 3)
    coeffs = jets["delta"].t_coefficients()[: max_order + 1]
    band = tol * max(1.0, float(np.max(np.abs(coeffs))))
    for k, c in enumerate(coeffs):
        if abs(c) > band:
            return k
    # flat jet: confirm flatness by sampling, else the order exceeds max_order
    for dt in (0.05, 0.1, 0.2):
        d = fund_form_jets(surf, s, t0 + dt, 2)["delta"].value()
        if abs(d) > 1e-6:
            raise ValueError(
                f"Delta vanishes to order > {max_order} at s = {s} "
                "but is not identically zero")
    return INFINITE


def sigma_c(edge: JetSurface, s, tol=SIGMA_C_TOL):
    """Sign of d_C = det(Gamma', f_tt, Gamma'') = -det(f_s, f_ss, f_tt) at (s, 0)."""
    f = edge.jets(s, 0.0, 3)
    fs = np.array([j.coefficient(1, 0) for j in f])
    fss = np.array([2 * j.coefficient(2, 0) for j in f])
    ftt = np.array([2 * j.coefficient(0, 2) for j in f])
    d = -float(np.linalg.det(np.column_stack([fs, fss, ftt])))
    band = tol * max(1.0, np.linalg.norm(fs) * np.linalg.norm(fss) * np.linalg.norm(ftt))
    sign = 0 if abs(d) <= band else (1 if d > 0 else -1)
    return sign, d


def causal_type_at(edge: JetSurface, s) -> CausalClass | None:
    """Causal type of the singular point: the reverse of the class of nu.

    A point is spacelike when nu is timelike, and vice versa; lightlike when
    nu is lightlike.  Only meaningful in the Lorentzian metric.
    """
    if not edge.metric.is_lorentzian:
        return None
    f = edge.jets(s, 0.0, 3)
    fs = np.array([j.coefficient(1, 0) for j in f])
    ftt = np.array([2 * j.coefficient(0, 2) for j in f])
    nu = cross(edge.metric, fs, ftt)
    cls = causal_class(edge.metric, nu / max(np.linalg.norm(nu), 1e-300))
    if cls == CausalClass.Spacelike:
        return CausalClass.Timelike
    if cls == CausalClass.Timelike:
        return CausalClass.Spacelike
    return CausalClass.Lightlike


def _mu_values(edge: Edge, s):
    mu_jet = lift(edge.spec.mu.as_expr(), (s, 0.0), 2)
    return mu_jet.coefficient(0, 0), mu_jet.coefficient(1, 0)


def _estimate_mu0(edge: JetSurface, s):
    """Cuspidal curvature of the t-section through (s, 0), over a dyadic ladder.

    mu0 = tau/2 with tau = 2 sqrt(2) lim kappa(t) sqrt(|arclen(t)|) along the
    section c(t) = f(s, t) (Euclidean quantities).  An estimate only; exact
    values require a mu profile.
    """
    from .asympt import richardson_limit

    j0 = edge.jets(s, 0.0, 1)
    gp = np.array([x.coefficient(1, 0) for x in j0])
    gp /= np.linalg.norm(gp)

    def kappa_sqrt_s(t):
        j = edge.jets(s, t, 2)
        cp = np.array([x.coefficient(0, 1) for x in j])
        cpp = np.array([2 * x.coefficient(0, 2) for x in j])
        # curvature signed against the edge direction, so mu0 keeps its
        # sign and mu0' survives the s-derivative at a zero of mu0
        kap = float(np.dot(np.cross(cp, cpp), gp)) / np.linalg.norm(cp) ** 3
        arc, err = adaptive_simpson(
            lambda u: np.linalg.norm(
                np.array([x.coefficient(0, 1) for x in edge.jets(s, u, 1)])),
            0.0, t, 1e-10)
        return kap * math.sqrt(2 * abs(arc))

    ts = [0.1 * 2.0 ** -k for k in range(6)]
    est, _ = richardson_limit([kappa_sqrt_s(t) for t in ts])
    return est


def singular_type(edge: JetSurface, s, tol=MU_TOL, allow_estimates=False):
    """Cuspidal edge vs cuspidal cross cap from the cusp profile.

    Cuspidal edge iff mu0(s) != 0; cross cap iff mu0 = 0 and mu0' != 0.
    Without a mu profile the answer is Undetermined unless estimates are
    explicitly allowed.  Returns (type, mu0, mu0', estimated).
    """
    if isinstance(edge, Edge) and edge.spec.mu is not None:
        mu0, mu0p = _mu_values(edge, s)
        estimated = False
    elif allow_estimates:
        h = 1e-3
        mu0 = _estimate_mu0(edge, s)
        mu0p = (_estimate_mu0(edge, s + h) - _estimate_mu0(edge, s - h)) / (2 * h)
        estimated = True
    else:
        return SingularType.Undetermined, None, None, False
    if abs(mu0) > tol:
        return SingularType.CuspidalEdge, mu0, mu0p, estimated
    if abs(mu0p) > tol:
        return SingularType.CuspidalCrossCap, mu0, mu0p, estimated
    return SingularType.Undetermined, mu0, mu0p, estimated


def edge_invariants(edge: JetSurface, s) -> dict:
    """kappa_s and kappa_nu at (s, 0) in the Euclidean and ambient metrics.

    Euclidean: D is the unit normal part of f_tt against Gamma', nu the unit
    binormal; kappa_s = <Gamma'', D>/<Gamma', Gamma'> and similarly kappa_nu.
    The Lorentzian analogues exist when neither Gamma' nor the normal part
    is lightlike.
    """
    f = edge.jets(s, 0.0, 3)
    gp = np.array([j.coefficient(1, 0) for j in f])
    gpp = np.array([2 * j.coefficient(2, 0) for j in f])
    ftt = np.array([2 * j.coefficient(0, 2) for j in f])
    out = {}
    dt = ftt - (ftt @ gp) / (gp @ gp) * gp
    nu = np.cross(gp, ftt)
    out["kappa_s_e"] = float(gpp @ dt / (np.linalg.norm(dt) * (gp @ gp)))
    out["kappa_nu_e"] = float(gpp @ nu / (np.linalg.norm(nu) * (gp @ gp)))
    if edge.metric.is_lorentzian:
        g2 = inner(edge.metric, gp, gp)
        if abs(g2) > 1e-9 * (gp @ gp):
            dl = ftt - inner(edge.metric, ftt, gp) / g2 * gp
            d2 = inner(edge.metric, dl, dl)
            nl = cross(edge.metric, gp, ftt)
            n2 = inner(edge.metric, nl, nl)
            if abs(d2) > 1e-9 * (dl @ dl) and abs(n2) > 1e-9 * (nl @ nl):
                dl_u = dl / math.sqrt(abs(d2))
                nl_u = nl / math.sqrt(abs(n2))
                e_d = 1.0 if d2 > 0 else -1.0
                out["kappa_s_l"] = float(e_d * inner(edge.metric, gpp, dl_u) / abs(g2))
                # <Gamma'', nu_hat> = d_C, and the causal sign of nu cancels
                # against the orientation of the adapted frame, so no e_n here
                out["kappa_nu_l"] = float(inner(edge.metric, gpp, nl_u) / abs(g2))
    return out


def convexity_of(edge: JetSurface, s, tol=1e-9) -> Convexity:
    ks = edge_invariants(edge, s)["kappa_s_e"]
    if ks > tol:
        return Convexity.Convex
    if ks < -tol:
        return Convexity.Concave
    return Convexity.Flat


def singular_point_report(edge: JetSurface, s, allow_estimates=False) -> SingularPointReport:
    sc, dc = sigma_c(edge, s)
    stype, mu0, mu0p, est = singular_type(edge, s, allow_estimates=allow_estimates)
    return SingularPointReport(
        s=float(s),
        order=order_at(edge, s),
        sigma_c=sc,
        d_c=dc,
        singular_type=stype,
        causal_type=causal_type_at(edge, s),
        mu0=mu0,
        mu0_prime=mu0p,
        convexity=convexity_of(edge, s),
        invariants=edge_invariants(edge, s),
        mu_estimated=est,
    )


# -- umbilic detection ---------------------------------------------------------

@dataclass(frozen=True)
class UmbilicPoint:
    s: float
    t: float
    kind: UmbilicKind
    discriminant: float


def _normalized_disc(surf, s, t):
    from .edge import fund_forms
    ff = fund_forms(surf, s, t)
    wt = wtilde_matrix(ff)
    disc = (wt[0, 0] - wt[1, 1]) ** 2 + 4 * wt[0, 1] * wt[1, 0]
    scale = max(float(np.abs(wt).max()) ** 2, 1e-300)
    return disc / scale, wt, scale


def umbilic_scan(surf: JetSurface, s_range, t_range, grid=(24, 24),
                 bisect_iters=40, tol=1e-8):
    """Locate umbilic and quasi-umbilic points in a parameter box.

    The discriminant of the (rescaled) shape candidate matrix vanishes at
    both kinds; sign changes along grid edges are bisected, and grid points
    where it is already below tol are kept directly.  Umbilic when the
    off-diagonal entries also vanish, quasi-umbilic otherwise.
    """
    ss = np.linspace(s_range[0], s_range[1], grid[0])
    tt = np.linspace(t_range[0], t_range[1], grid[1])
    vals = np.array([[_normalized_disc(surf, s, t)[0] for t in tt] for s in ss])
    hits = []

    def classify_point(s, t):
        d, wt, scale = _normalized_disc(surf, s, t)
        off = max(abs(wt[0, 1]), abs(wt[1, 0])) / math.sqrt(scale)
        kind = UmbilicKind.Umbilic if off <= math.sqrt(tol) else UmbilicKind.QuasiUmbilic
        hits.append(UmbilicPoint(float(s), float(t), kind, float(d)))

    def bisect(p0, p1, v0, v1):
        for _ in range(bisect_iters):
            pm = (0.5 * (p0[0] + p1[0]), 0.5 * (p0[1] + p1[1]))
            vm = _normalized_disc(surf, *pm)[0]
            if v0 * vm <= 0:
                p1, v1 = pm, vm
            else:
                p0, v0 = pm, vm
        classify_point(*pm)

    for i in range(grid[0]):
        for j in range(grid[1]):
            if abs(vals[i, j]) <= tol:
                classify_point(ss[i], tt[j])
                continue
            if j + 1 < grid[1] and vals[i, j] * vals[i, j + 1] < 0:
                bisect((ss[i], tt[j]), (ss[i], tt[j + 1]), vals[i, j], vals[i, j + 1])
            if i + 1 < grid[0] and vals[i, j] * vals[i + 1, j] < 0:
                bisect((ss[i], tt[j]), (ss[i + 1], tt[j]), vals[i, j], vals[i + 1, j])
    return hits
