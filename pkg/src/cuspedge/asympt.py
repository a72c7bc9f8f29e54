"""Asymptotics of curvature quantities near the singular set.

Leading coefficients of poles are extracted on the dyadic ladder
t_j = t0 * 2^-j by Richardson extrapolation (the expansions are full power
series in t, so the classical first-order elimination table applies).
`verify_family` compares the fitted coefficients against the predicted
leading terms of each edge family; boundedness decisions use growth ratios
on the ladder plus the pole-coefficient bands, so non-integer pole orders
are classified correctly.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .classify import convexity_of, order_at, sigma_c, Convexity, INFINITE
from .edge import Edge, EdgeFamily, curvature_bundle, wtilde_matrix, fund_forms
from .jet import lift

T0 = 0.1
LEVELS = 7
BOUNDED_BAND = 1e-4
UNBOUNDED_BAND = 1e-1
FIT_RESIDUAL_TOL = 1e-3


class Boundedness(enum.Enum):
    Bounded = "bounded"
    Unbounded = "unbounded"
    Inconclusive = "inconclusive"


def richardson_limit(values, ratio=2.0):
    """Limit of a sequence sampled at steps h, h/r, h/r^2, ... with an
    error expansion in integer powers of h.  Returns (limit, residual)."""
    vals = [np.asarray(values, float)]
    for m in range(1, len(values)):
        prev = vals[-1]
        fac = ratio ** m
        vals.append((fac * prev[1:] - prev[:-1]) / (fac - 1.0))
    limit = float(vals[-1][-1])
    resid = abs(limit - float(vals[-2][-1])) if len(values) > 1 else math.inf
    return limit, resid


@dataclass(frozen=True)
class Fit:
    value: float
    residual: float
    samples: tuple = field(repr=False, default=())


def fit_leading(fn, pole, t0=T0, levels=LEVELS, side=1.0) -> Fit:
    """Leading coefficient c of fn(t) ~ c t^-pole as t -> 0 (one-sided).

    pole may be negative: pole = -2 fits the t^2 coefficient of a quantity
    vanishing to second order.
    """
    ts = [side * t0 * 2.0 ** -j for j in range(levels)]
    samples = tuple(fn(t) * abs(t) ** pole for t in ts)
    value, resid = richardson_limit(samples)
    return Fit(value, resid, samples)


def classify_boundedness(fn, t0=T0, levels=LEVELS, scale=1.0, side=1.0) -> Boundedness:
    """Bounded / unbounded decision for |fn| on the dyadic ladder."""
    ts = [side * t0 * 2.0 ** -j for j in range(levels)]
    v = np.array([abs(fn(t)) for t in ts])
    grow = v[1:] / np.maximum(v[:-1], 1e-300)
    if np.all(grow[-3:] >= 1.4):
        return Boundedness.Unbounded
    coeff, _ = richardson_limit(v * np.abs(ts))
    if abs(coeff) <= BOUNDED_BAND * scale:
        return Boundedness.Bounded
    if abs(coeff) >= UNBOUNDED_BAND * scale:
        return Boundedness.Unbounded
    return Boundedness.Inconclusive


# -- family parameters ---------------------------------------------------------

@dataclass
class FamilyParams:
    k1: float
    k2: float
    omega: float
    k1_prime: float
    mu0: float
    mu1: float
    mu0_prime: float
    theta: float
    theta_prime: float
    phi2: float
    sigma: int | None
    d_c: float

    @property
    def delta1(self):
        return (self.k1 + self.k2) / math.sqrt(2.0)


def family_params(edge: Edge, s0) -> FamilyParams:
    fd = edge.spec.frame.data
    base = (s0, 0.0)
    k1j = lift(fd.k1, base, 2)
    k2j = lift(fd.k2, base, 2)
    omj = lift(fd.omega, base, 2)
    muj = lift(edge.spec.mu.as_expr(), base, 2)
    theta = theta_p = 0.0
    if edge.spec.theta is not None:
        thj = lift(edge.spec.theta, base, 2)
        theta, theta_p = thj.coefficient(0, 0), thj.coefficient(1, 0)
    elif edge.spec.family == EdgeFamily.OrderFour and edge.spec.sigma == -1:
        theta = math.pi
    phi2 = 0.0
    if fd.phi_prime is not None:
        phi2 = lift(fd.phi_prime, base, 2).coefficient(1, 0)
    _, d_c = sigma_c(edge, s0)
    return FamilyParams(
        k1=k1j.coefficient(0, 0), k2=k2j.coefficient(0, 0),
        omega=omj.coefficient(0, 0), k1_prime=k1j.coefficient(1, 0),
        mu0=muj.coefficient(0, 0), mu1=muj.coefficient(0, 1),
        mu0_prime=muj.coefficient(1, 0),
        theta=theta, theta_prime=theta_p, phi2=phi2,
        sigma=edge.spec.sigma, d_c=d_c)


# -- family verification -------------------------------------------------------

@dataclass
class VerifyEntry:
    quantity: str
    predicted: float
    fitted: float
    residual: float
    rel_error: float
    passed: bool

    def line(self):
        flag = "PASS" if self.passed else "FAIL"
        return (f"{flag} {self.quantity}: predicted {self.predicted:+.6e} "
                f"fitted {self.fitted:+.6e} rel {self.rel_error:.2e}")


@dataclass
class VerificationReport:
    family: str
    s0: float
    entries: list
    checks: dict

    @property
    def passed(self):
        return all(e.passed for e in self.entries) and all(self.checks.values())

    def lines(self):
        out = [e.line() for e in self.entries]
        out += [f"{'PASS' if ok else 'FAIL'} {name}" for name, ok in self.checks.items()]
        return out


def _entry(name, predicted, fit: Fit, tol) -> VerifyEntry:
    rel = abs(fit.value - predicted) / max(abs(predicted), 1.0)
    return VerifyEntry(name, predicted, fit.value, fit.residual, rel, rel <= tol)


def _kh_samplers(edge, s0):
    def K(t):
        return curvature_bundle(edge, s0, t).K

    def H(t):
        return curvature_bundle(edge, s0, t).h_signed

    def l1(t):
        return curvature_bundle(edge, s0, t).lambda1.real

    def l2(t):
        return curvature_bundle(edge, s0, t).lambda2.real

    return K, H, l1, l2


def _wtilde_eigs(edge, s0, t):
    wt = wtilde_matrix(fund_forms(edge, s0, t))
    return np.linalg.eigvals(wt)


def k_sign_flip(edge, s0, t=0.02) -> bool:
    kp = curvature_bundle(edge, s0, t).K
    km = curvature_bundle(edge, s0, -t).K
    return kp * km < 0


def verify_family(edge: Edge, s0, tol=FIT_RESIDUAL_TOL, levels=LEVELS) -> VerificationReport:
    """Fit the leading curvature asymptotics and compare with the family's
    predicted coefficients at s0."""
    fam = edge.spec.family
    p = family_params(edge, s0)
    K, H, l1, l2 = _kh_samplers(edge, s0)
    entries, checks = [], {}
    if fam in (EdgeFamily.E, EdgeFamily.T, EdgeFamily.Ss, EdgeFamily.St):
        eps = {EdgeFamily.E: 1, EdgeFamily.T: 1, EdgeFamily.Ss: 1, EdgeFamily.St: -1}[fam]
        if fam == EdgeFamily.E:
            k_pole, h_pole, l2_lim = p.k2 * p.mu0, p.mu0 / 2, p.k2
        elif fam == EdgeFamily.T:
            k_pole, h_pole, l2_lim = -p.k2 * p.mu0, p.mu0 / 2, -p.k2
        else:
            k_pole, h_pole, l2_lim = -p.k2 * p.mu0, eps * p.mu0 / 2, p.k2
        l1_pole, l1_const = eps * p.mu0, eps * p.mu1
        entries.append(_entry("t*K leading", k_pole, fit_leading(K, 1, levels=levels), tol))
        entries.append(_entry("t*H leading", h_pole, fit_leading(H, 1, levels=levels), tol))
        entries.append(_entry("lambda2 limit", l2_lim,
                              fit_leading(l2, 0, levels=levels), tol))
        entries.append(_entry("lambda1 - pole limit", l1_const,
                              fit_leading(lambda t: l1(t) - l1_pole / t, 0,
                                          levels=levels), tol))
        if fam != EdgeFamily.E and abs(k_pole) > 1e-8:
            checks["K sign flip across t=0"] = k_sign_flip(edge, s0)
    elif fam == EdgeFamily.Sl:
        def big(t):
            ev = _wtilde_eigs(edge, s0, t)
            return float(max(ev, key=abs).real)

        def small(t):
            ev = _wtilde_eigs(edge, s0, t)
            return float(min(ev, key=abs).real)

        entries.append(_entry("wtilde lambda1 / t^2", p.mu0,
                              fit_leading(big, -2, levels=levels), tol))
        entries.append(_entry("wtilde lambda2 / t^4", 2 * p.mu0 * p.delta1,
                              fit_leading(small, -4, levels=levels), tol))
    elif fam == EdgeFamily.LightGeneral:
        s_th = math.sin(p.theta)
        # det(wtilde) = -mu0 S^2 d_C t^5 + O(t^6), so K ~ -mu0 d_C/(S^4 t)
        entries.append(_entry("t*K leading", -p.mu0 * p.d_c / s_th ** 4,
                              fit_leading(K, 1, levels=levels), tol))
        checks["real side iff mu0*d_C*t >= 0"] = all(
            (_disc_over_t4(edge, s0, t) > 0) == (p.mu0 * p.d_c * t > 0)
            for t in (0.02, -0.02))
        if abs(p.phi2) < 1e-12:
            h_lim = abs(p.k1 - 2 * p.theta_prime) / (2 * s_th ** 2)
            entries.append(_entry("|H| limit", h_lim,
                                  fit_leading(lambda t: abs(H(t)), 0,
                                              levels=levels), tol))
        checks["H bounded"] = classify_boundedness(H) == Boundedness.Bounded
    elif fam == EdgeFamily.OrderFour:
        den = p.mu0 ** 2 + p.sigma * p.k1
        entries.append(_entry("t^4*K leading", p.sigma * p.k1 / den,
                              fit_leading(K, 4, levels=levels - 1), tol))
        h_coeff = abs(-3 * p.k1 * p.mu1 + 8 * p.mu0 * p.mu0_prime
                      + 3 * p.sigma * p.k1_prime) / (12 * abs(den) ** 1.5)
        entries.append(_entry("t*|H| leading", h_coeff,
                              fit_leading(lambda t: abs(H(t)), 1,
                                          levels=levels - 1), tol))
    else:
        raise ValueError(f"no prediction table for family {fam.name}")
    return VerificationReport(fam.name, float(s0), entries, checks)


# -- theorem-level checks --------------------------------------------------------

@dataclass
class DichotomyReport:
    condition_holds: bool
    predicted_pole_coeff: float
    fitted_pole_coeff: float
    decision: Boundedness
    consistent: bool


def check_theorem_G_bounded(edge: Edge, s0, tol=FIT_RESIDUAL_TOL) -> DichotomyReport:
    """Mean-curvature boundedness dichotomy for order-four edges:
    bounded iff 3 k mu1 = 8 mu0 mu0' + 3 sigma k'."""
    p = family_params(edge, s0)
    gap = -3 * p.k1 * p.mu1 + 8 * p.mu0 * p.mu0_prime + 3 * p.sigma * p.k1_prime
    scale = max(1.0, abs(p.k1 * p.mu1), abs(p.mu0 * p.mu0_prime), abs(p.k1_prime))
    holds = abs(gap) <= 1e-9 * scale
    den = p.mu0 ** 2 + p.sigma * p.k1
    pred = abs(gap) / (12 * abs(den) ** 1.5)
    _, H, _, _ = _kh_samplers(edge, s0)
    fit = fit_leading(lambda t: abs(H(t)), 1, levels=LEVELS - 1)
    decision = classify_boundedness(H, levels=LEVELS - 1)
    consistent = (decision == Boundedness.Bounded) == holds and \
        abs(fit.value - pred) <= tol * max(1.0, abs(pred))
    return DichotomyReport(holds, pred, fit.value, decision, consistent)


@dataclass
class OrderFourReport:
    order: float
    concave: bool
    kappa_matches_mu0sq: bool
    consistent: bool


def check_prop_F(edge: Edge, s0, tol=1e-9) -> OrderFourReport:
    """Order > 4 iff concave type and |kappa| = mu0^2, for order >= 4 edges."""
    p = family_params(edge, s0)
    order = order_at(edge, s0)
    if order != INFINITE and order < 4:
        raise ValueError(f"order {order} < 4: dichotomy does not apply")
    concave = convexity_of(edge, s0) == Convexity.Concave
    km = abs(abs(p.k1) - p.mu0 ** 2) <= tol * max(1.0, p.mu0 ** 2)
    deep = order == INFINITE or order > 4
    return OrderFourReport(order, concave, km, deep == (concave and km))


# -- quasi-umbilic discriminant curve ---------------------------------------------

@dataclass
class DiscriminantCurve:
    s: np.ndarray
    psi: np.ndarray
    psi_prime0: float
    psi_second0: float
    fit_residual: float


def _disc_over_t4(edge, s, t):
    # = 4 S^2 mu0 d_C t^5 + O(t^6) near a lightlike point, so /t^4 keeps sign(t)
    wt = wtilde_matrix(fund_forms(edge, s, t))
    tr = wt[0, 0] + wt[1, 1]
    det = wt[0, 0] * wt[1, 1] - wt[0, 1] * wt[1, 0]
    return (tr * tr - 4 * det) / t ** 4


def discriminant_curve(edge: Edge, s_window=0.02, n_s=12, t_max=0.1,
                       t_min=1e-6, bisect_iters=60) -> DiscriminantCurve:
    """Root curve t = psi(s) of the rescaled principal-curvature discriminant
    near a lightlike singular point at s = 0.  psi(0) = 0; the root nearest
    the singular axis is bisected on both sides of s = 0 and the samples are
    fitted by a cubic with zero intercept."""
    ss, psis = [], []
    samples = np.geomspace(s_window / 8.0, s_window, max(2, n_s // 2))
    for s in np.concatenate([-samples, samples]):
        grid = np.concatenate([-np.geomspace(t_max, t_min, 40),
                               np.geomspace(t_min, t_max, 40)])
        vals = np.array([_disc_over_t4(edge, s, t) for t in grid])
        sign_change = np.nonzero(vals[:-1] * vals[1:] < 0)[0]
        if len(sign_change) == 0:
            continue
        # take the bracketing interval closest to t = 0
        i = sign_change[np.argmin(np.abs(grid[sign_change]))]
        a, b, va = grid[i], grid[i + 1], vals[i]
        for _ in range(bisect_iters):
            m = 0.5 * (a + b)
            if m == 0.0:
                # the rescaling is 0/0 exactly at t = 0; step off-center
                m = 0.25 * (a + 3.0 * b)
            vm = _disc_over_t4(edge, s, m)
            if va * vm <= 0:
                b = m
            else:
                a, va = m, vm
        ss.append(float(s))
        psis.append(0.5 * (a + b))
    order_idx = np.argsort(ss)
    ss = np.array(ss)[order_idx]
    psis = np.array(psis)[order_idx]
    # psi(0) = 0 is known exactly; fit psi = c1 s + c2 s^2 + c3 s^3
    A = np.column_stack([ss, ss ** 2, ss ** 3])
    coeffs, res = np.linalg.lstsq(A, psis, rcond=None)[:2]
    resid = float(res[0]) if len(res) else 0.0
    return DiscriminantCurve(ss, psis, float(coeffs[0]), 2 * float(coeffs[1]),
                             resid)
