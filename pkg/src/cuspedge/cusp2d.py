"""Plane cusps c(t) = (A(t), B(t)) built from a mu profile.

c' = t (cos lambda, sin lambda) in the Euclidean plane, or
c' = t (cosh lambda, sinh lambda) in the Lorentz plane (space-like branch),
with lambda = int_0^t mu.  t = 0 is an ordinary cusp exactly when
mu(0) != 0, and 2*mu(0) is the cuspidal curvature, recoverable from the
curve alone as the limit of 2*sqrt(2)*kappa(t)*sqrt(|arclen(t)|).
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

from .jet import DEFAULT_ORDER, Jet2, MuSpec, lift

MARCH_STEP = 0.0625
MIN_ORDER = 4
CUSP_TOL = 1e-10


class CuspStyle(enum.Enum):
    EuclideanTrig = "euclidean_trig"
    LorentzHyperbolic = "lorentz_hyperbolic"


class CuspClass(enum.Enum):
    Cusp = "cusp"
    GeneralizedCuspOnly = "generalized_cusp_only"


def adaptive_simpson(fn, a, b, tol):
    """Integral of fn over [a, b] with an error estimate, by adaptive
    Simpson bisection."""
    def simp(x0, x2, f0, f1, f2):
        return (x2 - x0) / 6.0 * (f0 + 4 * f1 + f2)

    def rec(x0, x2, f0, f1, f2, whole, tol, depth):
        xm = 0.5 * (x0 + x2)
        xl, xr = 0.5 * (x0 + xm), 0.5 * (xm + x2)
        fl, fr = fn(xl), fn(xr)
        left = simp(x0, xm, f0, fl, f1)
        right = simp(xm, x2, f1, fr, f2)
        if depth <= 0 or abs(left + right - whole) <= 15 * tol:
            return left + right + (left + right - whole) / 15.0
        return (rec(x0, xm, f0, fl, f1, left, tol / 2, depth - 1)
                + rec(xm, x2, f1, fr, f2, right, tol / 2, depth - 1))

    if a == b:
        return 0.0, 0.0
    fa, fm, fb = fn(a), fn(0.5 * (a + b)), fn(b)
    whole = simp(a, b, fa, fm, fb)
    return rec(a, b, fa, fm, fb, whole, tol, 30), tol


@dataclass
class PlaneCusp:
    style: CuspStyle
    mu: MuSpec
    order: int = DEFAULT_ORDER
    _cache: dict = field(default_factory=dict, repr=False)

    def jet(self, t, order=None):
        """t-jets of (A, B) at t, Taylor-marched out from the cusp point."""
        n = self.order if order is None else order
        key = (round(float(t), 12), n)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        hyp = self.style is CuspStyle.LorentzHyperbolic
        mu_expr = self.mu.as_expr()
        nsteps = max(1, math.ceil(abs(t) / MARCH_STEP))
        h = t / nsteps
        lam_c = a_c = b_c = 0.0
        for k in range(nsteps + 1):
            base = (0.0, k * h)
            mu = lift(mu_expr, base, n)
            lam = mu.antiderivative_t(lam_c).truncated(n)
            u = Jet2.variable_t(base, n)
            A = ((lam.cosh() if hyp else lam.cos()) * u).antiderivative_t(a_c)
            B = ((lam.sinh() if hyp else lam.sin()) * u).antiderivative_t(b_c)
            A, B = A.truncated(n), B.truncated(n)
            if k == nsteps:
                break
            lam_c = lam.eval_partial_t(h)
            a_c = A.eval_partial_t(h)
            b_c = B.eval_partial_t(h)
        if len(self._cache) > 1024:
            self._cache.clear()
        self._cache[key] = (A, B)
        return A, B

    def point(self, t):
        A, B = self.jet(t)
        return A.value(), B.value()

    def velocity(self, t):
        A, B = self.jet(t)
        return A.coefficient(0, 1), B.coefficient(0, 1)

    def _speed2(self, t):
        ap, bp = self.velocity(t)
        if self.style is CuspStyle.LorentzHyperbolic:
            return ap * ap - bp * bp
        return ap * ap + bp * bp

    def curvature(self, t):
        """Signed plane curvature of the section at t != 0."""
        A, B = self.jet(t)
        ap, bp = A.coefficient(0, 1), B.coefficient(0, 1)
        app, bpp = 2 * A.coefficient(0, 2), 2 * B.coefficient(0, 2)
        q = abs(self._speed2(t))
        return (ap * bpp - bp * app) / q ** 1.5

    def arc_length(self, t, tol=1e-10):
        val, _ = adaptive_simpson(
            lambda u: math.sqrt(abs(self._speed2(u))), 0.0, t, tol)
        return val

    def coefficients(self, count=5):
        """(alpha_k, beta_k) for k = 0..count, the k!-scaled jet of (A, B)
        at the cusp point."""
        A, B = self.jet(0.0, max(self.order, count))
        alpha = tuple(math.factorial(k) * A.coefficient(0, k) for k in range(count + 1))
        beta = tuple(math.factorial(k) * B.coefficient(0, k) for k in range(count + 1))
        return alpha, beta

    @property
    def mu0(self):
        return lift(self.mu.as_expr(), (0.0, 0.0), 1).value()


def build_cusp(style, mu: MuSpec, order: int = DEFAULT_ORDER) -> PlaneCusp:
    if not isinstance(mu, MuSpec):
        raise TypeError("mu must be a MuSpec")
    if isinstance(style, str):
        style = CuspStyle(style)
    if order < MIN_ORDER:
        raise ValueError(f"order must be >= {MIN_ORDER}")
    return PlaneCusp(style, mu, order)


def cuspidal_curvature_limit(cusp: PlaneCusp, metric=None) -> float:
    """Limit of 2*sqrt(2)*kappa(t)*sqrt(|s(t)|) as t -> 0+, by Richardson
    extrapolation on a dyadic ladder; equals twice mu(0)."""
    from .asympt import richardson_limit

    want = ("lorentzian" if cusp.style is CuspStyle.LorentzHyperbolic
            else "euclidean")
    if metric is not None:
        name = metric if isinstance(metric, str) else metric.name
        if name != want:
            raise ValueError(f"{cusp.style.name} cusp lives in the {want} plane")
    ts = [0.1 * 2.0 ** -k for k in range(7)]
    vals = [2 * math.sqrt(2) * cusp.curvature(t) * math.sqrt(abs(cusp.arc_length(t)))
            for t in ts]
    limit, _ = richardson_limit(vals)
    if abs(cusp.mu0) <= CUSP_TOL:
        warnings.warn("not a cusp (mu(0) = 0); cuspidal curvature limit is 0",
                      stacklevel=2)
    return limit


def classify_cusp(cusp: PlaneCusp, tol=CUSP_TOL) -> CuspClass:
    return CuspClass.Cusp if abs(cusp.mu0) > tol else CuspClass.GeneralizedCuspOnly
