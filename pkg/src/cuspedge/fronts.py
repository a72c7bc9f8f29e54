"""Parallel surfaces f^t = f + t*nu of wave fronts.

The offset family shares the unit normal of the base surface; since
(nu_u, nu_v) = -(f_u, f_v) W, the offset Jacobian is (f_u, f_v)(I - t W)
and f^t degenerates at a point exactly when 1/t is a real principal
curvature there.  Cuspidal edge points of the base become regular points
of f^t for small t != 0 (the unit normal of a front extends smoothly
across the singular set).
"""
from __future__ import annotations

import math

import numpy as np

from .edge import (JetSurface, LightlikePointError, curvature_bundle,
                   fund_forms, fund_form_jets, lightlike_cutoff,
                   wtilde_matrix)
from .jet import DEFAULT_ORDER, Jet2
from .metric3 import inner

UNIT_TOL = 1e-10
REAL_EIG_TOL = 1e-9


def _shift_t(jet, tol=1e-9):
    """Divide a jet by (t - t0), or None if the t0-column is not zero."""
    scale = max(float(np.abs(jet.c).max()), 1e-300)
    if float(np.abs(jet.c[:, 0]).max()) > tol * scale:
        return None
    n = jet.order
    shifted = Jet2(jet.base, n - 1)
    shifted.c[:n, :n] = jet.c[:n, 1:]
    return shifted


def unit_normal_jets(surf: JetSurface, u, v, order=DEFAULT_ORDER):
    """Jets of nu = nu_tilde/|nu_tilde| at a non-lightlike point.

    On the singular set of a front nu_tilde vanishes like t; the smooth
    extension nu_tilde/t is used there instead.
    """
    ff = fund_form_jets(surf, u, v, order + 2)
    nu = ff["nu"]
    q = inner(surf.metric, nu, nu)
    cut = lightlike_cutoff(fund_forms(surf, u, v))
    if abs(q.value()) <= cut:
        shifted = tuple(_shift_t(c) for c in nu)
        if any(c is None for c in shifted):
            raise LightlikePointError(f"lightlike point at ({u}, {v})")
        nu = shifted
        q = inner(surf.metric, nu, nu)
        if abs(q.value()) <= cut:
            raise LightlikePointError(f"lightlike point at ({u}, {v})")
    root = (q if q.value() > 0 else -q).sqrt()
    return tuple((c / root).truncated(order) for c in nu)


def shape_operator(surf: JetSurface, u, v) -> np.ndarray:
    ff = fund_forms(surf, u, v)
    if abs(ff.delta) <= lightlike_cutoff(ff):
        raise LightlikePointError(f"lightlike point at ({u}, {v})")
    return wtilde_matrix(ff) / (ff.delta * math.sqrt(abs(ff.delta)))


class ParallelFront(JetSurface):
    """Offset surface f + t*nu over the base's (u, v) chart."""

    def __init__(self, base: JetSurface, t: float):
        super().__init__(base.metric)
        self.base = base
        self.t = float(t)

    def _jets(self, u, v, order):
        f = self.base.jets(u, v, order + 1)
        if self.t == 0.0:
            return tuple(j.truncated(order) for j in f)
        nu = unit_normal_jets(self.base, u, v, order)
        return tuple((fj + self.t * nj).truncated(order)
                     for fj, nj in zip(f, nu))

    def jacobian(self, u, v) -> np.ndarray:
        j = self.jets(u, v, 2)
        return np.array([[c.coefficient(1, 0) for c in j],
                         [c.coefficient(0, 1) for c in j]]).T

    def jacobian_rank(self, u, v, tol=1e-8) -> int:
        jac = self.jacobian(u, v)
        sv = np.linalg.svd(jac, compute_uv=False)
        return int(np.sum(sv > tol * max(1.0, sv[0])))


def parallel_surface(base: JetSurface, t: float) -> ParallelFront:
    return ParallelFront(base, t)


def parallel_singular_values(base: JetSurface, u, v) -> tuple:
    """Offsets t at which (u, v) is a singular point of f^t: t = 1/lambda
    for each nonzero real principal curvature, repeated with multiplicity."""
    cb = curvature_bundle(base, u, v)
    out = []
    for lam in (cb.lambda1, cb.lambda2):
        scale = max(1.0, abs(lam))
        if abs(lam.imag) <= REAL_EIG_TOL * scale and abs(lam.real) > REAL_EIG_TOL:
            out.append(1.0 / lam.real)
    return tuple(sorted(out))


def lorentz_weingarten_residual(base: JetSurface, u, v) -> float:
    """|| (nu_u, nu_v) + (f_u, f_v) W || at a regular non-lightlike point."""
    nu = unit_normal_jets(base, u, v, 2)
    dnu = np.array([[c.coefficient(1, 0) for c in nu],
                    [c.coefficient(0, 1) for c in nu]]).T
    f = base.jets(u, v, 2)
    df = np.array([[c.coefficient(1, 0) for c in f],
                   [c.coefficient(0, 1) for c in f]]).T
    return float(np.linalg.norm(dnu + df @ shape_operator(base, u, v)))
