"""Truncated bivariate Taylor jets.

A Jet2 stores the Taylor coefficients of a function at a base point (s0, t0):
c[i, j] is the coefficient of (s-s0)^i (t-t0)^j, kept for total degree
i + j <= order.  All arithmetic and the elementary functions are exact on
truncated polynomial rings, so derivatives extracted from jets carry no
discretization error.

Elementary functions go through one primitive: for f applied to a jet u with
constant part u0, f(u) = sum_k f^(k)(u0)/k! * (u - u0)^k, truncated.  The
inner products/Horner loops live in _kernels with numba and numpy backends.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .expr import Expr

DEFAULT_ORDER = 10


def _trunc_mask(n):
    i = np.arange(n + 1)
    return (i[:, None] + i[None, :]) <= n


class Jet2:
    __slots__ = ("base", "order", "c")

    def __init__(self, base, order, c=None):
        self.base = (float(base[0]), float(base[1]))
        self.order = int(order)
        if c is None:
            c = np.zeros((order + 1, order + 1))
        self.c = c

    # -- constructors ----------------------------------------------------
    @staticmethod
    def constant(value, base, order):
        j = Jet2(base, order)
        j.c[0, 0] = float(value)
        return j

    @staticmethod
    def variable_s(base, order):
        j = Jet2(base, order)
        j.c[0, 0] = base[0]
        j.c[1, 0] = 1.0
        return j

    @staticmethod
    def variable_t(base, order):
        j = Jet2(base, order)
        j.c[0, 0] = base[1]
        j.c[0, 1] = 1.0
        return j

    # -- plumbing ----------------------------------------------------------
    def _like(self, c):
        return Jet2(self.base, self.order, c)

    def _align(self, other):
        if self.base != other.base:
            raise ValueError(f"jet base mismatch: {self.base} vs {other.base}")
        if self.order == other.order:
            return self, other
        n = min(self.order, other.order)
        return self.truncated(n), other.truncated(n)

    def truncated(self, n):
        if n == self.order:
            return self
        if n > self.order:
            c = np.zeros((n + 1, n + 1))
            c[: self.order + 1, : self.order + 1] = self.c
            return Jet2(self.base, n, c)
        c = self.c[: n + 1, : n + 1].copy()
        c[~_trunc_mask(n)] = 0.0
        return Jet2(self.base, n, c)

    def copy(self):
        return self._like(self.c.copy())

    # -- ring operations ---------------------------------------------------
    def __add__(self, o):
        if isinstance(o, (int, float)):
            c = self.c.copy()
            c[0, 0] += o
            return self._like(c)
        if not isinstance(o, Jet2):
            return NotImplemented
        a, b = self._align(o)
        return a._like(a.c + b.c)

    __radd__ = __add__

    def __sub__(self, o):
        if isinstance(o, (int, float)):
            return self + (-o)
        if not isinstance(o, Jet2):
            return NotImplemented
        a, b = self._align(o)
        return a._like(a.c - b.c)

    def __rsub__(self, o):
        return (-self) + o

    def __neg__(self):
        return self._like(-self.c)

    def __mul__(self, o):
        if isinstance(o, (int, float)):
            return self._like(self.c * o)
        if not isinstance(o, Jet2):
            return NotImplemented
        a, b = self._align(o)
        return a._like(_kernels.mul(a.c, b.c, a.order))

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, (int, float)):
            return self._like(self.c / o)
        if not isinstance(o, Jet2):
            return NotImplemented
        a, b = self._align(o)
        return a * b._reciprocal()

    def __rtruediv__(self, o):
        return self._reciprocal() * o

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("jet powers must be non-negative integers")
        out = Jet2.constant(1.0, self.base, self.order)
        b = self
        while k:
            if k & 1:
                out = out * b
            k >>= 1
            if k:
                b = b * b
        return out

    # -- composition with an analytic function ------------------------------
    def _series(self, coeffs):
        w = self.c.copy()
        w[0, 0] = 0.0
        out = _kernels.horner(w, np.asarray(coeffs, float), self.order)
        return self._like(out)

    def _reciprocal(self):
        u0 = self.c[0, 0]
        if u0 == 0.0:
            raise ZeroDivisionError("division by a jet with zero constant term")
        coeffs = [(-1.0) ** k / u0 ** (k + 1) for k in range(self.order + 1)]
        return self._series(coeffs)

    def sqrt(self):
        u0 = self.c[0, 0]
        if u0 <= 0.0:
            raise ValueError("sqrt of a jet with non-positive constant term")
        coeffs, ck = [], math.sqrt(u0)
        for k in range(self.order + 1):
            coeffs.append(ck)
            ck *= (0.5 - k) / ((k + 1) * u0)
        return self._series(coeffs)

    def exp(self):
        e0 = math.exp(self.c[0, 0])
        return self._series([e0 / math.factorial(k) for k in range(self.order + 1)])

    def sin(self):
        u0 = self.c[0, 0]
        return self._series([math.sin(u0 + k * math.pi / 2) / math.factorial(k)
                             for k in range(self.order + 1)])

    def cos(self):
        u0 = self.c[0, 0]
        return self._series([math.cos(u0 + k * math.pi / 2) / math.factorial(k)
                             for k in range(self.order + 1)])

    def sinh(self):
        s0, c0 = math.sinh(self.c[0, 0]), math.cosh(self.c[0, 0])
        return self._series([(s0 if k % 2 == 0 else c0) / math.factorial(k)
                             for k in range(self.order + 1)])

    def cosh(self):
        s0, c0 = math.sinh(self.c[0, 0]), math.cosh(self.c[0, 0])
        return self._series([(c0 if k % 2 == 0 else s0) / math.factorial(k)
                             for k in range(self.order + 1)])

    # -- calculus ----------------------------------------------------------
    def derivative(self, var):
        """Formal partial derivative; the top total degree is lost."""
        n = self.order
        c = np.zeros((n, n)) if n else np.zeros((1, 1))
        if n == 0:
            return Jet2(self.base, 0, c)
        if var == "s":
            c = self.c[1:, :n] * np.arange(1, n + 1)[:, None]
        elif var == "t":
            c = self.c[:n, 1:] * np.arange(1, n + 1)[None, :]
        else:
            raise ValueError(f"unknown variable {var!r}")
        out = Jet2(self.base, n - 1, c.copy())
        out.c[~_trunc_mask(n - 1)] = 0.0
        return out

    def antiderivative_t(self, constant=0.0):
        """Exact t-antiderivative; `constant` is the value slice at dt = 0.

        `constant` may be a float or a 1-d array of s-coefficients (the jet of
        the integration constant along t = t0).  The result has order + 1.
        """
        n = self.order + 1
        c = np.zeros((n + 1, n + 1))
        c[: n, 1 : n + 1] = self.c / np.arange(1, n + 1)[None, :]
        if np.ndim(constant) == 0:
            c[0, 0] += float(constant)
        else:
            const = np.asarray(constant, float)
            c[: len(const), 0] += const
        c[~_trunc_mask(n)] = 0.0
        return Jet2(self.base, n, c)

    # -- extraction ----------------------------------------------------------
    def coefficient(self, i, k):
        """Taylor coefficient of (s-s0)^i (t-t0)^k."""
        return float(self.c[i, k])

    def t_coefficients(self):
        return self.c[0, :].copy()

    def value(self):
        return float(self.c[0, 0])

    def __call__(self, ds, dt):
        n = self.order
        tp = dt ** np.arange(n + 1)
        sp = ds ** np.arange(n + 1)
        return float(sp @ self.c @ tp)

    def eval_partial_t(self, dt):
        """Collapse the t-slot at offset dt; returns s-coefficients."""
        return self.c @ (dt ** np.arange(self.order + 1))

    def compose(self, p, q):
        """self evaluated at s = s0 + p, t = t0 + q (jets with zero constant)."""
        if abs(p.c[0, 0]) > 1e-14 or abs(q.c[0, 0]) > 1e-14:
            raise ValueError("inner jets of a composition need zero constant term")
        n = min(p.order, q.order)
        rows = []
        for i in range(self.order + 1):
            r = Jet2.constant(self.c[i, self.order], p.base, n)
            for j in range(self.order - 1, -1, -1):
                r = r * q + self.c[i, j]
            rows.append(r)
        out = rows[-1]
        for i in range(self.order - 1, -1, -1):
            out = out * p + rows[i]
        return out

    def __repr__(self):
        return f"Jet2(base={self.base}, order={self.order})"


def lift(expr: Expr, base, order=DEFAULT_ORDER) -> Jet2:
    """Jet of a closed-form expression at `base` = (s0, t0)."""
    out = expr(Jet2.variable_s(base, order), Jet2.variable_t(base, order))
    if isinstance(out, (int, float)):
        out = Jet2.constant(out, base, order)
    return out


def fd_oracle(func, base, multi_index, h=(1e-4, 1e-4)):
    """Central-difference estimate of d^(i+k) f / ds^i dt^k at `base`.

    Independent oracle for jet coefficients: the (i, k) jet coefficient times
    i! k! should match.  Uses the full central stencil in each variable.
    """
    i, k = multi_index
    hs, ht = h
    s0, t0 = base

    def stencil(m):
        return [((-1.0) ** r * math.comb(m, r), m / 2.0 - r) for r in range(m + 1)]

    acc = 0.0
    for ws, ds in stencil(i):
        for wt, dt in stencil(k):
            acc += ws * wt * func(s0 + ds * hs, t0 + dt * ht)
    return acc / (hs ** i * ht ** k)


@dataclass(frozen=True)
class MuSpec:
    """Cusp-profile data: either a closed form mu(s, t), or coefficient
    functions (mu0..mu3)(s) meaning mu = mu0 + mu1 t + mu2 t^2/2 + mu3 t^3/6.
    """
    expr: Expr | None = None
    coeffs: tuple | None = None

    def __post_init__(self):
        if (self.expr is None) == (self.coeffs is None):
            raise ValueError("MuSpec takes exactly one of expr / coeffs")
        if self.coeffs is not None:
            cs = tuple(Expr._coerce(c) for c in self.coeffs)
            if len(cs) > 4:
                raise ValueError("at most four coefficient functions (mu0..mu3)")
            object.__setattr__(self, "coeffs", cs)

    def as_expr(self) -> Expr:
        if self.expr is not None:
            return self.expr
        t = Expr("t")
        out = self.coeffs[0]
        for k, ck in enumerate(self.coeffs[1:], start=1):
            out = out + ck * t ** k * (1.0 / math.factorial(k))
        return out

    def jet(self, base, order=DEFAULT_ORDER) -> Jet2:
        return lift(self.as_expr(), base, order)

    def to_dict(self):
        if self.expr is not None:
            return {"expr": self.expr.to_dict()}
        return {"coeffs": [c.to_dict() for c in self.coeffs]}

    @staticmethod
    def from_dict(d):
        if "expr" in d:
            return MuSpec(expr=Expr.from_dict(d["expr"]))
        return MuSpec(coeffs=tuple(Expr.from_dict(c) for c in d["coeffs"]))
