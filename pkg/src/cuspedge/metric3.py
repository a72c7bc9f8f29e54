"""Inner products, cross products and causal classes in R^3.

Supports the Euclidean metric diag(1,1,1) and the Lorentz-Minkowski metric
diag(1,1,-1).  A vector is spacelike / timelike / lightlike according to the
sign of <v,v>, with a zero band relative to its Euclidean square norm.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

DEFAULT_TOL = 1e-10


def vec3(x, y, z):
    v = np.array([x, y, z], dtype=float)
    if not np.all(np.isfinite(v)):
        raise ValueError(f"vec3 components must be finite, got {v}")
    return v


class CausalClass(enum.Enum):
    Spacelike = "spacelike"
    Timelike = "timelike"
    Lightlike = "lightlike"


@dataclass(frozen=True)
class Metric:
    name: str
    signs: tuple[float, float, float]
    matrix: np.ndarray = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "matrix", np.diag(np.array(self.signs, float)))

    @property
    def is_lorentzian(self):
        return self.signs[2] < 0


EUCLIDEAN = Metric("euclidean", (1.0, 1.0, 1.0))
LORENTZIAN = Metric("lorentzian", (1.0, 1.0, -1.0))

_BY_NAME = {"euclidean": EUCLIDEAN, "lorentzian": LORENTZIAN}


def metric_by_name(name: str) -> Metric:
    try:
        return _BY_NAME[name.lower()]
    except KeyError:
        raise ValueError(f"unknown metric {name!r}") from None


def inner(metric: Metric, a, b):
    """<a,b> = a^T diag(signs) b.  Works on floats and on jet components."""
    s = metric.signs
    return a[0] * b[0] * s[0] + a[1] * b[1] * s[1] + a[2] * b[2] * s[2]


def cross(metric: Metric, a, b):
    """Metric-adapted cross product: <cross(a,b), v> = det(a, b, v)."""
    c0 = a[1] * b[2] - a[2] * b[1]
    c1 = a[2] * b[0] - a[0] * b[2]
    c2 = a[0] * b[1] - a[1] * b[0]
    s = metric.signs
    return type(a)((c0 * s[0], c1 * s[1], c2 * s[2])) if isinstance(a, tuple) \
        else np.array([c0 * s[0], c1 * s[1], c2 * s[2]])


def causal_class(metric: Metric, v, tol: float = DEFAULT_TOL) -> CausalClass:
    if not metric.is_lorentzian:
        raise ValueError("causal class is only defined for the Lorentzian metric")
    q = inner(metric, v, v)
    band = tol * max(1.0, float(np.dot(v, v)))
    if q > band:
        return CausalClass.Spacelike
    if q < -band:
        return CausalClass.Timelike
    return CausalClass.Lightlike
