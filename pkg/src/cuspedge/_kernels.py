"""Hot loops behind truncated bivariate jet arithmetic.

Two interchangeable backends: numba-compiled and pure numpy.  Selection is
controlled by the CUSPEDGE_BACKEND environment variable ("numba" or "numpy");
default is numba when it imports, numpy otherwise.
"""
import os

import numpy as np


def mul_numpy(a, b, order):
    """Truncated product of coefficient tables a, b ((n+1)x(n+1) each).

    c[i,j] = sum_{p<=i, q<=j} a[p,q] b[i-p,j-q], entries with i+j > order
    dropped.
    """
    n = order
    out = np.zeros_like(a)
    for i in range(n + 1):
        for j in range(n + 1 - i):
            # full 2-d correlation, restricted to the triangle i+j <= order
            out[i, j] = np.sum(a[: i + 1, : j + 1] * b[i::-1, j::-1])
    return out


def horner_numpy(w, series, order):
    """Evaluate sum_k series[k] * w**k with w a coefficient table, w[0,0]=0."""
    n = order
    out = np.zeros_like(w)
    out[0, 0] = series[-1]
    for k in range(len(series) - 2, -1, -1):
        out = mul_numpy(out, w, n)
        out[0, 0] += series[k]
    return out


def _build_numba():
    from numba import njit

    @njit(cache=True)
    def mul_numba(a, b, order):
        n = order
        out = np.zeros_like(a)
        for i in range(n + 1):
            for j in range(n + 1 - i):
                acc = 0.0
                for p in range(i + 1):
                    for q in range(j + 1):
                        acc += a[p, q] * b[i - p, j - q]
                out[i, j] = acc
        return out

    @njit(cache=True)
    def horner_numba(w, series, order):
        n = order
        out = np.zeros_like(w)
        out[0, 0] = series[len(series) - 1]
        for k in range(len(series) - 2, -1, -1):
            nxt = np.zeros_like(w)
            for i in range(n + 1):
                for j in range(n + 1 - i):
                    acc = 0.0
                    for p in range(i + 1):
                        for q in range(j + 1):
                            acc += out[p, q] * w[i - p, j - q]
                    nxt[i, j] = acc
            nxt[0, 0] += series[k]
            out = nxt
        return out

    return mul_numba, horner_numba


def _select():
    choice = os.environ.get("CUSPEDGE_BACKEND", "").lower()
    if choice not in ("", "numba", "numpy"):
        raise ValueError(f"unknown CUSPEDGE_BACKEND {choice!r}")
    if choice == "numpy":
        return "numpy", mul_numpy, horner_numpy
    try:
        mul, horner = _build_numba()
    except ImportError:
        if choice == "numba":
            raise
        return "numpy", mul_numpy, horner_numpy
    return "numba", mul, horner


BACKEND, mul, horner = _select()
