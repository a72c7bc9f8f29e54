"""Closed-form expressions in two variables (s, t).

Small immutable AST with arithmetic, integer powers and the elementary
functions sin, cos, sinh, cosh, exp, sqrt.  Expressions evaluate on anything
supporting the arithmetic ops (floats, numpy arrays, jets); elementary
functions dispatch to a method of the same name when the operand has one,
else to math.
"""
from __future__ import annotations

import json
import math

_FUNCTIONS = ("sin", "cos", "sinh", "cosh", "exp", "sqrt")
_BINOPS = ("add", "sub", "mul", "div", "pow")


def _apply_fn(name, x):
    if hasattr(x, name):
        return getattr(x, name)()
    return getattr(math, name)(x)


class Expr:
    __slots__ = ("op", "args")

    def __init__(self, op, args=()):
        self.op = op
        self.args = tuple(args)

    # -- construction helpers -------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, Expr):
            return x
        if isinstance(x, (int, float)):
            return Expr("const", (float(x),))
        return NotImplemented

    def __add__(self, o):
        o = Expr._coerce(o)
        return NotImplemented if o is NotImplemented else Expr("add", (self, o))

    def __radd__(self, o):
        return Expr._coerce(o).__add__(self)

    def __sub__(self, o):
        o = Expr._coerce(o)
        return NotImplemented if o is NotImplemented else Expr("sub", (self, o))

    def __rsub__(self, o):
        return Expr._coerce(o).__sub__(self)

    def __mul__(self, o):
        o = Expr._coerce(o)
        return NotImplemented if o is NotImplemented else Expr("mul", (self, o))

    def __rmul__(self, o):
        return Expr._coerce(o).__mul__(self)

    def __truediv__(self, o):
        o = Expr._coerce(o)
        return NotImplemented if o is NotImplemented else Expr("div", (self, o))

    def __rtruediv__(self, o):
        return Expr._coerce(o).__truediv__(self)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        return Expr("pow", (self, k))

    def __neg__(self):
        return Expr("sub", (Expr("const", (0.0,)), self))

    # -- evaluation ------------------------------------------------------
    def __call__(self, s, t):
        op = self.op
        if op == "const":
            return self.args[0]
        if op == "s":
            return s
        if op == "t":
            return t
        if op == "add":
            return self.args[0](s, t) + self.args[1](s, t)
        if op == "sub":
            return self.args[0](s, t) - self.args[1](s, t)
        if op == "mul":
            return self.args[0](s, t) * self.args[1](s, t)
        if op == "div":
            return self.args[0](s, t) / self.args[1](s, t)
        if op == "pow":
            return self.args[0](s, t) ** self.args[1]
        return _apply_fn(op, self.args[0](s, t))

    # -- serialization ----------------------------------------------------
    def to_dict(self):
        if self.op == "const":
            return {"const": self.args[0]}
        if self.op in ("s", "t"):
            return {"var": self.op}
        if self.op == "pow":
            return {"op": "pow", "args": [self.args[0].to_dict(), self.args[1]]}
        return {"op": self.op, "args": [a.to_dict() for a in self.args]}

    @staticmethod
    def from_dict(d):
        if "const" in d:
            return Expr("const", (float(d["const"]),))
        if "var" in d:
            if d["var"] not in ("s", "t"):
                raise ValueError(f"unknown variable {d['var']!r}")
            return Expr(d["var"])
        op = d["op"]
        if op == "pow":
            return Expr("pow", (Expr.from_dict(d["args"][0]), int(d["args"][1])))
        if op not in _BINOPS and op not in _FUNCTIONS:
            raise ValueError(f"unknown op {op!r}")
        return Expr(op, tuple(Expr.from_dict(a) for a in d["args"]))

    def to_json(self):
        return json.dumps(self.to_dict())

    @staticmethod
    def from_json(text):
        return Expr.from_dict(json.loads(text))

    def __repr__(self):
        if self.op == "const":
            return repr(self.args[0])
        if self.op in ("s", "t"):
            return self.op
        return f"{self.op}({', '.join(map(repr, self.args))})"


S = Expr("s")
T = Expr("t")


def const(x):
    return Expr("const", (float(x),))


def sin(x):
    return Expr("sin", (Expr._coerce(x),))


def cos(x):
    return Expr("cos", (Expr._coerce(x),))


def sinh(x):
    return Expr("sinh", (Expr._coerce(x),))


def cosh(x):
    return Expr("cosh", (Expr._coerce(x),))


def exp(x):
    return Expr("exp", (Expr._coerce(x),))


def sqrt(x):
    return Expr("sqrt", (Expr._coerce(x),))
