"""Quaternion scalars."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_DIV_FLOOR = 1e-300


@dataclass(frozen=True)
class Quaternion:
    """The quaternion ``a + b i + c j + d k`` with float64 coefficients."""

    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"quaternion coefficient {name}={v} is not finite")
            object.__setattr__(self, name, v)

    @classmethod
    def from_array(cls, arr) -> "Quaternion":
        a, b, c, d = (float(x) for x in np.asarray(arr, dtype=np.float64).reshape(4))
        return cls(a, b, c, d)

    def to_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d])

    def to_list(self) -> list:
        return [self.a, self.b, self.c, self.d]

    @property
    def real(self) -> float:
        return self.a

    def conj(self) -> "Quaternion":
        return qconj(self)

    def __abs__(self) -> float:
        return qmod(self)

    def __neg__(self):
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return qmul(self, o)

    def __rmul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return qmul(o, self)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return qdiv(self, o)

    def isclose(self, other, tol: float = 1e-12) -> bool:
        o = _coerce(other)
        return max(abs(x - y) for x, y in zip(self.to_list(), o.to_list())) <= tol

    def __repr__(self):
        return f"Quaternion({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"


def _coerce(x):
    if isinstance(x, Quaternion):
        return x
    if isinstance(x, (int, float, np.floating, np.integer)):
        return Quaternion(float(x))
    return None


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def qmul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product ``pq``; not commutative."""
    return Quaternion(
        p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
        p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
        p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
        p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a,
    )


def qconj(q: Quaternion) -> Quaternion:
    return Quaternion(q.a, -q.b, -q.c, -q.d)


def qmod(q: Quaternion) -> float:
    return math.sqrt(q.a * q.a + q.b * q.b + q.c * q.c + q.d * q.d)


def qdiv(p: Quaternion, q: Quaternion) -> Quaternion:
    """Right division ``p q^{-1} = p conj(q) / |q|^2``."""
    n = qmod(q)
    if n < _DIV_FLOOR:
        raise ZeroDivisionError("quaternion division by (near) zero")
    pc = qmul(p, qconj(q))
    return Quaternion(pc.a / n / n, pc.b / n / n, pc.c / n / n, pc.d / n / n)
