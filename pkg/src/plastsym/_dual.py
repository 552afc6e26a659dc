"""Forward-mode dual numbers over a fixed set of seed directions.

A Dual carries a value and the gradient of that value with respect to the
variables it was seeded from.  Arithmetic propagates both exactly, giving
machine-precision derivatives of generator coefficients with no
finite-difference noise.  Entries of the gradient may themselves be Duals,
so nesting two levels yields exact second derivatives (needed for the
numeric Jacobi identity on brackets of derived vector fields).
"""
from __future__ import annotations

import math


class Dual:
    __slots__ = ("val", "grad")

    def __init__(self, val, grad):
        self.val = val
        self.grad = tuple(grad)

    @staticmethod
    def seed(values) -> list["Dual"]:
        """One Dual per entry, each seeded with its own unit direction.

        Values may be plain floats or Duals (for nested differentiation).
        """
        n = len(values)
        return [Dual(values[i], tuple(1.0 if j == i else 0.0 for j in range(n)))
                for i in range(n)]

    def _lift(self, other) -> "Dual":
        if isinstance(other, Dual):
            return other
        return Dual(other, (0.0,) * len(self.grad))

    def __add__(self, other):
        o = self._lift(other)
        return Dual(self.val + o.val,
                    tuple(a + b for a, b in zip(self.grad, o.grad)))

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.val, tuple(-a for a in self.grad))

    def __sub__(self, other):
        o = self._lift(other)
        return Dual(self.val - o.val,
                    tuple(a - b for a, b in zip(self.grad, o.grad)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._lift(other)
        return Dual(self.val * o.val,
                    tuple(self.val * b + o.val * a
                          for a, b in zip(self.grad, o.grad)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        inv = 1.0 / (o.val * o.val) if not isinstance(o.val, Dual) else None
        if inv is not None:
            return Dual(self.val / o.val,
                        tuple((a * o.val - self.val * b) * inv
                              for a, b in zip(self.grad, o.grad)))
        den = o.val * o.val
        return Dual(self.val / o.val,
                    tuple((a * o.val - self.val * b) / den
                          for a, b in zip(self.grad, o.grad)))

    def __rtruediv__(self, other):
        return self._lift(other).__truediv__(self)

    def __repr__(self):
        return f"Dual({self.val!r}, {self.grad!r})"


def sin(z):
    if isinstance(z, Dual):
        c = cos_val(z.val)
        return Dual(sin(z.val), tuple(c * a for a in z.grad))
    return math.sin(z)


def cos(z):
    if isinstance(z, Dual):
        s = sin_val(z.val)
        return Dual(cos(z.val), tuple(-s * a for a in z.grad))
    return math.cos(z)


def sin_val(z):
    return sin(z) if isinstance(z, Dual) else math.sin(z)


def cos_val(z):
    return cos(z) if isinstance(z, Dual) else math.cos(z)


def value(z) -> float:
    while isinstance(z, Dual):
        z = z.val
    return float(z)
