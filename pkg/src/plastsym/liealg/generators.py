"""The fifteen point-symmetry generators of the plasticity system and the
numeric Lie bracket.

Generators act on the six-dimensional space (x, y, sigma, theta, u, v).
Coefficients are evaluated through forward-mode dual numbers, so brackets
come out as exact directional derivatives rather than finite differences.

The K generator is shipped with a corrected x-coefficient: the source
display carries a sign typo there (see ERRATA.md); the corrected form is
the one that closes the commutation tables and solves the determining
equations.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .._dual import Dual, cos, sin, value

COORD_NAMES = ("x", "y", "sigma", "theta", "u", "v")


@dataclass(frozen=True)
class Point6:
    """A point of the extended space the generators act on."""

    x: float
    y: float
    sigma: float
    theta: float
    u: float
    v: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.sigma, self.theta,
                         self.u, self.v], dtype=float)

    @staticmethod
    def from_array(a) -> "Point6":
        x, y, s, t, u, v = (float(c) for c in a)
        return Point6(x, y, s, t, u, v)


class Generator:
    """A vector field with name and six coefficient functions.

    `fn(x, y, sigma, theta, u, v)` returns the six coefficients; it must be
    written in terms of arithmetic and the _dual sin/cos so it evaluates on
    floats and on Duals alike.
    """

    def __init__(self, name: str, fn):
        self.name = name
        self._fn = fn

    def coefficients(self, p: Point6) -> np.ndarray:
        return np.array([value(c) for c in self._fn(*p.as_array())])

    def coefficients_and_jacobian(self, coords):
        """Coefficients and their 6x6 Jacobian at `coords` (list of six
        scalars, possibly Duals for nested differentiation)."""
        seeds = Dual.seed(list(coords))
        out = self._fn(*seeds)
        vals = []
        jac = []
        for c in out:
            if isinstance(c, Dual) and len(c.grad) == 6:
                vals.append(c.val)
                jac.append(list(c.grad))
            else:
                vals.append(c)
                jac.append([0.0] * 6)
        return vals, jac

    def __repr__(self):
        return f"Generator({self.name})"


def _p1(x, y, s, t, u, v):
    return (1.0, 0.0, 0.0, 0.0, 0.0, 0.0)


def _p2(x, y, s, t, u, v):
    return (0.0, 1.0, 0.0, 0.0, 0.0, 0.0)


def _p3(x, y, s, t, u, v):
    return (0.0, 0.0, 0.0, 0.0, 1.0, 0.0)


def _p4(x, y, s, t, u, v):
    return (0.0, 0.0, 0.0, 0.0, 0.0, 1.0)


def _p5(x, y, s, t, u, v):
    return (0.0, 0.0, 1.0, 0.0, 0.0, 0.0)


def _d1(x, y, s, t, u, v):
    return (x, y, 0.0, 0.0, u, v)


def _d2(x, y, s, t, u, v):
    return (x, y, 0.0, 0.0, -u, -v)


def _rot(x, y, s, t, u, v):
    return (-y, x, 0.0, 1.0, -v, u)


def _b1(x, y, s, t, u, v):
    return (-v, u, 0.0, 0.0, 0.0, 0.0)


def _b2(x, y, s, t, u, v):
    return (0.0, 0.0, 0.0, 0.0, y, -x)


def _b3(x, y, s, t, u, v):
    return (s + sin(2 * t) * 0.5, cos(2 * t) * (-0.5), 0.0, 0.0, 0.0, 0.0)


def _b4(x, y, s, t, u, v):
    return (cos(2 * t) * (-0.5), s - sin(2 * t) * 0.5, 0.0, 0.0, 0.0, 0.0)


def _b5(x, y, s, t, u, v):
    return (0.0, 0.0, 0.0, 0.0, s - sin(2 * t) * 0.5, cos(2 * t) * 0.5)


def _b6(x, y, s, t, u, v):
    return (0.0, 0.0, 0.0, 0.0, cos(2 * t) * 0.5, s + sin(2 * t) * 0.5)


def _k(x, y, s, t, u, v):
    c2 = cos(2 * t)
    s2 = sin(2 * t)
    return (x * c2 * (-0.5) - y * (s + s2 * 0.5),
            (s - s2 * 0.5) * x + y * c2 * 0.5,
            t,
            s,
            u * c2 * 0.5 + v * (s2 * 0.5 - s),
            (s + s2 * 0.5) * u - v * c2 * 0.5)


GENERATORS: dict[str, Generator] = {
    "P1": Generator("P1", _p1),
    "P2": Generator("P2", _p2),
    "P3": Generator("P3", _p3),
    "P4": Generator("P4", _p4),
    "P5": Generator("P5", _p5),
    "D1": Generator("D1", _d1),
    "D2": Generator("D2", _d2),
    "L": Generator("L", _rot),
    "B1": Generator("B1", _b1),
    "B2": Generator("B2", _b2),
    "B3": Generator("B3", _b3),
    "B4": Generator("B4", _b4),
    "B5": Generator("B5", _b5),
    "B6": Generator("B6", _b6),
    "K": Generator("K", _k),
}

L_BASIS = ("P1", "P2", "P3", "P4", "P5", "D1", "D2", "L",
           "B1", "B2", "B3", "B4", "B5", "B6")
S_BASIS = ("B1", "D2", "B2", "K", "L", "P5", "D1")


@dataclass(frozen=True)
class GeneratorCombo:
    """A constant-coefficient combination of named generators."""

    terms: tuple[tuple[float, str], ...]

    def __post_init__(self):
        if not any(c != 0.0 for c, _ in self.terms):
            raise ValueError("combo has no nonzero term")

    def as_generator(self) -> Generator:
        terms = self.terms

        def fn(*coords):
            acc = [0.0] * 6
            for coef, name in terms:
                cs = GENERATORS[name]._fn(*coords)
                acc = [a + coef * c for a, c in zip(acc, cs)]
            return tuple(acc)

        label = "+".join(f"{c:g}*{n}" for c, n in terms)
        return Generator(label, fn)

    def coefficient_vector(self, basis=None) -> np.ndarray:
        basis = basis or list(GENERATORS)
        vec = np.zeros(len(basis))
        for coef, name in self.terms:
            vec[basis.index(name)] += coef
        return vec


def eval_generator(g: Generator, p: Point6) -> np.ndarray:
    """Coefficient 6-vector of g at p."""
    return g.coefficients(p)


def lie_bracket(g1: Generator, g2: Generator, p) -> np.ndarray:
    """[g1, g2] = (g1 . grad) g2 - (g2 . grad) g1 at p."""
    coords = list(p.as_array()) if isinstance(p, Point6) else list(p)
    v1, j1 = g1.coefficients_and_jacobian(coords)
    v2, j2 = g2.coefficients_and_jacobian(coords)
    out = []
    for i in range(6):
        acc = 0.0
        for j in range(6):
            acc = acc + v1[j] * j2[i][j] - v2[j] * j1[i][j]
        out.append(acc)
    if any(isinstance(c, Dual) for c in out):
        return out
    return np.array([value(c) for c in out])


def bracket_field(g1: Generator, g2: Generator) -> Generator:
    """The bracket as a Generator itself (coefficients evaluable on Duals),
    enabling nested brackets such as the Jacobi identity check."""

    def fn(*coords):
        return tuple(lie_bracket(g1, g2, list(coords))
                     if isinstance(coords[0], Dual)
                     else lie_bracket(g1, g2, np.array(coords, dtype=float)))

    return Generator(f"[{g1.name},{g2.name}]", fn)
