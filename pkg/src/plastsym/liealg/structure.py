"""Commutation tables of the full symmetry algebra and of its distinguished
seven-dimensional subalgebra, plus the machinery to verify them numerically
and to check abstract Lie-algebra consistency in exact integer arithmetic.

Unlisted pairs in a table are zero brackets.  The large table covers the
fourteen generators excluding K; the small one covers the basis in which
the sl(2) block (B1, D2, B2) and the hyperbolic pair (K acting on L, P5)
are visible, with D1 central.

Entry corrections relative to the printed source are documented in
ERRATA.md (one cell of the large table; the K column of the small one
depends on the corrected K generator).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.stats import qmc

from .generators import GENERATORS, Generator, GeneratorCombo, Point6, lie_bracket


class ConditioningError(ValueError):
    """Least-squares design matrix is rank deficient; resample points."""


@dataclass(frozen=True)
class StructureTable:
    """Bracket table [basis_i, basis_j] = sum of signed integer multiples."""

    basis: tuple[str, ...]
    entries: dict

    def __post_init__(self):
        for (a, b), combo in self.entries.items():
            assert a in self.basis and b in self.basis
            rev = self.entries.get((b, a), {})
            anti = {k: -v for k, v in combo.items() if v != 0}
            assert {k: v for k, v in rev.items() if v != 0} == anti, \
                f"antisymmetry violated at ({a}, {b})"

    def bracket(self, a: str, b: str) -> dict:
        return {k: v for k, v in self.entries.get((a, b), {}).items() if v != 0}

    def coefficient_vector(self, a: str, b: str) -> np.ndarray:
        vec = np.zeros(len(self.basis))
        for name, c in self.bracket(a, b).items():
            vec[self.basis.index(name)] = c
        return vec


def _close(upper: dict) -> dict:
    """Fill a table from its nonzero upper entries by antisymmetry."""
    full = {}
    for (a, b), combo in upper.items():
        full[(a, b)] = dict(combo)
        full[(b, a)] = {k: -v for k, v in combo.items()}
    return full


L_TABLE_BASIS = ("B1", "D2", "B2", "D1", "L", "P5",
                 "B3", "B4", "B5", "B6", "P1", "P2", "P3", "P4")

TABLE_L = StructureTable(L_TABLE_BASIS, _close({
    ("B1", "D2"): {"B1": 2}, ("B1", "B2"): {"D2": -1},
    ("B1", "B5"): {"B4": -1}, ("B1", "B6"): {"B3": 1},
    ("B1", "P3"): {"P2": -1}, ("B1", "P4"): {"P1": 1},
    ("D2", "B2"): {"B2": 2}, ("D2", "B3"): {"B3": -1}, ("D2", "B4"): {"B4": -1},
    ("D2", "B5"): {"B5": 1}, ("D2", "B6"): {"B6": 1},
    ("D2", "P1"): {"P1": -1}, ("D2", "P2"): {"P2": -1},
    ("D2", "P3"): {"P3": 1}, ("D2", "P4"): {"P4": 1},
    ("B2", "B3"): {"B6": 1}, ("B2", "B4"): {"B5": -1},
    ("B2", "P1"): {"P4": 1}, ("B2", "P2"): {"P3": -1},
    ("D1", "B3"): {"B3": -1}, ("D1", "B4"): {"B4": -1},
    ("D1", "B5"): {"B5": -1}, ("D1", "B6"): {"B6": -1},
    ("D1", "P1"): {"P1": -1}, ("D1", "P2"): {"P2": -1},
    ("D1", "P3"): {"P3": -1}, ("D1", "P4"): {"P4": -1},
    ("L", "B3"): {"B4": -1}, ("L", "B4"): {"B3": 1},
    ("L", "B5"): {"B6": -1}, ("L", "B6"): {"B5": 1},
    ("L", "P1"): {"P2": -1}, ("L", "P2"): {"P1": 1},
    ("L", "P3"): {"P4": -1}, ("L", "P4"): {"P3": 1},
    ("P5", "B3"): {"P1": 1}, ("P5", "B4"): {"P2": 1},
    ("P5", "B5"): {"P3": 1}, ("P5", "B6"): {"P4": 1},
}))

S_TABLE_BASIS = ("B1", "D2", "B2", "K", "L", "P5", "D1")

TABLE_S = StructureTable(S_TABLE_BASIS, _close({
    ("B1", "D2"): {"B1": 2}, ("B1", "B2"): {"D2": -1},
    ("D2", "B2"): {"B2": 2},
    ("K", "L"): {"P5": -1}, ("K", "P5"): {"L": -1},
}))

# Sign maps of the two discrete reflections acting on generator names.
# R1 is the pushforward of (x, y) -> (-x, -y); R2 of (u, v) -> (-u, -v).
AUTOMORPHISM_SIGNS = {
    "R1": {"B1": -1, "B2": -1, "B3": -1, "B4": -1, "B5": 1, "B6": 1,
           "P1": -1, "P2": -1, "P3": 1, "P4": 1, "P5": 1,
           "D1": 1, "D2": 1, "L": 1, "K": 1},
    "R2": {"B1": -1, "B2": -1, "B3": 1, "B4": 1, "B5": -1, "B6": -1,
           "P1": 1, "P2": 1, "P3": -1, "P4": -1, "P5": 1,
           "D1": 1, "D2": 1, "L": 1, "K": 1},
}

AUTOMORPHISM_POINT_MAPS = {
    "R1": np.diag([-1.0, -1.0, 1.0, 1.0, 1.0, 1.0]),
    "R2": np.diag([1.0, 1.0, 1.0, 1.0, -1.0, -1.0]),
}


def sample_points(n: int, seed: int = 42) -> list[Point6]:
    """Quasi-random points in [-2, 2]^6, excluding the strip |u|+|v| < 0.1
    where B1's coefficients degenerate."""
    sampler = qmc.Halton(d=6, scramble=True, seed=seed)
    pts: list[Point6] = []
    while len(pts) < n:
        for row in qmc.scale(sampler.random(2 * n), -2, 2):
            if abs(row[4]) + abs(row[5]) >= 0.1:
                pts.append(Point6.from_array(row))
                if len(pts) == n:
                    break
    return pts


def expand_in_basis(samples, basis: list[Generator]):
    """Least-squares expansion of sampled 6-vectors over a generator basis.

    samples: list of (Point6, 6-vector).  Returns (coefficients, residual)
    where residual is the max pointwise infinity-norm of the misfit.
    """
    if len(samples) < 2 * len(basis):
        raise ValueError("need at least twice as many samples as basis size")
    rows = []
    rhs = []
    for p, vec in samples:
        cols = np.column_stack([g.coefficients(p) for g in basis])
        rows.append(cols)
        rhs.append(np.asarray(vec, dtype=float))
    a = np.vstack(rows)
    b = np.concatenate(rhs)
    coeffs, _, rank, _ = np.linalg.lstsq(a, b, rcond=None)
    if rank < len(basis):
        raise ConditioningError(
            f"design matrix rank {rank} < {len(basis)}; resample")
    misfit = a @ coeffs - b
    residual = float(np.max(np.abs(misfit.reshape(len(samples), 6)))) \
        if len(samples) else 0.0
    return coeffs, residual


def bracket_samples(g1: Generator, g2: Generator, pts) -> list:
    return [(p, lie_bracket(g1, g2, p)) for p in pts]


def verify_structure_table(table: StructureTable, n_points: int = 50,
                           tol: float = 1e-8, seed: int = 42) -> dict:
    """Check every ordered pair of the table against numeric brackets.

    Returns a report dict; failures are recorded, never raised.
    """
    pts = sample_points(n_points, seed=seed)
    basis_gens = [GENERATORS[n] for n in table.basis]
    failures = []
    worst = 0.0
    for a in table.basis:
        for b in table.basis:
            samples = bracket_samples(GENERATORS[a], GENERATORS[b], pts)
            coeffs, resid = expand_in_basis(samples, basis_gens)
            want = table.coefficient_vector(a, b)
            err = float(np.max(np.abs(coeffs - want)))
            worst = max(worst, err, resid)
            if err > tol or resid > tol:
                failures.append({"pair": (a, b), "coeff_error": err,
                                 "span_residual": resid})
    return {"pairs": len(table.basis) ** 2, "failures": failures,
            "max_error": worst, "tol": tol}


def jacobi_check(table: StructureTable) -> dict:
    """Exact-integer Jacobi identity over all unordered triples."""
    names = table.basis
    failures = []
    n = len(names)
    total = 0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                a, b, c = names[i], names[j], names[k]
                total += 1
                acc: dict = {}
                for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                    for name, coef in table.bracket(y, z).items():
                        for kk, vv in table.bracket(x, name).items():
                            acc[kk] = acc.get(kk, Fraction(0)) \
                                + Fraction(coef) * vv
                if any(v != 0 for v in acc.values()):
                    failures.append({"triple": (a, b, c), "defect": acc})
    return {"triples": total, "failures": failures}


def discrete_automorphism(which: str, combo: GeneratorCombo) -> GeneratorCombo:
    """Apply one of the two reflection sign maps to a combination."""
    signs = AUTOMORPHISM_SIGNS[which]
    return GeneratorCombo(tuple((signs[name] * coef, name)
                                for coef, name in combo.terms))
