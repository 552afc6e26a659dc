"""Parametrized subalgebra catalogs: file grammar, loading, closure checks.

Row grammar (one entry per line, UTF-8, `#` starts a comment line):

    <id> = { <combo> (; <combo>)* } [| <param>:<domain> (, <param>:<domain>)*]

where a combo is a signed sum `coef*GEN +- ...` of basis generator names,
coef a numeric literal, a parameter name, or `literal*param`.  Domains are
pm1, real, real_nonzero, pos.  A missing parameter tail infers domains from
the conventional prefixes eps/delta/lambda/a.
"""
from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .generators import GENERATORS, Generator, GeneratorCombo
from .structure import ConditioningError, bracket_samples, expand_in_basis, \
    sample_points

CATALOG_FILES = ("L_dim1.txt", "S_dim1.txt", "S_dim2.txt",
                 "L_dim2_partial.txt")

DOMAINS = ("pm1", "real", "real_nonzero", "pos")

# Fixed deterministic value pools per domain, used for closure spot checks.
DRAW_POOLS = {
    "pm1": (-1.0, 1.0),
    "real": (-0.9, 0.0, 1.1),
    "real_nonzero": (-1.3, 0.7),
    "pos": (0.5, 2.0),
}

# Prefix convention for rows that omit the explicit domain tail.
_PREFIX_DOMAINS = (("eps", "pm1"), ("delta", "real_nonzero"),
                   ("lambda", "pos"), ("a", "real"))

_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class CatalogParseError(ValueError):
    """Malformed catalog row; the message carries the line number."""


def _infer_domain(pname: str) -> str:
    for prefix, dom in _PREFIX_DOMAINS:
        if pname.startswith(prefix):
            return dom
    return "real"


def sample_domain(domain: str, rng: np.random.Generator) -> float:
    """One random admissible value from a parameter domain."""
    if domain == "pm1":
        return float(rng.choice([-1.0, 1.0]))
    if domain == "real":
        return float(rng.uniform(-2.0, 2.0))
    if domain == "real_nonzero":
        return float(rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 2.0))
    if domain == "pos":
        return float(rng.uniform(0.1, 2.0))
    raise ValueError(f"unknown domain {domain!r}")


@dataclass(frozen=True)
class SubalgebraEntry:
    """One catalog row: a parametrized list of generator combinations.

    Each combo is a tuple of terms (literal, param_or_None, generator_name);
    the instantiated coefficient is literal * draw[param].
    """

    ident: str
    combos: tuple[tuple[tuple[float, str | None, str], ...], ...]
    params: tuple[tuple[str, str], ...]

    @property
    def dim(self) -> int:
        return len(self.combos)

    @property
    def param_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.params)

    def instantiate(self, draw: dict[str, float] | None = None) \
            -> list[GeneratorCombo]:
        """Basis of GeneratorCombo for one parameter draw."""
        draw = dict(draw or {})
        missing = [n for n in self.param_names if n not in draw]
        if missing:
            raise ValueError(f"{self.ident}: missing parameter values "
                             f"{missing}")
        combos = []
        for combo in self.combos:
            terms = []
            for lit, pname, gen in combo:
                coef = lit * (draw[pname] if pname is not None else 1.0)
                terms.append((float(coef), gen))
            combos.append(GeneratorCombo(tuple(terms)))
        return combos

    def parameter_draws(self, n_min: int = 3, seed: int = 42) \
            -> list[dict[str, float]]:
        """Deterministic draws: the full product of the per-domain pools,
        topped up with seeded random domain samples to reach n_min."""
        if not self.params:
            return [{}]
        names = self.param_names
        pools = [DRAW_POOLS[dom] for _, dom in self.params]
        draws = [dict(zip(names, vals))
                 for vals in itertools.product(*pools)]
        rng = np.random.default_rng(seed)
        while len(draws) < n_min:
            draws.append({n: sample_domain(dom, rng)
                          for n, dom in self.params})
        return draws


def _parse_term(piece: str, ident: str, lineno: int) \
        -> tuple[float, str | None, str]:
    """One signed product `[lit*][param*]GEN`  ->  (literal, param, gen)."""
    sign = 1.0
    piece = piece.strip()
    while piece and piece[0] in "+-":
        if piece[0] == "-":
            sign = -sign
        piece = piece[1:].strip()
    factors = [f.strip() for f in piece.split("*")]
    if not factors or not factors[-1]:
        raise CatalogParseError(
            f"line {lineno}: empty term in entry {ident!r}")
    gen = factors[-1]
    if gen not in GENERATORS:
        raise CatalogParseError(
            f"line {lineno}: unknown generator symbol {gen!r} in "
            f"entry {ident!r}")
    lit, param = sign, None
    for factor in factors[:-1]:
        if _NUMBER.match(factor):
            lit *= float(factor)
        elif _NAME.match(factor):
            if param is not None:
                raise CatalogParseError(
                    f"line {lineno}: more than one parameter in a single "
                    f"term of entry {ident!r}")
            param = factor
        else:
            raise CatalogParseError(
                f"line {lineno}: bad coefficient factor {factor!r} in "
                f"entry {ident!r}")
    return lit, param, gen


def _parse_row(line: str, lineno: int) -> SubalgebraEntry:
    line = line.replace("·", "*")
    head, sep, tail = line.partition("|")
    m = re.match(r"^\s*(?P<id>[^={}\s]+)\s*=\s*\{(?P<body>[^{}]*)\}\s*$",
                 head)
    if not m:
        raise CatalogParseError(f"line {lineno}: entry does not match "
                                f"'<id> = {{ ... }}'")
    ident = m.group("id")
    combos = []
    for chunk in re.split(r"[;,]", m.group("body")):
        chunk = chunk.strip()
        if not chunk:
            raise CatalogParseError(
                f"line {lineno}: empty combination in entry {ident!r}")
        pieces = re.findall(r"[+-]?(?:[^+-]|(?<=[eE])[+-])+",
                            chunk.replace(" ", ""))
        combos.append(tuple(_parse_term(p, ident, lineno) for p in pieces))

    declared: dict[str, str] = {}
    if sep:
        for item in tail.split(","):
            item = item.strip()
            if not item:
                continue
            pname, colon, dom = item.partition(":")
            pname, dom = pname.strip(), dom.strip()
            if not colon or not _NAME.match(pname) or dom not in DOMAINS:
                raise CatalogParseError(
                    f"line {lineno}: malformed parameter domain {item!r} "
                    f"in entry {ident!r}")
            declared[pname] = dom

    params: dict[str, str] = {}
    for combo in combos:
        for _, pname, _ in combo:
            if pname is not None and pname not in params:
                params[pname] = declared.get(pname) or _infer_domain(pname)
    for pname, dom in declared.items():
        params.setdefault(pname, dom)
    return SubalgebraEntry(ident, tuple(combos), tuple(params.items()))


def load_catalog(path: str | Path) -> list[SubalgebraEntry]:
    """Parse one catalog file into entries with parameter domains attached."""
    entries = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            entries.append(_parse_row(line, lineno))
    return entries


def default_catalog_dir() -> Path:
    """Location of the shipped catalog files.

    PLASTSYM_CATALOG_DIR overrides; otherwise the repository-level
    `catalog/` directory next to the installed source tree.
    """
    env = os.environ.get("PLASTSYM_CATALOG_DIR")
    if env:
        return Path(env)
    here = Path(__file__).resolve()
    for base in here.parents:
        cand = base / "catalog"
        if (cand / CATALOG_FILES[0]).is_file():
            return cand
    raise FileNotFoundError(
        "no catalog directory found; set PLASTSYM_CATALOG_DIR")


def load_all_catalogs(directory: str | Path | None = None) \
        -> dict[str, list[SubalgebraEntry]]:
    base = Path(directory) if directory is not None else default_catalog_dir()
    return {name: load_catalog(base / name) for name in CATALOG_FILES}


def verify_subalgebra_closure(entry: SubalgebraEntry,
                              n_param_draws: int = 3,
                              n_points: int = 40,
                              tol: float = 1e-8,
                              seed: int = 42) -> dict:
    """Spot-check that the entry's span closes under the Lie bracket.

    For each parameter draw the basis is instantiated, every pairwise
    bracket is sampled at quasi-random points and expanded against the
    entry's own basis; PASS iff the least-squares misfit stays below tol
    for every pair and draw.  One-generator entries pass trivially.
    """
    pts = sample_points(n_points, seed=seed)
    report = {"id": entry.ident, "dim": entry.dim, "draws": 0, "pairs": 0,
              "max_residual": 0.0, "failures": [], "status": "PASS"}
    for draw in entry.parameter_draws(n_min=n_param_draws, seed=seed):
        report["draws"] += 1
        basis = [c.as_generator() for c in entry.instantiate(draw)]
        for i, j in itertools.combinations(range(len(basis)), 2):
            report["pairs"] += 1
            samples = bracket_samples(basis[i], basis[j], pts)
            try:
                _, residual = expand_in_basis(samples, basis)
            except ConditioningError as exc:
                report["failures"].append(
                    {"draw": draw, "pair": (i, j), "reason": str(exc)})
                continue
            report["max_residual"] = max(report["max_residual"], residual)
            if not residual < tol:
                report["failures"].append(
                    {"draw": draw, "pair": (i, j), "residual": residual})
    if report["failures"]:
        report["status"] = "FAIL"
    return report


def verify_catalog_file(path: str | Path, n_param_draws: int = 3,
                        n_points: int = 40, tol: float = 1e-8,
                        seed: int = 42) -> dict:
    """Closure report for every entry of one catalog file."""
    entries = load_catalog(path)
    reports = [verify_subalgebra_closure(e, n_param_draws=n_param_draws,
                                         n_points=n_points, tol=tol,
                                         seed=seed)
               for e in entries]
    failed = [r["id"] for r in reports if r["status"] != "PASS"]
    return {"file": str(path), "entries": len(entries),
            "max_residual": max((r["max_residual"] for r in reports),
                                default=0.0),
            "failed": failed,
            "status": "PASS" if not failed else "FAIL",
            "reports": reports}
