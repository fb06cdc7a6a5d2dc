"""Thom polynomials of quiver orbits: component formula, restriction
equations, quiver coefficients and the K-theoretic class.

Column ``i`` carries the Chern roots ``x^i_1..x^i_{e_i}``; each product term
uses ``S_{w_i}(x^i; x^{i-1})``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional

from .lace import (
    LaceDiagram,
    RankConditions,
    all_diagrams,
    all_orbits,
    closure_leq,
    codim,
    crossings,
    diagram_length,
    enumerate_kms,
    enumerate_minimal,
    is_minimal,
    leftmost,
)
from .permkit import simple, multiply
from .polyring import (
    BETA,
    Poly,
    Variable,
    chern,
    is_symmetric,
    schur,
    strand,
    substitute,
    super_schur,
)
from .schubert import eg_coefficients, grothendieck, schubert, stanley

log = logging.getLogger(__name__)

__all__ = [
    "block",
    "schubert_product",
    "component_polynomial",
    "stable_component_polynomial",
    "phi",
    "euler_class",
    "ThomReport",
    "verify_thom",
    "solve_thom_linear",
    "QuiverExpansion",
    "quiver_coefficients",
    "reconstruct",
    "distinguished_lambda",
    "k_class",
    "KmsReport",
    "kms_conditions_check",
]


def block(i: int, e: int) -> list[Variable]:
    """Chern roots ``x^i_1..x^i_e`` of column ``i``."""
    return [chern(i, j) for j in range(1, e + 1)]


def schubert_product(d: LaceDiagram) -> Poly:
    dims = d.dims
    out = Poly.const(1)
    for i, w in enumerate(d.perms, start=1):
        out = out * schubert(w, block(i, dims[i]), block(i - 1, dims[i - 1]))
    return out


@lru_cache(maxsize=None)
def component_polynomial(r: RankConditions) -> Poly:
    """``Q_r``: sum over minimal diagrams of products of double Schubert polynomials."""
    r.check()
    total = Poly()
    for d in sorted(enumerate_minimal(r)):
        total = total + schubert_product(d)
    return total


def stable_component_polynomial(r: RankConditions) -> Poly:
    """The same sum with every Schubert factor replaced by a double Stanley function."""
    r.check()
    dims = r.dims
    total = Poly()
    for d in sorted(enumerate_minimal(r)):
        term = Poly.const(1)
        for i, w in enumerate(d.perms, start=1):
            term = term * stanley(w, block(i, dims[i]), block(i - 1, dims[i - 1]))
        total = total + term
    return total


def phi(f: Poly, d: LaceDiagram) -> Poly:
    """Restriction to the stabiliser: ``x^i_j -> b_k`` for the strand ``k`` through dot ``j`` of column ``i``."""
    mapping = {}
    for v in f.variables():
        if v.kind != 0:
            continue
        if v.i > d.n or v.j > d.dims[v.i]:
            raise ValueError(f"{v} is not a dot of a diagram with dims {list(d.dims)}")
        mapping[v] = strand(d.strand_index[(v.i, v.j)])
    return substitute(f, mapping)


def euler_class(d: LaceDiagram) -> Poly:
    """Product of ``b_p - b_q`` over crossings of extended strands, ``b_p`` the steeper one."""
    if not is_minimal(d):
        raise ValueError("the Euler class is defined through a minimal lace diagram")
    out = Poly.const(1)
    for _, hi, lo in crossings(d):
        out = out * (Poly.var(strand(hi)) - Poly.var(strand(lo)))
    return out


def _check_block_symmetric(f: Poly, dims) -> None:
    for i, e in enumerate(dims):
        if not is_symmetric(f, block(i, e)):
            raise ValueError(f"polynomial is not symmetric in the block x^{i}")


@dataclass
class ThomReport:
    orbit: RankConditions
    records: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(rec["status"] == "pass" for rec in self.records)

    def failures(self) -> list:
        return [rec for rec in self.records if rec["status"] != "pass"]

    def to_json(self) -> dict:
        return {
            "orbit": self.orbit.to_json(),
            "status": "pass" if self.passed else "fail",
            "checks": self.records,
        }


def verify_thom(f: Poly, r: RankConditions) -> ThomReport:
    """Check the restriction equations characterising the Thom polynomial of ``r``.

    (i) ``phi_s(f) = 0`` for every orbit ``s`` not in the closure of ``r``;
    (ii) ``phi_r(f)`` equals the Euler class of ``r``.  Each restriction is
    evaluated through every minimal diagram of the orbit and must not depend
    on that choice.
    """
    r.check()
    _check_block_symmetric(f, r.dims)
    report = ThomReport(r)
    for s in all_orbits(r.dims):
        if s == r:
            values = {phi(f, d) for d in enumerate_minimal(r)}
            eulers = {euler_class(d) for d in enumerate_minimal(r)}
            ok = len(values) == 1 and values == eulers
            report.records.append({"orbit": s.to_json(), "condition": "ii", "status": "pass" if ok else "fail"})
        elif not closure_leq(s, r):
            values = {phi(f, d) for d in enumerate_minimal(s)}
            ok = values == {Poly()}
            report.records.append({"orbit": s.to_json(), "condition": "i", "status": "pass" if ok else "fail"})
    return report


def _partitions(total: int, max_rows: int, max_part: Optional[int] = None) -> list:
    if max_part is None:
        max_part = total
    if total == 0:
        return [()]
    if max_rows == 0:
        return []
    out = []
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, max_rows - 1, first):
            out.append((first,) + rest)
    return out


def _schur_basis(dims, degree: int) -> list:
    """Tuples ``(mu_0, ..., mu_n)`` with ``len(mu_i) <= e_i`` and total weight ``degree``."""
    def rec(i: int, left: int):
        if i == len(dims):
            if left == 0:
                yield ()
            return
        for k in range(left + 1):
            for mu in _partitions(k, dims[i]):
                for rest in rec(i + 1, left - k):
                    yield (mu,) + rest
    return list(rec(0, degree))


class _Eliminator:
    """Incremental exact row reduction over the rationals (sparse rows)."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict = {}  # col -> (row dict, rhs)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: dict, rhs) -> None:
        row = {c: Fraction(v) for c, v in row.items() if v}
        rhs = Fraction(rhs)
        for col in [c for c in row if c in self.pivots]:
            coef = row.get(col)
            if not coef:
                continue
            prow, prhs = self.pivots[col]
            for c, v in prow.items():
                nv = row.get(c, 0) - coef * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
            rhs -= coef * prhs
        if not row:
            if rhs:
                raise RuntimeError("restriction equations are inconsistent")
            return
        col = min(row)
        lead = row[col]
        row = {c: v / lead for c, v in row.items()}
        rhs /= lead
        for pc, (prow, prhs) in list(self.pivots.items()):
            coef = prow.get(col)
            if coef:
                for c, v in row.items():
                    nv = prow.get(c, 0) - coef * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
                self.pivots[pc] = (prow, prhs - coef * rhs)
        self.pivots[col] = (row, rhs)

    def solution(self) -> list:
        if self.rank < self.ncols:
            raise RuntimeError(f"restriction equations are singular (rank {self.rank} < {self.ncols})")
        return [self.pivots[c][1] for c in range(self.ncols)]


def solve_thom_linear(r: RankConditions) -> Poly:
    """Solve the restriction equations directly for the Thom polynomial of ``r``.

    The unknown is written in the basis ``prod_i s_{mu_i}(x^i)`` of degree
    ``d(r)`` polynomials symmetric in each block; restricting along one
    minimal diagram per orbit turns (i) and (ii) into linear equations on the
    coordinates, which are solved exactly.  Raises ``RuntimeError`` if the
    system is singular, inconsistent or has a non-integral solution.
    """
    r.check()
    dims = r.dims
    d = codim(r)
    basis = _schur_basis(dims, d)
    log.debug("solve_thom_linear %s: %d unknowns", r, len(basis))
    elim = _Eliminator(len(basis))

    def restricted(diagram: LaceDiagram) -> list:
        cols = [[strand(diagram.strand_index[(i, j)]) for j in range(1, e + 1)] for i, e in enumerate(dims)]
        cache: dict = {}
        out = []
        for mus in basis:
            term = Poly.const(1)
            for i, mu in enumerate(mus):
                key = (i, mu)
                if key not in cache:
                    cache[key] = schur(mu, cols[i]) if mu else Poly.const(1)
                term = term * cache[key]
            out.append(term)
        return out

    def add_equations(images: list, target: Poly) -> None:
        monos = set(target.terms)
        for img in images:
            monos.update(img.terms)
        for m in sorted(monos, key=repr):
            elim.add({c: img.terms.get(m, 0) for c, img in enumerate(images)}, target.terms.get(m, 0))

    lm = leftmost(r)
    add_equations(restricted(lm), euler_class(lm))
    for s in all_orbits(dims):
        if elim.rank == len(basis):
            break
        if not closure_leq(s, r):
            add_equations(restricted(leftmost(s)), Poly())
    coords = elim.solution()
    if any(c.denominator != 1 for c in coords):
        raise RuntimeError("Thom polynomial came out non-integral")
    result = Poly()
    for c, mus in zip(coords, basis):
        if c:
            term = Poly.const(int(c))
            for i, mu in enumerate(mus):
                if mu:
                    term = term * schur(mu, block(i, dims[i]))
            result = result + term
    # equations skipped after full rank still have to hold
    if not verify_thom(result, r).passed:
        raise RuntimeError("restriction equations are inconsistent")
    return result


@dataclass
class QuiverExpansion:
    dims: tuple
    codim: int
    coefficients: dict  # tuple of partitions -> int

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims),
            "codim": self.codim,
            "coeffs": [
                {"lambda": [list(p) for p in lam], "c": c}
                for lam, c in sorted(self.coefficients.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QuiverExpansion":
        coeffs = {tuple(tuple(p) for p in t["lambda"]): int(t["c"]) for t in data["coeffs"]}
        return cls(tuple(data["dims"]), int(data["codim"]), coeffs)


def quiver_coefficients(r: RankConditions) -> QuiverExpansion:
    """``c_lam(r) = sum over minimal diagrams of prod_i a_{lam_i}(w_i)``, where
    ``a(w)`` is the Schur expansion of the Stanley function of ``w``."""
    r.check()
    coeffs: dict = {}
    for d in enumerate_minimal(r):
        factors = [eg_coefficients(w).items() for w in d.perms]
        for combo in product(*factors):
            lam = tuple(p for p, _ in combo)
            c = 1
            for _, a in combo:
                c *= a
            coeffs[lam] = coeffs.get(lam, 0) + c
    coeffs = {lam: c for lam, c in coeffs.items() if c}
    return QuiverExpansion(r.dims, codim(r), coeffs)


def reconstruct(expansion: QuiverExpansion) -> Poly:
    """``sum_lam c_lam prod_i s_{lam_i}(x^i; x^{i-1})`` with super Schur factors."""
    dims = expansion.dims
    total = Poly()
    for lam, c in expansion.coefficients.items():
        term = Poly.const(c)
        for i, part in enumerate(lam, start=1):
            term = term * super_schur(part, block(i, dims[i]), block(i - 1, dims[i - 1]))
        total = total + term
    return total


def distinguished_lambda(r: RankConditions) -> tuple:
    """Partitions ``lam_i`` made of the rectangles ``R_{i-1,j}`` (``j = i..n``) placed
    side by side; ``R_ij`` has ``r_{i+1,j} - r_ij`` rows and ``r_{i,j-1} - r_ij`` columns."""
    r.check()
    out = []
    for i in range(1, r.n + 1):
        rects = []
        for j in range(i, r.n + 1):
            rows = r.r(i, j) - r.r(i - 1, j)
            cols = r.r(i - 1, j - 1) - r.r(i - 1, j)
            rects.append((rows, cols))
        heights = [h for h, w in rects if w > 0]
        if any(a < b for a, b in zip(heights, heights[1:])):
            raise AssertionError(f"rectangles do not form a Young diagram: {rects}")
        top = max([h for h, w in rects if w > 0], default=0)
        lam = tuple(sum(w for h, w in rects if h > row) for row in range(top))
        out.append(tuple(p for p in lam if p))
    return tuple(out)


def k_class(r: RankConditions) -> Poly:
    """K-theoretic class ``sum_w beta^(l(w) - d) prod_i G_{w_i}(x^i; x^{i-1})`` over
    KMS-factorizations.  At ``beta = -1`` the weights are the alternating signs;
    at ``beta = 0`` the class reduces to the component polynomial."""
    r.check()
    d = codim(r)
    dims = r.dims
    beta = Poly.var(BETA)
    total = Poly()
    for diag in sorted(enumerate_kms(r)):
        term = beta ** (diagram_length(diag) - d)
        for i, w in enumerate(diag.perms, start=1):
            term = term * grothendieck(w, block(i, dims[i]), block(i - 1, dims[i - 1]))
        total = total + term
    return total


@dataclass
class KmsReport:
    passed: bool
    problems: list

    def to_json(self) -> dict:
        return {"status": "pass" if self.passed else "fail", "problems": self.problems}


def kms_conditions_check(diagrams: Iterable[LaceDiagram], r: RankConditions) -> KmsReport:
    """Structural test of a candidate KMS set with signs ``(-1)^(length - d(r))``.

    Checks (I) the boundary ascents, (II) ``c_u' = c_u'' = -c_u'''`` at every
    site of every lace diagram ``u`` of the dimension vector, and that every
    minimal diagram of ``r`` occurs with coefficient ``+1``.
    """
    d = codim(r)
    dims = r.dims
    n = r.n
    coeff = {diag: (-1) ** ((diagram_length(diag) - d) % 2) for diag in diagrams}
    problems = []
    for diag in coeff:
        if diag.dims != dims:
            problems.append({"condition": "dims", "diagram": diag.to_json()})
            continue
        w1, wn = diag.perms[0], diag.perms[-1]
        if any(w1.inverse.has_descent(j) for j in range(1, dims[0])) or any(
            wn.has_descent(j) for j in range(1, dims[n])
        ):
            problems.append({"condition": "I", "diagram": diag.to_json()})
    for m in enumerate_minimal(r):
        if coeff.get(m) != 1:
            problems.append({"condition": "minimal", "diagram": m.to_json()})

    def c(perms) -> int:
        from .lace import PermSeq

        seq = PermSeq(dims, tuple(perms))
        return coeff.get(seq.to_diagram(), 0) if seq.is_valid() else 0

    for u in all_diagrams(dims):
        w = u.perms
        for i in range(1, n):
            for j in range(1, dims[i]):
                if w[i - 1].has_descent(j) or w[i].inverse.has_descent(j):
                    continue
                s = simple(j)
                a, b = multiply(w[i - 1], s), multiply(s, w[i])
                c1 = c(w[: i - 1] + (a, w[i]) + w[i + 1:])
                c2 = c(w[: i - 1] + (w[i - 1], b) + w[i + 1:])
                c3 = c(w[: i - 1] + (a, b) + w[i + 1:])
                if not (c1 == c2 == -c3):
                    problems.append({"condition": "II", "diagram": u.to_json(), "site": [i, j]})
    return KmsReport(not problems, problems)
