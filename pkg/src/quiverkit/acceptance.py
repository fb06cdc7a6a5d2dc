"""Acceptance checks, shared by ``quiverkit selftest`` and the test-suite.

Every check returns a :class:`Outcome`; all comparisons are exact.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from .lace import (
    LaceDiagram,
    add_strands,
    all_diagrams,
    all_orbits,
    codim,
    diagram_length,
    enumerate_kms,
    enumerate_minimal,
    is_minimal,
    rank_conditions,
)
from .permkit import all_perms, bruhat_leq, longest
from .polyring import BETA, Poly, chern, divided_difference, is_symmetric, strand, substitute
from .quiver import (
    block,
    component_polynomial,
    distinguished_lambda,
    euler_class,
    k_class,
    kms_conditions_check,
    phi,
    quiver_coefficients,
    reconstruct,
    schubert_product,
    solve_thom_linear,
    stable_component_polynomial,
    verify_thom,
)
from .schubert import grothendieck, schubert, specialize_schubert, stability_check

THOM_DIMS = [(1, 1), (2, 1), (1, 2), (2, 2), (1, 1, 1), (1, 2, 1), (2, 1, 2), (2, 2, 1), (2, 2, 2)]


def dims_up_to(total: int) -> list:
    """Dimension vectors with at least two positive entries summing to at most ``total``."""
    out = []

    def rec(prefix: list, left: int):
        if len(prefix) >= 2:
            out.append(tuple(prefix))
        for e in range(1, left + 1):
            rec(prefix + [e], left - e)

    rec([], total)
    return out


def orbits_of(dims_list) -> list:
    return [r for dims in dims_list for r in all_orbits(dims)]


@dataclass
class Outcome:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    limit: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.detail} ({self.seconds:.2f}s, limit {self.limit:.0f}s)"


def _xs(m):
    return [chern(1, a) for a in range(1, m + 1)]


def _ys(m):
    return [chern(0, b) for b in range(1, m + 1)]


def example_restriction() -> tuple:
    d = LaceDiagram((2, 2, 1), ((1, 1, 1), (2, 2, 1)))
    b = [None] + [Poly.var(strand(k)) for k in range(1, 4)]
    expected = {(0, 1): b[1], (1, 1): b[1], (0, 2): b[2], (1, 2): b[3], (2, 1): b[3]}
    bad = [v for v, img in expected.items() if phi(Poly.var(chern(*v)), d) != img]
    euler_ok = euler_class(d) == (b[3] - b[1]) * (b[3] - b[2])
    return not bad and euler_ok, f"phi mismatches {bad}, euler {'ok' if euler_ok else 'wrong'}"


def thom_conditions() -> tuple:
    failed = [str(r) for r in orbits_of(THOM_DIMS) if not verify_thom(component_polynomial(r), r).passed]
    return not failed, f"{len(orbits_of(THOM_DIMS))} orbits, failures {failed}"


def linear_oracle() -> tuple:
    failed = [str(r) for r in orbits_of(THOM_DIMS) if solve_thom_linear(r) != component_polynomial(r)]
    return not failed, f"{len(orbits_of(THOM_DIMS))} orbits, mismatches {failed}"


def block_symmetry() -> tuple:
    failed = []
    for r in orbits_of(THOM_DIMS):
        q = component_polynomial(r)
        for i, e in enumerate(r.dims):
            for j in range(1, e):
                if not divided_difference(q, chern(i, j), chern(i, j + 1)).is_zero():
                    failed.append((str(r), i, j))
    return not failed, f"nonzero divided differences {failed}"


def stable_formula() -> tuple:
    orbits = orbits_of(dims_up_to(6))
    failed = [str(r) for r in orbits if stable_component_polynomial(r) != component_polynomial(r)]
    return not failed, f"{len(orbits)} orbits, mismatches {failed}"


def coefficient_structure() -> tuple:
    problems = []
    orbits = orbits_of(dims_up_to(6))
    for r in orbits:
        qc = quiver_coefficients(r)
        if any(c < 0 for c in qc.coefficients.values()):
            problems.append(("negative", str(r)))
        if any(sum(sum(p) for p in lam) != qc.codim for lam in qc.coefficients):
            problems.append(("weight", str(r)))
        if qc.coefficients.get(distinguished_lambda(r)) != 1:
            problems.append(("distinguished", str(r)))
    stable = 0
    for dims in [(1, 1), (2, 1), (1, 2), (2, 2)]:
        for r in all_orbits(dims):
            stable += 1
            if quiver_coefficients(r).coefficients != quiver_coefficients(add_strands(r, 1)).coefficients:
                problems.append(("stability", str(r)))
    return not problems, f"{len(orbits)} orbits, {stable} stability pairs, problems {problems}"


def reconstruction() -> tuple:
    orbits = orbits_of(dims_up_to(6))
    failed = [str(r) for r in orbits if reconstruct(quiver_coefficients(r)) != component_polynomial(r)]
    return not failed, f"{len(orbits)} orbits, mismatches {failed}"


def move_connectivity(samples: int = 100, seed: int = 20031111) -> tuple:
    orbits = orbits_of(dims_up_to(6))
    mismatched = []
    by_orbit: dict = {}
    for dims in dims_up_to(6):
        for d in all_diagrams(dims):
            if is_minimal(d):
                by_orbit.setdefault(rank_conditions(d), set()).add(d)
    for r in orbits:
        if enumerate_minimal(r) != by_orbit.get(r, set()):
            mismatched.append(str(r))
    rng = random.Random(seed)
    multi = [r for r in orbits if len(enumerate_minimal(r)) >= 2]
    symmetric_hits = 0
    for _ in range(samples):
        r = rng.choice(multi)
        diagrams = sorted(enumerate_minimal(r))
        coeffs = [rng.randint(-5, 5) for _ in diagrams]
        while len(set(coeffs)) == 1:
            coeffs[rng.randrange(len(coeffs))] += 1
        p = Poly()
        for c, d in zip(coeffs, diagrams):
            p = p + c * schubert_product(d)
        if all(is_symmetric(p, block(i, e)) for i, e in enumerate(r.dims)):
            symmetric_hits += 1
    ok = not mismatched and symmetric_hits == 0
    return ok, (
        f"{len(orbits)} orbits, closure mismatches {mismatched}; "
        f"{samples} unequal combinations over {len(multi)} orbits, symmetric ones {symmetric_hits}"
    )


def k_theory() -> tuple:
    problems = []
    for w in all_perms(3):
        if substitute(grothendieck(w, _xs(3), _ys(3)), {BETA: None}) != schubert(w, _xs(3), _ys(3)):
            problems.append(("beta0", str(w)))
    orbits = orbits_of(dims_up_to(5))
    for r in orbits:
        kc = k_class(r)
        if not all(is_symmetric(kc, block(i, e)) for i, e in enumerate(r.dims)):
            problems.append(("symmetry", str(r)))
        if substitute(kc, {BETA: None}) != component_polynomial(r):
            problems.append(("truncation", str(r)))
        kms = enumerate_kms(r)
        d = codim(r)
        if {x for x in kms if diagram_length(x) == d} != enumerate_minimal(r):
            problems.append(("stratum", str(r)))
        if not kms_conditions_check(kms, r).passed:
            problems.append(("conditions", str(r)))
    return not problems, f"{len(orbits)} orbits, problems {problems}"


def schubert_identities() -> tuple:
    problems = []
    for m in (2, 3, 4):
        top = Poly.const(1)
        for i in range(1, m):
            for j in range(1, m - i + 1):
                top = top * (Poly.var(chern(1, i)) - Poly.var(chern(0, j)))
        if schubert(longest(m), _xs(m), _ys(m)) != top:
            problems.append(("w0", m))
    for w in all_perms(3):
        for k in (1, 2):
            if not stability_check(w, k, 3):
                problems.append(("shift", str(w), k))
    for w in all_perms(4):
        for u in all_perms(4):
            val = specialize_schubert(w, u)
            if not bruhat_leq(w, u) and not val.is_zero():
                problems.append(("vanishing", str(w), str(u)))
        expected = Poly.const(1)
        v = w.padded(4)
        for i in range(4):
            for j in range(i + 1, 4):
                if v[i] > v[j]:
                    expected = expected * (Poly.var(strand(v[i])) - Poly.var(strand(v[j])))
        if specialize_schubert(w, w) != expected:
            problems.append(("diagonal", str(w)))
    return not problems, f"problems {problems}"


CRITERIA: list = [
    ("1 worked (2,2,1) example: restriction and Euler class", example_restriction, 1),
    ("2 restriction equations for the component formula", thom_conditions, 300),
    ("3 component formula equals linear-system solution", linear_oracle, 600),
    ("4 block symmetry of the component formula", block_symmetry, 120),
    ("5 Schubert and Stanley component sums agree", stable_formula, 600),
    ("6 quiver coefficients: sign, weight, distinguished, stability", coefficient_structure, 600),
    ("7 super Schur reconstruction", reconstruction, 300),
    ("8 move connectivity and symmetric combinations", move_connectivity, 600),
    ("9 K-theory sanity", k_theory, 600),
    ("10 Schubert unit identities", schubert_identities, 60),
]


def run_criterion(name: str, check: Callable, limit: float) -> Outcome:
    start = time.perf_counter()
    try:
        passed, detail = check()
    except Exception as exc:  # reported as a failure, not propagated
        passed, detail = False, f"raised {type(exc).__name__}: {exc}"
    seconds = time.perf_counter() - start
    if seconds > limit:
        passed = False
        detail += f"; exceeded the {limit}s budget"
    return Outcome(name, passed, detail, seconds, limit)


def run_all(echo: Callable[[str], None] = lambda s: None) -> list:
    outcomes = []
    for name, check, limit in CRITERIA:
        out = run_criterion(name, check, limit)
        echo(out.line())
        outcomes.append(out)
    return outcomes
