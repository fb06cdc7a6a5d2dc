"""Sparse polynomials with integer coefficients in named variables.

Three families of variables occur: Chern roots ``x^i_j`` (:func:`chern`),
strand variables ``b_k`` (:func:`strand`) and the K-theory parameter
``beta``.  Variables are globally ordered chern-first, then strands, then
beta; that order fixes the graded-lexicographic term order used for output.

>>> x, y = Poly.var(chern(1, 1)), Poly.var(chern(0, 1))
>>> divided_difference(x * x, chern(1, 1), chern(0, 1))
Poly('x.0.1 + x.1.1')
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence, Union

__all__ = [
    "Variable",
    "chern",
    "strand",
    "BETA",
    "Poly",
    "Partition",
    "as_partition",
    "divided_difference",
    "isobaric_difference",
    "substitute",
    "is_symmetric",
    "complete_homogeneous",
    "elementary",
    "schur",
    "super_schur",
    "schur_expand",
    "determinant",
]

CHERN, STRAND, BETA_KIND = 0, 1, 2


class Variable(NamedTuple):
    kind: int
    i: int
    j: int = 0

    @property
    def name(self) -> str:
        if self.kind == CHERN:
            return f"x.{self.i}.{self.j}"
        if self.kind == STRAND:
            return f"b.{self.i}"
        return "beta"

    def __str__(self) -> str:
        return self.name

    @classmethod
    def parse(cls, name: str) -> "Variable":
        parts = name.split(".")
        try:
            if parts[0] == "x" and len(parts) == 3:
                return chern(int(parts[1]), int(parts[2]))
            if parts[0] == "b" and len(parts) == 2:
                return strand(int(parts[1]))
        except ValueError:
            pass
        if name == "beta":
            return BETA
        raise ValueError(f"unknown variable name {name!r}")


def chern(i: int, j: int) -> Variable:
    """The Chern root ``x^i_j`` (column ``i >= 0``, dot ``j >= 1``)."""
    if i < 0 or j < 1:
        raise ValueError(f"bad chern indices ({i}, {j})")
    return Variable(CHERN, i, j)


def strand(k: int) -> Variable:
    if k < 1:
        raise ValueError(f"bad strand index {k}")
    return Variable(STRAND, k)


BETA = Variable(BETA_KIND, 0)

# a monomial is a sorted tuple of (variable, exponent) with exponent > 0
Monomial = tuple
Partition = tuple  # weakly decreasing tuple of positive ints


def as_partition(parts: Iterable[int]) -> Partition:
    lam = tuple(int(p) for p in parts)
    if any(p <= 0 for p in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"not a partition: {lam}")
    return lam


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_from_dict(exps: Mapping[Variable, int]) -> Monomial:
    return tuple(sorted((v, e) for v, e in exps.items() if e))


def _order_key(mono: Monomial):
    # graded lex: higher degree first, then larger exponent on earlier variable
    return (-sum(e for _, e in mono), [(v, -e) for v, e in mono])


Scalar = Union[int, "Poly"]


class Poly:
    """An immutable sparse polynomial; ``terms`` maps monomials to ints."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None):
        self.terms: dict = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c: int) -> "Poly":
        return cls({(): c})

    @classmethod
    def var(cls, v: Variable) -> "Poly":
        return cls({((v, 1),): 1})

    @classmethod
    def monomial(cls, exps: Mapping[Variable, int], coeff: int = 1) -> "Poly":
        return cls({_mono_from_dict(exps): coeff})

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            return Poly.const(other)
        if isinstance(other, Variable):
            return Poly.var(other)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) == 1 and () in other.terms:
            c = other.terms[()]
            return Poly({m: c * v for m, v in self.terms.items()})
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e for _, e in m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e for _, e in m) for m in self.terms}) <= 1

    def coefficient(self, exps: Mapping[Variable, int]) -> int:
        return self.terms.get(_mono_from_dict(exps), 0)

    def degree_in(self, v: Variable) -> int:
        return max((e for m in self.terms for w, e in m if w == v), default=0)

    def collect(self, v: Variable) -> dict:
        """Split as ``sum_k coeff_k * v**k``; returns ``{k: coeff_k}``."""
        parts: dict = {}
        for m, c in self.terms.items():
            k = 0
            rest = []
            for w, e in m:
                if w == v:
                    k = e
                else:
                    rest.append((w, e))
            parts.setdefault(k, {})[tuple(rest)] = c
        return {k: Poly(t) for k, t in parts.items()}

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: _order_key(t[0]))

    def homogeneous_part(self, deg: int, graded_by: Optional[Iterable[Variable]] = None) -> "Poly":
        """Terms of degree ``deg``; degree counted only in ``graded_by`` if given."""
        sel = None if graded_by is None else set(graded_by)
        def d(m):
            return sum(e for v, e in m if sel is None or v in sel)
        return Poly({m: c for m, c in self.terms.items() if d(m) == deg})

    # serialization
    def to_json(self) -> list:
        return [
            {"coeff": c, "monomial": {v.name: e for v, e in m}}
            for m, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data) -> "Poly":
        out = Poly()
        for term in data:
            exps = {Variable.parse(k): int(e) for k, e in term["monomial"].items()}
            out = out + Poly.monomial(exps, int(term["coeff"]))
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            mono = "*".join(v.name if e == 1 else f"{v.name}^{e}" for v, e in m)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


def _as_var(v) -> Variable:
    if isinstance(v, Variable):
        return v
    raise TypeError(f"expected a Variable, got {v!r}")


def swap(f: Poly, a: Variable, b: Variable) -> Poly:
    """Exchange the variables ``a`` and ``b`` in ``f``."""
    return substitute(f, {a: b, b: a})


def divided_difference(f: Poly, a: Variable, b: Variable) -> Poly:
    """``(f - f|_{a<->b}) / (a - b)``, computed exactly term by term."""
    a, b = _as_var(a), _as_var(b)
    if a == b:
        raise ValueError("divided difference needs two distinct variables")
    out: dict = {}
    for m, c in f.terms.items():
        p = q = 0
        rest = []
        for v, e in m:
            if v == a:
                p = e
            elif v == b:
                q = e
            else:
                rest.append((v, e))
        if p == q:
            continue
        # (a^p b^q - a^q b^p)/(a - b) = sign * (ab)^lo * sum_t a^t b^(d-1-t)
        sign = 1 if p > q else -1
        lo, d = min(p, q), abs(p - q)
        rest_t = tuple(rest)
        for t in range(d):
            exps = {a: lo + t, b: lo + d - 1 - t}
            mono = _mono_mul(rest_t, _mono_from_dict(exps))
            out[mono] = out.get(mono, 0) + sign * c
    return Poly(out)


def isobaric_difference(f: Poly, a: Variable, b: Variable) -> Poly:
    """The beta-deformed operator ``f -> d_{a,b}((1 + beta*b) f)``."""
    return divided_difference(f * (1 + Poly.var(BETA) * Poly.var(b)), a, b)


def substitute(f: Poly, mapping: Mapping[Variable, Optional[Variable]]) -> Poly:
    """Simultaneously replace variables; a target of ``0``/``None`` kills the variable."""
    if not mapping:
        return f
    out: dict = {}
    for m, c in f.terms.items():
        exps: dict = {}
        dead = False
        for v, e in m:
            if v in mapping:
                t = mapping[v]
                if t is None or (isinstance(t, int) and t == 0):
                    dead = True
                    break
                v = _as_var(t)
            exps[v] = exps.get(v, 0) + e
        if dead:
            continue
        mono = _mono_from_dict(exps)
        out[mono] = out.get(mono, 0) + c
    return Poly(out)


def is_symmetric(f: Poly, variables: Sequence[Variable]) -> bool:
    """Invariance under permutations of ``variables`` (adjacent swaps suffice)."""
    if len(set(variables)) != len(variables):
        raise ValueError("variables must be pairwise distinct")
    return all(
        divided_difference(f, variables[t], variables[t + 1]).is_zero()
        for t in range(len(variables) - 1)
    )


def complete_homogeneous(k: int, variables: Sequence[Variable]) -> Poly:
    if k < 0:
        return Poly()
    if k == 0:
        return Poly.const(1)
    out: dict = {}
    for combo in combinations_with_replacement(variables, k):
        exps: dict = {}
        for v in combo:
            exps[v] = exps.get(v, 0) + 1
        out[_mono_from_dict(exps)] = 1
    return Poly(out)


def elementary(k: int, variables: Sequence[Variable]) -> Poly:
    from itertools import combinations

    if k < 0 or k > len(variables):
        return Poly()
    if k == 0:
        return Poly.const(1)
    return Poly({_mono_from_dict({v: 1 for v in combo}): 1 for combo in combinations(variables, k)})


def determinant(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Laplace expansion along rows, memoised on the set of remaining columns."""
    n = len(matrix)
    if n == 0:
        return Poly.const(1)
    memo: dict = {}

    def minor(row: int, cols: tuple) -> Poly:
        if row == n:
            return Poly.const(1)
        if cols in memo:
            return memo[cols]
        total = Poly()
        for pos, c in enumerate(cols):
            entry = matrix[row][c]
            if entry.is_zero():
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            term = entry * sub
            total = total + term if pos % 2 == 0 else total - term
        memo[cols] = total
        return total

    return minor(0, tuple(range(n)))


@lru_cache(maxsize=None)
def _super_classes(k: int, xs: tuple, ys: tuple) -> Poly:
    # coefficient of t^k in prod(1 - y t) / prod(1 - x t)
    total = Poly()
    for b in range(0, min(k, len(ys)) + 1):
        e = elementary(b, ys)
        if b % 2:
            e = -e
        total = total + complete_homogeneous(k - b, xs) * e
    return total


@lru_cache(maxsize=None)
def _jacobi_trudi(lam: tuple, xs: tuple, ys: tuple) -> Poly:
    n = len(lam)
    matrix = [
        [_super_classes(lam[t] + u - t, xs, ys) if lam[t] + u - t >= 0 else Poly() for u in range(n)]
        for t in range(n)
    ]
    return determinant(matrix)


def schur(lam: Iterable[int], variables: Sequence[Variable]) -> Poly:
    """Schur polynomial ``s_lam`` via the Jacobi-Trudi determinant in ``h_k``."""
    lam = as_partition(lam)
    if len(lam) > len(variables):
        return Poly()
    return _jacobi_trudi(lam, tuple(variables), ())


def super_schur(lam: Iterable[int], xs: Sequence[Variable], ys: Sequence[Variable]) -> Poly:
    """Factorial/super Schur determinant ``s_lam(xs; ys)``.

    Entries are the coefficients of ``prod(1 - y t)/prod(1 - x t)``; with this
    normalisation the ``len(xs) x len(ys)`` rectangle gives ``prod (x_i - y_j)``.
    """
    return _jacobi_trudi(as_partition(lam), tuple(xs), tuple(ys))


def schur_expand(f: Poly, variables: Sequence[Variable]) -> dict:
    """Coefficients ``{lam: c}`` with ``f = sum c * s_lam(variables)``."""
    variables = tuple(variables)
    index = {v: t for t, v in enumerate(variables)}
    if not f.variables() <= set(variables):
        raise ValueError("polynomial involves variables outside the given block")
    if not is_symmetric(f, variables):
        raise ValueError("polynomial is not symmetric in the given variables")

    def expvec(m):
        vec = [0] * len(variables)
        for v, e in m:
            vec[index[v]] = e
        return tuple(vec)

    out: dict = {}
    rest = f
    while not rest.is_zero():
        mono, c = max(rest.terms.items(), key=lambda t: (sum(expvec(t[0])), expvec(t[0])))
        lam = tuple(p for p in expvec(mono) if p)
        out[lam] = out.get(lam, 0) + c
        rest = rest - c * schur(lam, variables)
    return {lam: c for lam, c in out.items() if c}
