"""Double Schubert, beta-Grothendieck and double Stanley polynomials.

Schubert polynomials are obtained by divided differences from the top class
``prod_{i+j<=m} (x_i - y_j)`` of ``S_m``.  Internally everything is computed
in placeholder variables ``x_a = x^1_a`` and ``y_b = x^0_b`` and substituted
into the caller's blocks afterwards.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Optional, Sequence

from .permkit import (
    Permutation,
    last_descent,
    longest,
    multiply,
    shift,
    simple,
)
from .polyring import (
    BETA,
    Poly,
    Variable,
    chern,
    divided_difference,
    isobaric_difference,
    schur_expand,
    substitute,
)

__all__ = [
    "schubert",
    "schubert_ddy",
    "specialize_schubert",
    "stability_check",
    "stanley",
    "eg_coefficients",
    "grothendieck",
    "transition_schubert",
]

VarBlock = Sequence[Variable]


def _x(a: int) -> Variable:
    return chern(1, a)


def _y(b: int) -> Variable:
    return chern(0, b)


def _top_class(m: int) -> Poly:
    out = Poly.const(1)
    for i in range(1, m):
        for j in range(1, m - i + 1):
            out = out * (Poly.var(_x(i)) - Poly.var(_y(j)))
    return out


@lru_cache(maxsize=None)
def _schubert_generic(oneline: tuple) -> Poly:
    w = Permutation(oneline)
    m = w.size
    if w == longest(m):
        return _top_class(m)
    i = next(i for i in range(1, m) if not w.has_descent(i))
    return divided_difference(_schubert_generic(multiply(w, simple(i)).oneline), _x(i), _x(i + 1))


def _check_blocks(w: Permutation, xs: VarBlock, ys: VarBlock) -> None:
    k, l = last_descent(w), last_descent(w.inverse)
    if len(xs) < k or len(ys) < l:
        raise ValueError(
            f"blocks too short for {w}: need {k} x-variables and {l} y-variables, "
            f"got {len(xs)} and {len(ys)}"
        )


def _place(f: Poly, xs: VarBlock, ys: VarBlock) -> Poly:
    mapping: dict = {}
    for v in f.variables():
        if v.kind != 0 or v.i not in (0, 1):
            continue
        block = xs if v.i == 1 else ys
        if v.j > len(block):
            raise AssertionError(f"unexpected variable {v} in a Schubert polynomial")
        mapping[v] = block[v.j - 1]
    return substitute(f, mapping)


def schubert(w: Permutation, xs: VarBlock, ys: VarBlock) -> Poly:
    """The double Schubert polynomial ``S_w(xs; ys)``.

    Only ``x_1..x_k`` and ``y_1..y_l`` occur, ``k`` and ``l`` being the last
    descents of ``w`` and ``w^{-1}``, so the blocks need only be that long.

    >>> from quiverkit.polyring import chern
    >>> schubert(Permutation([2, 1]), [chern(1, 1)], [chern(0, 1)])
    Poly('-x.0.1 + x.1.1')
    """
    _check_blocks(w, xs, ys)
    return _place(_schubert_generic(w.oneline), xs, ys)


def schubert_ddy(w: Permutation, i: int, xs: VarBlock, ys: VarBlock) -> Poly:
    """Apply the y-side divided difference ``d_{y_i, y_{i+1}}`` to ``S_w(xs; ys)``.

    Equals ``-S_{s_i w}`` when ``l(s_i w) < l(w)`` and 0 otherwise.
    """
    m = max(w.size, i + 1)
    f = _schubert_generic(w.oneline)
    g = divided_difference(f, _y(i), _y(i + 1))
    xs_full = list(xs) + [_x(a) for a in range(len(xs) + 1, m + 1)]
    ys_full = list(ys) + [_y(b) for b in range(len(ys) + 1, m + 1)]
    return _place(g, xs_full, ys_full)


def specialize_schubert(w: Permutation, u: Permutation) -> Poly:
    """``S_w(b_{u(1)}, ..., b_{u(m)}; b_1, ..., b_m)`` in strand variables."""
    from .polyring import strand

    m = max(w.size, u.size, 1)
    xs = [strand(u(a)) for a in range(1, m + 1)]
    ys = [strand(b) for b in range(1, m + 1)]
    return schubert(w, xs, ys)


def stability_check(w: Permutation, k: int, m: int) -> bool:
    """``S_{1^k x w}(0^k, x; 0^k, y) == S_w(x; y)`` with ``m`` variables per side."""
    m = max(m, w.size)
    big = _schubert_generic(shift(w, k).oneline)
    mapping: dict = {}
    for a in range(1, k + m + 1):
        mapping[_x(a)] = None if a <= k else _x(a - k)
        mapping[_y(a)] = None if a <= k else _y(a - k)
    return substitute(big, mapping) == _schubert_generic(w.oneline)


def transition_schubert(
    w: Permutation,
    xval: Callable[[int], Poly],
    yval: Callable[[int], Poly],
    memo: Optional[dict] = None,
) -> Poly:
    """Evaluate ``S_w`` under ``x_a -> xval(a)``, ``y_b -> yval(b)`` by transition.

    Uses ``S_w = (x_r - y_{v(r)}) S_v + sum_q S_{v t_{qr}}`` with ``r`` the last
    descent of ``w``, ``v = w t_{rs}`` for the largest ``s > r`` with
    ``w(s) < w(r)``, and ``q < r`` ranging over covers ``v t_{qr}`` of ``v``.
    Substitution commutes with the recursion, so intermediate results stay in
    the specialised ring.
    """
    if memo is None:
        memo = {}

    def rec(oneline: tuple) -> Poly:
        if oneline in memo:
            return memo[oneline]
        if not oneline:
            return Poly.const(1)
        v = list(oneline)
        r = max(i for i in range(1, len(v)) if v[i - 1] > v[i])
        s = max(j for j in range(r + 1, len(v) + 1) if v[j - 1] < v[r - 1])
        v[r - 1], v[s - 1] = v[s - 1], v[r - 1]
        vperm = Permutation(v)
        total = (xval(r) - yval(vperm(r))) * rec(vperm.oneline)
        vr = vperm(r)
        for q in range(r - 1, 0, -1):
            vq = vperm(q)
            if vq < vr and all(not (vq < vperm(c) < vr) for c in range(q + 1, r)):
                u = list(vperm.padded(max(vperm.size, r)))
                u[q - 1], u[r - 1] = u[r - 1], u[q - 1]
                total = total + rec(Permutation(u).oneline)
        memo[oneline] = total
        return total

    return rec(w.oneline)


def _block_values(block: VarBlock) -> Callable[[int], Poly]:
    def val(a: int) -> Poly:
        return Poly.var(block[a - 1]) if a <= len(block) else Poly()
    return val


def stanley(w: Permutation, xs: VarBlock, ys: VarBlock, check: bool = True) -> Poly:
    """Double Stanley function ``F_w(xs; ys) = S_{1^k x w}(xs, 0..; ys, 0..)``.

    ``k = max(len(xs), len(ys)) + 1``; with ``check`` the result is compared
    against ``k + 1``.
    """
    k = max(len(xs), len(ys)) + 1
    xv, yv = _block_values(xs), _block_values(ys)
    f = transition_schubert(shift(w, k), xv, yv)
    if check:
        g = transition_schubert(shift(w, k + 1), xv, yv)
        if f != g:
            raise AssertionError(f"Stanley function of {w} depends on the shift")
    return f


@lru_cache(maxsize=None)
def _eg_cached(oneline: tuple) -> tuple:
    w = Permutation(oneline)
    ell = w.length()
    if ell == 0:
        return (((), 1),)
    # increasing P-tableaux have entries in 1..m-1, hence at most m-1 rows
    nvars = min(ell, max(w.size - 1, 1))
    xs = [_x(a) for a in range(1, nvars + 1)]
    expansion = schur_expand(stanley(w, xs, (), check=False), xs)
    return tuple(sorted(expansion.items()))


def eg_coefficients(w: Permutation) -> dict:
    """Schur expansion ``{lam: a_lam}`` of the single Stanley function ``F_w``."""
    return dict(_eg_cached(w.oneline))


@lru_cache(maxsize=None)
def _groth_core(oneline: tuple) -> Poly:
    # isobaric descent from prod (x_i - y_j); the beta-difference top class is
    # this product divided by prod_j (1 + beta y_j)^(m - j)
    w = Permutation(oneline)
    m = w.size
    if w == longest(m):
        return _top_class(m)
    i = next(i for i in range(1, m) if not w.has_descent(i))
    return isobaric_difference(_groth_core(multiply(w, simple(i)).oneline), _x(i), _x(i + 1))


def _times_unit_power(f: Poly, y: Variable, k: int) -> Poly:
    """``f * (1 + beta*y)**k``; negative ``k`` divides exactly."""
    unit = 1 + Poly.var(BETA) * Poly.var(y)
    if k >= 0:
        return f * unit**k
    beta = Poly.var(BETA)
    for _ in range(-k):
        parts = f.collect(y)
        top = max(parts, default=0)
        quotient: dict = {}
        prev = Poly()
        for e in range(top):
            prev = parts.get(e, Poly()) - beta * prev
            quotient[e] = prev
        exact = parts.get(top, Poly()) == beta * prev if top else f.is_zero()
        if not exact:
            raise ArithmeticError(f"not divisible by 1 + beta*{y}")
        f = sum((q * Poly.monomial({y: e}) for e, q in quotient.items()), Poly())
    return f


def grothendieck(w: Permutation, xs: VarBlock, ys: VarBlock) -> Poly:
    """beta-Grothendieck polynomial ``G_w(xs; ys)``, made polynomial in ``ys``.

    The top class of ``S_m`` is ``prod (x_i - y_j)/(1 + beta y_j)``, i.e. the
    beta-deformed difference, and ``G_w`` follows by the isobaric operators
    ``d_i (1 + beta x_{i+1})``.  ``G_w`` has poles ``1 + beta y_j`` of order at
    most ``len(xs)``; the returned polynomial is
    ``G_w * prod_{y in ys} (1 + beta y)**len(xs)``.  The factor is symmetric in
    ``ys`` and equals 1 at ``beta = 0``, where the result is ``S_w(xs; ys)``.
    """
    _check_blocks(w, xs, ys)
    m = w.size
    f = _groth_core(w.oneline)
    for b in range(1, max(m, len(ys) + 1)):
        expo = (len(xs) if b <= len(ys) else 0) - (m - b if b < m else 0)
        if expo:
            f = _times_unit_power(f, _y(b), expo)
    return _place(f, xs, ys)
