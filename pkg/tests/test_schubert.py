from functools import lru_cache
from math import factorial

import pytest
import sympy as sp

from conftest import sym, to_sympy
from quiverkit.permkit import (
    Permutation,
    all_perms,
    bruhat_leq,
    last_descent,
    length,
    longest,
    multiply,
    shift,
    simple,
)
from quiverkit.polyring import (
    BETA,
    Poly,
    chern,
    is_symmetric,
    isobaric_difference,
    schur_expand,
    strand,
    substitute,
)
from quiverkit.schubert import (
    eg_coefficients,
    grothendieck,
    schubert,
    schubert_ddy,
    specialize_schubert,
    stability_check,
    stanley,
    transition_schubert,
)

P = Permutation
ID = Permutation()
X = [chern(1, a) for a in range(1, 7)]
Y = [chern(0, a) for a in range(1, 7)]


def x(a):
    return Poly.var(X[a - 1])


def y(b):
    return Poly.var(Y[b - 1])


def b(k):
    return Poly.var(strand(k))


# --- double Schubert polynomials ------------------------------------------


def test_schubert_examples():
    assert schubert(ID, X, Y) == Poly.const(1)
    assert schubert(P([2, 1]), X, Y) == x(1) - y(1)
    assert schubert(longest(3), X, Y) == (x(1) - y(1)) * (x(1) - y(2)) * (x(2) - y(1))


def test_schubert_blocks_too_short():
    with pytest.raises(ValueError):
        schubert(P([1, 3, 2]), X[:1], Y)
    with pytest.raises(ValueError):
        schubert(P([3, 1, 2]), X, Y[:1])


def _sympy_schubert(w, m):
    """Independent recursion in sympy: divided differences from the top class of S_m."""
    xs = sp.symbols(f"x1:{m + 1}")
    ys = sp.symbols(f"y1:{m + 1}")

    @lru_cache(maxsize=None)
    def rec(oneline):
        v = P(oneline)
        if v == longest(m):
            return sp.expand(sp.prod([xs[i - 1] - ys[j - 1] for i in range(1, m) for j in range(1, m - i + 1)]))
        i = next(i for i in range(1, m) if not v.has_descent(i))
        f = rec(multiply(v, simple(i)).oneline)
        g = f.subs({xs[i - 1]: xs[i], xs[i]: xs[i - 1]}, simultaneous=True)
        return sp.expand(sp.cancel((f - g) / (xs[i - 1] - xs[i])))

    return rec(w.oneline), xs, ys


def test_schubert_matches_sympy_on_s4():
    for w in all_perms(4):
        expected, xs, ys = _sympy_schubert(w, 4)
        got = to_sympy(schubert(w, X[:4], Y[:4]))
        rename = {sym(X[a]): xs[a] for a in range(4)} | {sym(Y[a]): ys[a] for a in range(4)}
        assert sp.expand(got.subs(rename, simultaneous=True) - expected) == 0


def test_stable_under_embedding():
    # S_w does not depend on the symmetric group it is computed in
    for w in all_perms(4):
        f = schubert(w, X[:4], Y[:4])
        for m in (5, 6):
            assert f == schubert(P(w.padded(m)), X, Y)


def test_support_bound():
    for w in all_perms(4):
        k, l = last_descent(w), last_descent(w.inverse)
        f = schubert(w, X[:4], Y[:4])
        for v in f.variables():
            if v.i == 1:
                assert v.j <= k
            else:
                assert v.j <= l
        assert f == schubert(w, X[:k], Y[:l])


def test_inverse_symmetry():
    for w in all_perms(4):
        lhs = schubert(w, Y[:4], X[:4])
        rhs = schubert(w.inverse, X[:4], Y[:4])
        assert lhs == (-1) ** length(w) * rhs


def test_ddy_examples():
    assert schubert_ddy(P([2, 1]), 1, X, Y) == Poly.const(-1)
    assert schubert_ddy(P([1, 3, 2]), 1, X, Y) == Poly()
    w0 = longest(3)
    assert schubert_ddy(w0, 1, X, Y) == -schubert(multiply(simple(1), w0), X, Y)


def test_ddy_identity_on_s4():
    for w in all_perms(4):
        for i in (1, 2, 3):
            v = multiply(simple(i), w)
            got = schubert_ddy(w, i, X[:4], Y[:4])
            if length(v) < length(w):
                assert got == -schubert(v, X[:4], Y[:4])
            else:
                assert got.is_zero()


# --- specialization -------------------------------------------------------


def test_specialize_examples():
    assert specialize_schubert(P([2, 1]), P([2, 1])) == b(2) - b(1)
    assert specialize_schubert(P([2, 1]), ID).is_zero()
    for u in all_perms(3):
        assert specialize_schubert(ID, u) == Poly.const(1)


def test_specialize_vanishing_and_diagonal():
    for w in all_perms(4):
        for u in all_perms(4):
            val = specialize_schubert(w, u)
            if not bruhat_leq(w, u):
                assert val.is_zero()
        m = 4
        diag = Poly.const(1)
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                if w(i) > w(j):
                    diag = diag * (b(w(i)) - b(w(j)))
        assert specialize_schubert(w, w) == diag


def _at(w, u, m=3):
    return schubert(w, [strand(u(a)) for a in range(1, m + 1)], [strand(c) for c in range(1, m + 1)])


def test_descending_induction_identity():
    checked = 0
    for w in all_perms(3):
        for u in all_perms(3):
            for i in (1, 2):
                if w.has_descent(i):
                    continue
                ws = multiply(w, simple(i))
                lhs = (b(u(i + 1)) - b(u(i))) * _at(w, u)
                rhs = _at(ws, multiply(u, simple(i))) - _at(ws, u)
                assert lhs == rhs
                checked += 1
    assert checked == 36


@pytest.mark.parametrize("w, k, m", [(P([2, 1]), 1, 2), (ID, 3, 2), (P([2, 3, 1]), 2, 3)])
def test_stability_examples(w, k, m):
    assert stability_check(w, k, m)


def test_stability_on_s4():
    for w in all_perms(4):
        assert stability_check(w, 1, 4)


# --- transition formula ---------------------------------------------------


def test_transition_agrees_with_divided_differences():
    xv = lambda a: x(a) if a <= len(X) else Poly()  # noqa: E731
    yv = lambda c: y(c) if c <= len(Y) else Poly()  # noqa: E731
    memo = {}
    for w in all_perms(5):
        assert transition_schubert(w, xv, yv, memo) == schubert(w, X[:5], Y[:5])


# --- Stanley functions ----------------------------------------------------


def test_stanley_examples():
    assert stanley(ID, X[:2], Y[:2]) == Poly.const(1)
    assert stanley(P([2, 1]), X[:1], ()) == x(1)


def test_stanley_is_the_shifted_schubert():
    for w in all_perms(3):
        k = 3
        big = schubert(shift(w, k), X[:5], Y[:5])
        kill = {v: None for v in X[2:5] + Y[2:5]}
        assert stanley(w, X[:2], Y[:2]) == substitute(big, kill)


def test_stanley_symmetry_and_shift_independence():
    for w in all_perms(4):
        f = stanley(w, X[:3], Y[:2])
        assert is_symmetric(f, X[:3])
        assert is_symmetric(f, Y[:2])
        k = 5
        xv = lambda a: x(a) if a <= 3 else Poly()  # noqa: E731
        yv = lambda c: y(c) if c <= 2 else Poly()  # noqa: E731
        assert transition_schubert(shift(w, k), xv, yv) == f


def test_stanley_schur_positive_on_s4():
    for w in all_perms(4):
        f = stanley(w, X[:4], ())
        coeffs = schur_expand(f, X[:4])
        assert all(c > 0 for c in coeffs.values())
        assert all(sum(lam) == length(w) for lam in coeffs)


def _reduced_word_count(w):
    @lru_cache(maxsize=None)
    def count(oneline):
        v = P(oneline)
        if v == ID:
            return 1
        return sum(count(multiply(v, simple(i)).oneline) for i in range(1, v.size) if v.has_descent(i))

    return count(w.oneline)


def _hook_count(lam):
    n = sum(lam)
    conj = [sum(1 for part in lam if part > c) for c in range(lam[0])] if lam else []
    hooks = 1
    for r, part in enumerate(lam):
        for c in range(part):
            hooks *= part - c + conj[c] - r - 1
    return factorial(n) // hooks


@pytest.mark.parametrize(
    "w, expected",
    [
        (ID, {(): 1}),
        (P([2, 1]), {(1,): 1}),
        (P([3, 2, 1]), {(2, 1): 1}),
        (P([2, 1, 4, 3]), {(2,): 1, (1, 1): 1}),
    ],
)
def test_eg_examples(w, expected):
    assert eg_coefficients(w) == expected


def test_eg_counts_reduced_words():
    for m in (3, 4, 5):
        for w in all_perms(m):
            coeffs = eg_coefficients(w)
            assert all(c > 0 for c in coeffs.values())
            assert sum(c * _hook_count(lam) for lam, c in coeffs.items()) == _reduced_word_count(w)


def test_eg_of_longest_is_staircase():
    for m in (3, 4, 5):
        assert eg_coefficients(longest(m)) == {tuple(range(m - 1, 0, -1)): 1}


# --- Grothendieck polynomials ---------------------------------------------


def _beta_zero(f):
    return substitute(f, {BETA: None})


def test_grothendieck_reduces_to_schubert():
    for m in (3, 4):
        for w in all_perms(m):
            assert _beta_zero(grothendieck(w, X[:m], Y[:m])) == schubert(w, X[:m], Y[:m])


def test_grothendieck_examples():
    assert grothendieck(ID, (), ()) == Poly.const(1)
    # with y-variables present the result carries the unit prod (1 + beta y)^len(xs)
    unit = (1 + Poly.var(BETA) * y(1)) * (1 + Poly.var(BETA) * y(2))
    assert grothendieck(ID, X[:2], Y[:2]) == unit**2
    assert grothendieck(P([2, 1]), X[:1], Y[:1]) == x(1) - y(1)
    g = grothendieck(P([2, 1]), X[:2], Y[:2])
    lowest = g.collect(BETA)[0]
    assert lowest == x(1) - y(1)


@pytest.mark.parametrize(
    "w, expected",
    [
        # single beta-Grothendieck polynomials of S_3
        (P([1, 3, 2]), lambda: x(1) + x(2) + Poly.var(BETA) * x(1) * x(2)),
        (P([2, 1]), lambda: x(1)),
        (P([2, 3, 1]), lambda: x(1) * x(2)),
        (P([3, 1, 2]), lambda: x(1) ** 2),
        (P([3, 2, 1]), lambda: x(1) ** 2 * x(2)),
    ],
)
def test_single_grothendieck(w, expected):
    g = grothendieck(w, X[:3], Y[:3])
    assert substitute(g, {v: None for v in Y[:3]}) == expected()


def test_grothendieck_isobaric_recursion():
    for w in all_perms(4):
        g = grothendieck(w, X[:4], Y[:4])
        for i in (1, 2, 3):
            if w.has_descent(i):
                expected = grothendieck(multiply(w, simple(i)), X[:4], Y[:4])
                assert isobaric_difference(g, X[i - 1], X[i]) == expected


def test_grothendieck_x_support():
    for w in all_perms(4):
        g = grothendieck(w, X[:4], Y[:4])
        assert all(v.j <= last_descent(w) for v in g.variables() if v.kind == 0 and v.i == 1)
