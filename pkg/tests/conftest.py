import sympy as sp
import pytest

from quiverkit.acceptance import dims_up_to
from quiverkit.polyring import Poly, Variable


def to_sympy(f: Poly):
    total = sp.Integer(0)
    for mono, c in f.terms.items():
        term = sp.Integer(c)
        for v, e in mono:
            term *= sp.Symbol(v.name.replace(".", "_")) ** e
        total += term
    return sp.expand(total)


def sym(v: Variable):
    return sp.Symbol(v.name.replace(".", "_"))


@pytest.fixture(scope="session")
def small_dims():
    return dims_up_to(6)
