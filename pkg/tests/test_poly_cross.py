"""Cross-checks of the Groebner engine against an independent implementation.

sympy is used here purely as a test oracle; the library itself never
imports it.
"""

import random
from fractions import Fraction

import pytest

sympy = pytest.importorskip("sympy")

from tvbcox.poly import Ideal, PolyRing, buchberger, grevlex, lex, normal_form


NAMES = ["x", "y", "z", "w"]


def to_sympy(f, syms):
    expr = 0
    for mono, coeff in f.terms.items():
        term = sympy.Rational(coeff.numerator, coeff.denominator)
        for s, e in zip(syms, mono):
            term *= s**e
        expr += term
    return expr


def from_sympy(expr, ring, syms):
    poly = sympy.Poly(expr, *syms)
    terms = []
    for mono, coeff in poly.terms():
        terms.append((tuple(mono), Fraction(coeff.p, coeff.q)))
    return ring.from_terms(terms)


def random_system(ring, rng, count, max_degree=2, terms=3):
    gens = []
    for _ in range(count):
        f = ring.zero()
        for _ in range(terms):
            exps = [0] * ring.nvars
            for _ in range(rng.randrange(max_degree + 1)):
                exps[rng.randrange(ring.nvars)] += 1
            f = f + ring.monomial(exps, rng.randrange(-2, 3))
        if f:
            gens.append(f)
    return gens


@pytest.mark.parametrize("order_name", ["lex", "grevlex"])
def test_reduced_basis_matches_sympy(order_name):
    rng = random.Random(97)
    for trial in range(25):
        nvars = rng.randrange(2, 4)
        ring = PolyRing(NAMES[:nvars])
        syms = sympy.symbols(NAMES[:nvars])
        gens = random_system(ring, rng, rng.randrange(1, 4))
        if not gens:
            continue
        order = lex(ring) if order_name == "lex" else grevlex(ring)
        ours = buchberger(gens, order)
        theirs = sympy.groebner(
            [to_sympy(g, syms) for g in gens], *syms, order=order_name
        )
        expected = {
            frozenset(from_sympy(e, ring, syms).monic(order).terms.items())
            for e in theirs.exprs
            if e != 0
        }
        got = {frozenset(g.terms.items()) for g in ours}
        if not expected:
            assert got == set() or got == {
                frozenset(ring.one().terms.items())
            }  # sympy returns [] for the zero ideal
            continue
        assert got == expected, f"trial {trial}: {got} != {expected}"


def test_membership_of_random_combinations():
    rng = random.Random(101)
    ring = PolyRing(["x", "y", "z"])
    order = grevlex(ring)
    gens = [
        ring.var("x") * ring.var("y") - ring.var("z"),
        ring.var("y") ** 2 - ring.var("x"),
    ]
    gb = Ideal(ring, gens).groebner(order)
    for _ in range(40):
        combo = ring.zero()
        for g in gens:
            factor = random_system(ring, rng, 1, max_degree=2, terms=2)
            if factor:
                combo = combo + factor[0] * g
        assert not normal_form(combo, gb, order)
