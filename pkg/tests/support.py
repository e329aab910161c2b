"""Shared fixtures data, random generators and sympy converters for the tests."""
from __future__ import annotations

import random
from fractions import Fraction

import sympy

from matdres import DiffField, FieldElement, GaussianRational, Matrix, MODO, Poly, parse_config
from matdres.cli import demo_config
from matdres.polyring import LAM, MU

X_FIELD = DiffField.ratfunc("x", 1)


def load_demo(name):
    cfg = parse_config(demo_config(name))
    return cfg, cfg.operator("L"), cfg.operator("B")


def rand_gauss(rng: random.Random, lo=-3, hi=3, complex_=True) -> GaussianRational:
    re = Fraction(rng.randint(lo, hi), rng.choice([1, 1, 2, 3]))
    im = Fraction(rng.randint(lo, hi), rng.choice([1, 1, 2])) if complex_ else 0
    return GaussianRational(re, im)


def rand_xpoly(rng: random.Random, deg=1) -> Poly:
    return Poly.from_terms([(((0, k),) if k else (), rand_gauss(rng)) for k in range(deg + 1)])


def rand_x_element(rng: random.Random, K=X_FIELD, deg=1, fraction=False):
    num = rand_xpoly(rng, deg)
    if not fraction:
        return FieldElement(K, num)
    den = rand_xpoly(rng, 1)
    while not den:
        den = rand_xpoly(rng, 1)
    return FieldElement(K, num, den)


def rand_matrix(rng: random.Random, ell: int, K=X_FIELD, deg=1, fraction=False) -> Matrix:
    return Matrix([[rand_x_element(rng, K, deg, fraction) for _ in range(ell)] for _ in range(ell)], K)


def rand_invertible(rng: random.Random, ell: int, K=X_FIELD, deg=1) -> Matrix:
    while True:
        A = rand_matrix(rng, ell, K, deg)
        if A.det():
            return A


def rand_const_matrix(rng: random.Random, ell: int, K=X_FIELD) -> Matrix:
    return Matrix([[rand_gauss(rng) for _ in range(ell)] for _ in range(ell)], K)


def rand_bivar(rng: random.Random, deg=3, terms=4) -> Poly:
    items = []
    for _ in range(terms):
        a = rng.randint(0, deg)
        b = rng.randint(0, deg - a)
        m = tuple(p for p in ((LAM, a), (MU, b)) if p[1])
        items.append((m, rand_gauss(rng)))
    return Poly.from_terms(items)


def poly_of(R_coeffs, var=LAM) -> Poly:
    return Poly.from_terms([(((var, k),) if k else (), c) for k, c in enumerate(R_coeffs)])


# -- sympy converters (independent of the renderer/parser) ----------------------

LAM_S, MU_S = sympy.symbols("lambda mu")
X_S = sympy.Symbol("x")


def gauss_to_sympy(c: GaussianRational):
    return sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)


def jet_symbol(K, v):
    if K.backend == "ratfunc":
        return sympy.Symbol(K.gen)
    s, order = K.jet_of_var(v)
    return sympy.Symbol(f"{K.symbols[s]}_{order}")


def fpoly_to_sympy(p: Poly, K):
    out = sympy.Integer(0)
    for m, c in p.terms.items():
        term = gauss_to_sympy(c)
        for v, e in m:
            term *= jet_symbol(K, v) ** e
        out += term
    return out


def fe_to_sympy(a):
    K = a.field
    return fpoly_to_sympy(a.num, K) / fpoly_to_sympy(a.den, K)


def coeff_to_sympy(c):
    if isinstance(c, GaussianRational):
        return gauss_to_sympy(c)
    return fe_to_sympy(c)


def bivar_to_sympy(p: Poly):
    out = sympy.Integer(0)
    for m, c in p.terms.items():
        term = coeff_to_sympy(c)
        for v, e in m:
            term *= (LAM_S if v == LAM else MU_S) ** e
        out += term
    return out
