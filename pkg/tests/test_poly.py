import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from matdres import GaussianRational, Poly
from matdres.poly import _coprime_modp, content, poly_gcd, prem
from support import LAM_S, MU_S, bivar_to_sympy, rand_bivar

LAMBDA, MU = 0, 1
seeds = st.integers(0, 10 ** 6)


def _rand(seed, deg=3, terms=4):
    return rand_bivar(random.Random(seed), deg, terms)


@given(seeds, seeds, seeds)
def test_ring_axioms(s1, s2, s3):
    a, b, c = _rand(s1), _rand(s2), _rand(s3)
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == Poly()


@given(seeds, seeds)
def test_product_matches_sympy(s1, s2):
    a, b = _rand(s1), _rand(s2)
    assert sympy.expand(bivar_to_sympy(a * b) - bivar_to_sympy(a) * bivar_to_sympy(b)) == 0


@settings(max_examples=40, deadline=None)
@given(seeds, seeds, seeds)
def test_gcd_recovers_common_factor(s1, s2, s3):
    a, b, g = _rand(s1, 2, 3), _rand(s2, 2, 3), _rand(s3, 2, 2)
    if not (a and b and g):
        return
    h = poly_gcd(a * g, b * g)
    assert (a * g).div_if_exact(h) is not None
    assert (b * g).div_if_exact(h) is not None
    assert h.div_if_exact(g.monic()) is not None or g.is_constant()
    ref = sympy.gcd(bivar_to_sympy(a * g), bivar_to_sympy(b * g))
    assert sympy.Poly(bivar_to_sympy(h), LAM_S, MU_S).total_degree() == sympy.Poly(ref, LAM_S, MU_S).total_degree()


def test_gcd_is_monic_and_exact():
    lam, mu = Poly.var(LAMBDA), Poly.var(MU)
    a = (lam - 1) * (mu + 2 * lam)
    b = (lam - 1) * (mu - lam)
    assert poly_gcd(a, b) == lam - 1
    assert poly_gcd(a, Poly.const(3)) == Poly.const(1)
    assert poly_gcd(Poly(), b) == b.monic()
    with pytest.raises(ValueError):
        poly_gcd(Poly(), Poly())


def test_long_univariate_gcd_stays_fast():
    x = Poly.var(0)
    rng = random.Random(1)
    g = sum((Poly.const(GaussianRational(rng.randint(-5, 5), rng.randint(-5, 5))) * x ** k for k in range(6)),
            Poly()) + x ** 6
    a = g * sum((Poly.const(rng.randint(-9, 9)) * x ** k for k in range(12)), Poly())
    b = g * sum((Poly.const(rng.randint(-9, 9)) * x ** k for k in range(11)), Poly())
    assert poly_gcd(a, b).div_if_exact(g) is not None


def test_content_and_prem():
    lam, mu = Poly.var(LAMBDA), Poly.var(MU)
    p = (lam + 1) * mu ** 2 + (lam * lam - 1) * mu
    assert content(p, MU) == lam + 1
    r = prem(mu ** 2 + lam, mu - lam, MU)
    assert r == lam * lam + lam


@given(seeds)
def test_sqrt_of_square(s):
    a = _rand(s)
    r = (a * a).sqrt()
    assert r is not None and r * r == a * a


def test_sqrt_rejects_non_squares():
    lam, mu = Poly.var(LAMBDA), Poly.var(MU)
    assert (lam * lam + 1).sqrt() is None
    assert (mu * mu * lam).sqrt() is None


def test_divexact_and_subs():
    lam, mu = Poly.var(LAMBDA), Poly.var(MU)
    p = (mu - lam ** 2) * (mu + 3)
    assert p.divexact(mu + 3) == mu - lam ** 2
    with pytest.raises(ValueError):
        p.divexact(mu + 4)
    assert p.subs({MU: lam ** 2}) == Poly()
    assert p.evaluate({LAMBDA: 1, MU: 1}) == Poly()
    assert p.diff(MU) == 2 * mu + 3 - lam ** 2


def test_term_order_mu_dominates():
    lam, mu = Poly.var(LAMBDA), Poly.var(MU)
    p = mu ** 2 + 4 * lam ** 4
    assert p.leading()[0] == ((MU, 2),)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_modular_coprimality_never_hides_a_common_factor(seed):
    rng = random.Random(seed)
    g = rand_bivar(rng, 2, 3)
    if g.is_constant():
        return
    a, b = rand_bivar(rng, 2, 3) * g, rand_bivar(rng, 2, 3) * g
    if a and b:
        assert not _coprime_modp(a, b)
