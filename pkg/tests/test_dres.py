import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from matdres import (MODO, Matrix, Poly, companion, dres, m_matrix, p_seq, spectral_curve, spectral_matrix,
                     spectral_poly)
from matdres.errors import SingularLeadingCoefficient, WrongOrder
from matdres.polyring import LAM, MU
from support import X_FIELD, bivar_to_sympy, load_demo, rand_invertible, rand_matrix

seeds = st.integers(0, 10 ** 6)
lam, mu = Poly.var(LAM, X_FIELD), Poly.var(MU, X_FIELD)


def _reference_m(L, B):
    # M = sum B_j p_j straight from the recurrence, normalising every step
    ps = p_seq(companion(L), max(B.order, 0))
    M = Matrix.zeros(L.ell, X_FIELD)
    for j, Bj in enumerate(B.coeffs):
        M = M + Bj * ps[j]
    return M


@settings(max_examples=15, deadline=None)
@given(seeds, st.integers(1, 3), st.integers(0, 3))
def test_m_matrix_agrees_with_plain_recurrence(seed, ell, order):
    rng = random.Random(seed)
    L = MODO([rand_matrix(rng, ell, fraction=True), rand_invertible(rng, ell)])
    B = MODO([rand_matrix(rng, ell, fraction=True) for _ in range(order + 1)])
    assert m_matrix(L, B) == _reference_m(L, B)


def test_scalar_recurrence():
    a = X_FIELD.generator() ** 2
    L = MODO([Matrix([[-a]], X_FIELD), Matrix.identity(1, X_FIELD)])
    N = companion(L)
    assert N[0, 0] == a
    ps = p_seq(N, 2)
    assert ps[2][0, 0] == a * a + a.derive()


def test_scalar_spectral_curve():
    D = MODO.D(1, X_FIELD)
    rep = spectral_curve(D, D * D)
    assert rep.f == Poly.var(LAM) ** 2 - Poly.var(MU)
    assert rep.over_gaussian and rep.degree_structure_ok


def test_order_zero_second_operator():
    rng = random.Random(1)
    L = MODO([rand_matrix(rng, 2), rand_invertible(rng, 2)])
    B = MODO([Matrix.scalar(3, 2, X_FIELD)])
    rep = spectral_curve(L, B)
    assert rep.f == (Poly.const(3) - Poly.var(MU)) ** 2
    assert rep.degree_structure_ok


def test_errors():
    rng = random.Random(2)
    A = rand_matrix(rng, 2)
    with pytest.raises(WrongOrder):
        dres(MODO([A, A, rand_invertible(rng, 2)]), MODO([A]))
    x = X_FIELD.generator()
    singular = Matrix([[x, x], [1, 1]], X_FIELD)
    with pytest.raises(SingularLeadingCoefficient):
        dres(MODO([A, singular]), MODO([A]))


def test_noncommuting_pair_gets_warning():
    rng = random.Random(3)
    L = MODO([rand_matrix(rng, 2), rand_invertible(rng, 2)])
    B = MODO([rand_matrix(rng, 2), rand_matrix(rng, 2)])
    rep = spectral_curve(L, B)
    assert not rep.commutator_is_zero and rep.warnings


def test_akns_determinant_against_independent_expansion():
    # M(L - lambda, B - mu) built symbolically with u(x), v(x), then NLS rules applied
    x, l, m = sympy.symbols("x lambda mu")
    u, v = sympy.Function("u")(x), sympy.Function("v")(x)
    i = sympy.I
    A1 = sympy.Matrix([[i, 0], [0, -i]])
    A0 = sympy.Matrix([[0, i * u], [i * v, 0]])
    N = -A1.inv() * (A0 - l * sympy.eye(2))
    B0 = i * sympy.Matrix([[-u * v, -u.diff(x)], [-v.diff(x), u * v]])
    B1 = i * sympy.Matrix([[0, -2 * u], [-2 * v, 0]])
    B2 = i * sympy.Matrix([[-2, 0], [0, 2]])
    p2 = N * N + N.diff(x)
    M = B0 - m * sympy.eye(2) + B1 * N + B2 * p2
    rules = {u.diff(x, 2): -2 * u ** 2 * v, v.diff(x, 2): -2 * v ** 2 * u}
    jets = {u.diff(x): sympy.Symbol("u_1"), v.diff(x): sympy.Symbol("v_1"),
            u: sympy.Symbol("u_0"), v: sympy.Symbol("v_0")}
    det = sympy.expand(M.det().subs(rules).subs(jets))
    _, L, B = load_demo("akns")
    f = spectral_curve(L, B).f
    ours = sympy.expand(bivar_to_sympy(f).subs({sympy.Symbol("lambda"): l, sympy.Symbol("mu"): m}))
    assert sympy.expand(ours - det) == 0
    u0, u1, v0, v1 = (sympy.Symbol(s) for s in ("u_0", "u_1", "v_0", "v_1"))
    poly = sympy.Poly(det, l, m)
    assert sympy.expand(poly.coeff_monomial(l) - (2 * i * u1 * v0 - 2 * i * u0 * v1)) == 0
    assert sympy.expand(poly.coeff_monomial(1) - (u0 ** 2 * v0 ** 2 + u1 * v1)) == 0


def test_spectral_matrix_shape_for_ex72():
    _, L, B = load_demo("ex72")
    M = spectral_matrix(L, B)
    assert M.n == 2
    assert spectral_poly(L, B) == M.det()
