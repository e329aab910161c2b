import random

import pytest

from matdres import (MODO, Factorization, GaussianRational, Matrix, Poly, bc_generator, detect_polynomial_in_L,
                     is_bc, minimal_exponents, parse_operator, parse_poly)
import matdres.bc as bc_module
from matdres.errors import ConjectureViolation, InvalidUserFactorization, NoncommutingPair
from matdres.polyring import LAM, MU
from support import X_FIELD, load_demo, rand_invertible, rand_matrix

G = GaussianRational
lam, mu = Poly.var(LAM), Poly.var(MU)


def _random_L(seed, ell=2):
    rng = random.Random(seed)
    return MODO([rand_matrix(rng, ell), rand_invertible(rng, ell)])


def test_polynomial_in_L_gives_trivial_case():
    L = _random_L(1)
    B = L * L + 3 * L
    rep = bc_generator(L, B)
    h = mu - lam ** 2 - 3 * lam
    assert rep.f == h ** 2
    assert rep.factors == [(h, 2, 1)]
    assert rep.F == h and rep.f_red == h
    assert rep.trivial_case == h
    assert rep.decomposition == ["C[lambda,mu]/(mu - lambda^2 - 3*lambda)"]


def test_detect_polynomial_in_L():
    L = _random_L(2)
    B = 2 * L ** 3 - L + 5
    assert detect_polynomial_in_L(L, B) == 2 * lam ** 3 - lam + 5
    _, L72, B72 = load_demo("ex72")
    assert detect_polynomial_in_L(L72, B72) is None


def test_diagonal_pair_with_two_components():
    K = X_FIELD
    L = parse_operator("[[D, 0], [0, D]]", K)
    B = parse_operator("[[D^2, 0], [0, 2*D^2]]", K)
    rep = bc_generator(L, B)
    assert rep.f == (lam ** 2 - mu) * (2 * lam ** 2 - mu)
    assert sorted(r for _, _, r in rep.factors) == [1, 1]
    assert rep.trivial_case is None
    assert len(rep.decomposition) == 2


def test_minimal_exponents_never_exceed_multiplicity():
    L = _random_L(3)
    B = L * L
    fac = Factorization(G(1), [(mu - lam ** 2, 2)])
    assert minimal_exponents(fac, L, B) == [1]


def test_ex72_generator_and_factor_tests():
    _, L, B = load_demo("ex72")
    assert is_bc(mu ** 2 + 4 * lam ** 4, L, B)
    assert not is_bc(mu - 2 * G(0, 1) * lam ** 2, L, B)
    assert is_bc(Poly(), L, B)
    rep = bc_generator(L, B)
    assert rep.f_is_bc and rep.factorization_source == "computed"


def test_user_factorization_is_verified_and_recorded():
    _, L, B = load_demo("ex72")
    user = Factorization(G(1), [(parse_poly("mu - 2*i*lambda^2"), 1), (parse_poly("mu + 2*i*lambda^2"), 1)])
    rep = bc_generator(L, B, user=user)
    assert rep.factorization_source == "user" and rep.F == rep.f
    with pytest.raises(InvalidUserFactorization):
        bc_generator(L, B, user=Factorization(G(1), [(parse_poly("mu - 2*i*lambda^2"), 2)]))


def test_noncommuting_pair_refused():
    L = _random_L(4)
    C = _random_L(5)
    with pytest.raises(NoncommutingPair):
        is_bc(lam, L, C)
    with pytest.raises(NoncommutingPair):
        bc_generator(L, C)


def test_violation_halts_with_residue(monkeypatch):
    # force a wrong curve through the pipeline to exercise the halting path
    L = _random_L(6)
    B = L * L
    real = bc_module.spectral_curve

    def shifted(L_, B_):
        rep = real(L_, B_)
        rep.f = rep.f + 1
        return rep

    monkeypatch.setattr(bc_module, "spectral_curve", shifted)
    with pytest.raises(ConjectureViolation) as info:
        bc_generator(L, B)
    assert info.value.operator == MODO.identity(2, X_FIELD)
    assert not info.value.report.f_is_bc
    rep = bc_generator(L, B, halt_on_violation=False)
    assert rep.residual is not None and rep.F is None
