"""Pointwise spectral problem: curve membership, common-solution kernels, the
ratio function of a 2x2 pair and the Riccati identity for AKNS-shaped ``L``."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .dres import m_matrix, spectral_matrix
from .errors import NotAKNSShape, ZeroDenominatorEntry
from .gaussian import GaussianRational, I
from .matrix import Matrix, matvec
from .modo import MODO
from .poly import Poly
from .polyring import LAM, MU


@dataclass(frozen=True)
class CurvePoint:
    lambda0: GaussianRational
    mu0: GaussianRational

    @classmethod
    def of(cls, lam, mu) -> "CurvePoint":
        return cls(GaussianRational.coerce(lam), GaussianRational.coerce(mu))


@dataclass
class KernelBasis:
    vectors: List[list]
    rank: int
    nullity: int
    matrix: Matrix


def _eval_at(f: Poly, pt: CurvePoint):
    vals = f.evaluate({LAM: pt.lambda0, MU: pt.mu0})
    return vals.constant_coeff()


def on_curve(f: Poly, pt: CurvePoint) -> bool:
    return not _eval_at(f, pt)


def kernel_at_point(L: MODO, B: MODO, pt: CurvePoint) -> KernelBasis:
    """Null space over K of ``M(L - lambda0, B - mu0)``."""
    K = L.field
    Lp = L - MODO.scalar(pt.lambda0, L.ell, K)
    Bp = B - MODO.scalar(pt.mu0, B.ell, K)
    M = m_matrix(Lp, Bp)
    basis = M.nullspace()
    for v in basis:
        if any(matvec(M, v)):
            raise AssertionError("kernel vector fails re-multiplication")
    return KernelBasis(vectors=basis, rank=L.ell - len(basis), nullity=len(basis), matrix=M)


@dataclass(frozen=True)
class SpectralFraction:
    """``num/den`` with numerator and denominator in ``K[lambda, mu]``."""

    num: Poly
    den: Poly

    def at(self, lam, mu):
        """Value in K at a constant point; raises if the denominator vanishes there."""
        K = self.num.domain
        n = self.num.evaluate({LAM: lam, MU: mu}).constant_coeff()
        d = self.den.evaluate({LAM: lam, MU: mu}).constant_coeff()
        if not d:
            raise ZeroDenominatorEntry("denominator vanishes at the point")
        return K.convert(n) / K.convert(d)


def phi_ratio(L: MODO, B: MODO) -> SpectralFraction:
    """``phi = -M11/M12`` for the spectral matrix of a 2x2 pair."""
    if L.ell != 2:
        raise ValueError("phi is defined for 2x2 operators")
    M = spectral_matrix(L, B)
    if not M[0, 1]:
        raise ZeroDenominatorEntry("entry M12 of the spectral matrix is zero")
    return SpectralFraction(-M[0, 0], M[0, 1])


def akns_potentials(L: MODO) -> Tuple[object, object]:
    """``(u, v)`` if ``L = i*[[D, u], [v, -D]]``, else :class:`NotAKNSShape`."""
    K = L.field
    if L.ell != 2 or L.order != 1:
        raise NotAKNSShape("L must be a 2x2 operator of order one")
    A1, A0 = L.coeff(1), L.coeff(0)
    iK = K.convert(I)
    if A1 != Matrix([[iK, 0], [0, -iK]], K):
        raise NotAKNSShape("leading coefficient must be i*diag(1, -1)")
    if A0[0, 0] or A0[1, 1]:
        raise NotAKNSShape("order-zero coefficient must have zero diagonal")
    return A0[0, 1] / iK, A0[1, 0] / iK


def riccati_expression(L: MODO, B: MODO) -> SpectralFraction:
    """``phi' - u*phi^2 - 2i*lambda*phi - v`` over the common denominator ``M12^2``."""
    u, v = akns_potentials(L)
    phi = phi_ratio(L, B)
    a, b = phi.num, phi.den
    K = L.field
    lam = Poly.var(LAM, K)
    two_i = K.convert(2 * I)
    num = a.derive() * b - a * b.derive() - a * a * u - lam * a * b * two_i - b * b * v
    return SpectralFraction(num, b * b)


def riccati_residual(L: MODO, B: MODO, f: Poly = None) -> Poly:
    """``numer(phi' - u*phi^2 - 2i*lambda*phi - v) + u*f`` in ``K[lambda, mu]``.

    With ``phi = a/b`` (``b = M12``) the Riccati expression equals
    ``-u*f/b^2``, so clearing the denominator leaves a polynomial identity
    that holds for every AKNS pair; on the curve ``f = 0`` it reduces to the
    Riccati equation for ``phi_P``.
    """
    from .dres import spectral_poly
    u, _ = akns_potentials(L)
    K = L.field
    if f is None:
        f = spectral_poly(L, B)
    elif f.domain is not K:
        f = f.map_coeffs(K.convert, K)
    return riccati_expression(L, B).num + f * u
