"""Matrix differential resultant of a first-order MODO and an arbitrary MODO.

For ``L = A1 D + A0`` with invertible ``A1``, set ``N = -A1^{-1} A0`` so that
``D = N`` on the solution space of ``L``. Powers of ``D`` reduce to
``p_j = p_{j-1} N + p_{j-1}'`` (``p_0 = I``), and ``B = sum B_j D^j``
collapses to ``M = sum B_j p_j``. The resultant is ``det M``. With ``lambda``
and ``mu`` adjoined, ``L - lambda`` and ``B - mu`` give the spectral curve.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .errors import NonconstantCoefficients, SingularLeadingCoefficient, SingularMatrix, WrongOrder
from .matrix import Matrix
from .modo import MODO, commutes
from .difffield import FieldElement
from .poly import Poly, poly_gcd
from .polyring import LAM, MU, PolyRing


def _leading_inverse(L: MODO) -> Matrix:
    if L.order != 1:
        raise WrongOrder(f"L must have order 1, got {L.order}")
    try:
        return L.coeff(1).inverse()
    except SingularMatrix:
        raise SingularLeadingCoefficient("leading coefficient of L is singular") from None


def companion(L: MODO) -> Matrix:
    """``N = -A1^{-1} A0``."""
    return -(_leading_inverse(L) * L.coeff(0))


def p_seq(N: Matrix, n: int) -> List[Matrix]:
    """``[p_0, ..., p_n]`` with ``p_0 = I`` and ``p_j = p_{j-1} N + p_{j-1}'``.

    Works over any ring whose entries implement ``derive``.
    """
    ps = [Matrix.identity(N.n, N.ring)]
    for _ in range(n):
        prev = ps[-1]
        ps.append(prev * N + prev.derive())
    return ps


def m_matrix(L: MODO, B: MODO) -> Matrix:
    """``M = sum_j B_j p_j(N)``; the zero operator maps to the zero matrix."""
    if L.ell != B.ell:
        from .errors import DimensionMismatch
        raise DimensionMismatch("L and B have different sizes")
    N = companion(L)
    if not B:
        return Matrix.zeros(L.ell, L.field)
    return _combine(L.field, [N], B)[0]


# -- denominator-free evaluation ----------------------------------------------
#
# Normalising every intermediate element of K costs a gcd per operation. With
# N(lambda) = sum_k lambda^k N_k and a common denominator d (N_k = Nt_k / d),
# p_j = sum_k lambda^k Q_{j,k} / d^j where the Q are polynomial matrices:
#   Q_{j,k} = sum_i Q_{j-1,k-i} Nt_i + d Q'_{j-1,k} - (j-1) d' Q_{j-1,k}.
# Only the entries of the final M are reduced, and since their denominators
# are known products of small pieces, the reduction never needs a large gcd.

_NUM = PolyRing()


def _lcm_pieces(dens) -> Tuple[Poly, List[Poly]]:
    """Monic lcm of ``dens`` and pieces whose product it is."""
    e = Poly.const(1)
    pieces = []
    for q in dens:
        if q.is_constant():
            continue
        g = poly_gcd(e, q)
        new = q if g.is_constant() else q.divexact(g)
        if not new.is_constant():
            new = new.monic()
            pieces.append(new)
            e = e * new
    return e, pieces


def _clear(mats: List[Matrix]):
    """Common denominator ``d`` (with its pieces) and numerator matrices ``mats[k] * d``."""
    d, pieces = _lcm_pieces(x.den for A in mats for row in A.rows for x in row)
    out = [Matrix._make([[x.num * d.divexact(x.den) if x else _NUM.zero for x in row] for row in A.rows], _NUM)
           for A in mats]
    return d, pieces, out


def _clear_rows(mats: List[Matrix]):
    """Per-row denominators ``e_a`` (with pieces) and ``mats[k]`` with row ``a`` scaled by ``e_a``."""
    ell = mats[0].n
    es, pieces = [], []
    for a in range(ell):
        e, ps = _lcm_pieces(A[a, b].den for A in mats for b in range(ell))
        es.append(e)
        pieces.append(ps)
    out = [Matrix._make([[x.num * es[a].divexact(x.den) if x else _NUM.zero for x in row]
                         for a, row in enumerate(A.rows)], _NUM) for A in mats]
    return pieces, out


def _reduce(K, num: Poly, pieces: List[Poly]) -> FieldElement:
    """``num / prod(pieces)`` in lowest terms, cancelling piece by piece."""
    if not num:
        return K.zero
    den = Poly.const(1)
    for q in pieces:
        while not q.is_constant():
            g = poly_gcd(num, q)
            if g.is_constant():
                break
            num, q = num.divexact(g), q.divexact(g)
        if not q.is_constant():
            den = den * q.monic()
        else:
            num = num.scale(1 / q.constant_coeff())
    return FieldElement(K, num, den, _trusted=True)


def _combine(K, Ns: List[Matrix], B: MODO) -> List[Matrix]:
    """Coefficients (in lambda) of ``sum_j B_j p_j`` for ``N = sum_k lambda^k Ns[k]``."""
    ell = B.ell
    n = B.order
    d, d_pieces, Nt = _clear(Ns)
    e_pieces, Bt = _clear_rows(list(B.coeffs))
    dd = K.derive_poly(d)
    Q = [Matrix.identity(ell, _NUM)]
    d_pow = [Poly.const(1)]
    for _ in range(n):
        d_pow.append(d_pow[-1] * d)
    # acc[k] = sum_j Bt_j Q_{j,k} d^{n-j}
    acc = [Bt[0] * d_pow[n]]
    for j in range(1, n + 1):
        nxt = [Matrix.zeros(ell, _NUM) for _ in range(len(Q) + len(Nt) - 1)]
        for k, Qk in enumerate(Q):
            for i, Ni in enumerate(Nt):
                nxt[k + i] = nxt[k + i] + Qk * Ni
            step = Qk.map(K.derive_poly) * d
            if j > 1 and dd:
                step = step - Qk * (dd * (j - 1))
            nxt[k] = nxt[k] + step
        Q = nxt
        if Bt[j]:
            while len(acc) < len(Q):
                acc.append(Matrix.zeros(ell, _NUM))
            scale = d_pow[n - j]
            for k, Qk in enumerate(Q):
                acc[k] = acc[k] + Bt[j] * Qk * scale
    return [Matrix._make([[_reduce(K, K.reduce_poly(x), e_pieces[a] + d_pieces * n) for x in row]
                          for a, row in enumerate(A.rows)], K) for A in acc]


def dres(L: MODO, B: MODO):
    """Matrix differential resultant ``det M`` as an element of K."""
    return m_matrix(L, B).det()


# -- spectral version --------------------------------------------------------

def _lift(M: Matrix, ring: PolyRing) -> Matrix:
    return M.map(lambda x: Poly.const(x, ring.domain), ring)


def spectral_matrix(L: MODO, B: MODO) -> Matrix:
    """``M(lambda, mu)`` for the pair ``(L - lambda I, B - mu I)``."""
    A1inv = _leading_inverse(L)
    K = L.field
    ring = PolyRing(K)
    ell = L.ell
    if B:
        coeffs = _combine(K, [-(A1inv * L.coeff(0)), A1inv], B)
    else:
        coeffs = []
    rows = []
    for a in range(ell):
        row = []
        for b in range(ell):
            items = [(((LAM, k),) if k else (), C[a, b]) for k, C in enumerate(coeffs)]
            if a == b:
                items.append((((MU, 1),), K.convert(-1)))
            row.append(Poly.from_terms(items, K))
        rows.append(row)
    return Matrix._make(rows, ring)


def spectral_poly(L: MODO, B: MODO) -> Poly:
    """``det M(lambda, mu)`` as a polynomial over K."""
    return spectral_matrix(L, B).det()


def _constant_coefficients(f: Poly) -> bool:
    return all(c.is_constant() for c in f.terms.values())


def _to_gaussian(f: Poly) -> Optional[Poly]:
    """``f`` with coefficients moved to Q(i) if all of them lie there."""
    terms = {}
    for m, c in f.terms.items():
        g = c.to_gaussian()
        if g is None:
            return None
        terms[m] = g
    return Poly(terms)


@dataclass
class CurveReport:
    f: Poly
    f_over_K: Poly
    ell: int
    order_B: int
    commutator_is_zero: bool
    constancy_verified: bool
    degree_mu: int
    degree_lambda: int
    mu_leading_coeff: object
    leading_lambda_coeff: object
    expected_lambda_coeff: object
    degree_structure_ok: bool
    warnings: List[str] = field(default_factory=list)

    @property
    def over_gaussian(self) -> bool:
        return self.f.domain is not self.f_over_K.domain


def spectral_curve(L: MODO, B: MODO, check_commuting: bool = True) -> CurveReport:
    """Spectral curve ``f = det M(lambda, mu)`` with its structural checks.

    For a commuting pair the coefficients of ``f`` must be differential
    constants; a violation raises :class:`NonconstantCoefficients`. A
    non-commuting pair yields the polynomial over K with a warning.
    """
    fK = spectral_poly(L, B)
    commuting = commutes(L, B) if check_commuting else True
    constant = _constant_coefficients(fK)
    warnings = []
    if commuting and not constant:
        raise NonconstantCoefficients("spectral polynomial of a commuting pair has non-constant coefficients")
    if not commuting:
        warnings.append("[L, B] is not zero; the polynomial is over K and not a spectral curve")
    f = _to_gaussian(fK) if constant else None
    if f is None:
        f = fK
    ell = L.ell
    n = max(B.order, 0)
    K = L.field
    dmu = fK.degree(MU)
    dlam = fK.degree(LAM)
    mu_lc = fK.coeff(((MU, ell),))
    lam_mono = ((LAM, n * ell),) if n * ell else ()
    lam_lc = fK.coeff(lam_mono)
    if B:
        Bn = B.coeff(B.order)
        expected = Bn.det() * L.coeff(1).inverse().det() ** n
    else:
        expected = K.zero
    if n == 0:
        # with B of order 0 the lambda^0 mu^0 coefficient mixes in mu-free terms
        lam_ok = dlam <= 0
    else:
        lam_ok = (lam_lc == expected) and dlam <= n * ell and ((dlam == n * ell) == bool(expected))
    ok = dmu == ell and mu_lc == (-1) ** ell and lam_ok
    if not ok:
        warnings.append("degree structure differs from the expected (ell, n*ell) shape")
    return CurveReport(
        f=f, f_over_K=fK, ell=ell, order_B=B.order, commutator_is_zero=commuting,
        constancy_verified=constant, degree_mu=dmu, degree_lambda=dlam,
        mu_leading_coeff=mu_lc, leading_lambda_coeff=lam_lc,
        expected_lambda_coeff=expected, degree_structure_ok=ok, warnings=warnings,
    )
