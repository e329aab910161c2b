"""Burchnall-Chaundy polynomials and the generator of the BC ideal.

A polynomial ``g(lambda, mu)`` with constant coefficients is a BC
polynomial of a commuting pair ``(L, B)`` when ``g(L, B) = 0``. For an
order-one ``L`` with invertible leading coefficient the spectral curve ``f``
is one, and the ideal of all of them is generated by ``F = prod h_i^r_i``
where ``h_i`` are the irreducible factors of ``f`` (multiplicity
``sigma_i``) and ``r_i`` is the least exponent that keeps the product a BC
polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .dres import CurveReport, spectral_curve
from .errors import ConjectureViolation, JointMinimalityFailure, NoncommutingPair
from .matrix import Matrix
from .modo import MODO, commutes, op_eval_poly
from .poly import Poly
from .polyring import LAM, MU, Factorization, bp_factor


def _require_commuting(L: MODO, B: MODO):
    if not commutes(L, B):
        raise NoncommutingPair("[L, B] is not zero")


def is_bc(g: Poly, L: MODO, B: MODO) -> bool:
    _require_commuting(L, B)
    if not g:
        return True
    return not op_eval_poly(g, L, B)


def _product(factors: Sequence[Tuple[Poly, int]], domain) -> Poly:
    out = Poly.const(1, domain)
    for h, e in factors:
        out = out * h ** e
    return out


def minimal_exponents(fac: Factorization, L: MODO, B: MODO) -> List[int]:
    """Least ``r_i`` per factor with the other factors held at ``sigma``.

    Evaluation is a ring homomorphism, so raising any exponent keeps a BC
    polynomial a BC polynomial; the coordinate searches are independent and
    their combination is verified at the end.
    """
    hs = [h for h, _ in fac.factors]
    sigmas = [s for _, s in fac.factors]
    domain = hs[0].domain if hs else None
    rs = []
    for i, (h, s) in enumerate(fac.factors):
        r = s
        for cand in range(1, s):
            exps = list(sigmas)
            exps[i] = cand
            if is_bc(_product(list(zip(hs, exps)), domain), L, B):
                r = cand
                break
        rs.append(r)
    if hs and not is_bc(_product(list(zip(hs, rs)), domain), L, B):
        raise JointMinimalityFailure(f"product with exponents {rs} is not a BC polynomial")
    return rs


def detect_polynomial_in_L(L: MODO, B: MODO) -> Optional[Poly]:
    """``R`` with ``B = R(L)`` if one exists with constant coefficients, else None.

    Since ``L`` has order one, ``R`` has degree ``ord B``; its coefficients are
    fixed from the top down by comparing leading coefficients of
    ``B - sum c_k L^k`` against ``A1^k``.
    """
    if L.order != 1 or not B:
        return None
    K = L.field
    n = B.order
    A1 = L.coeff(1)
    powers = [MODO.identity(L.ell, K)]
    for _ in range(n):
        powers.append(powers[-1] * L)
    rest = B
    coeffs = {}
    for k in range(n, -1, -1):
        if not rest or rest.order < k:
            continue
        if rest.order > k:
            return None
        lead = rest.coeff(k)
        target = powers[k].coeff(k)
        c = _scalar_ratio(lead, target)
        if c is None or not c.is_constant():
            return None
        coeffs[k] = c
        rest = rest - powers[k] * c
    if rest:
        return None
    terms = {}
    for k, c in coeffs.items():
        g = c.to_gaussian()
        if g is None:
            return None
        terms[((LAM, k),) if k else ()] = g
    return Poly({m: c for m, c in terms.items() if c})


def _scalar_ratio(A: Matrix, T: Matrix):
    """``c`` with ``A = c*T``, or None."""
    c = None
    for ra, rt in zip(A.rows, T.rows):
        for a, t in zip(ra, rt):
            if not t:
                if a:
                    return None
                continue
            q = a / t
            if c is None:
                c = q
            elif q != c:
                return None
    return c


@dataclass
class BCReport:
    f: Poly
    f_is_bc: bool
    curve: CurveReport
    f_red: Optional[Poly] = None
    factors: List[Tuple[Poly, int, int]] = field(default_factory=list)
    F: Optional[Poly] = None
    decomposition: List[str] = field(default_factory=list)
    trivial_case: Optional[Poly] = None
    factorization_source: str = "computed"
    residual: Optional[MODO] = None


def _descriptor(h: Poly, r: int) -> str:
    from .render import render_bivar
    base = render_bivar(h)
    return f"C[lambda,mu]/({base})" if r == 1 else f"C[lambda,mu]/(({base})^{r})"


def bc_generator(L: MODO, B: MODO, user: Optional[Factorization] = None,
                 halt_on_violation: bool = True) -> BCReport:
    """Run the generator algorithm: curve, BC test, factor, minimise exponents.

    If ``f(L, B)`` is not zero the pair is a counterexample to the expectation
    that the spectral curve is always a BC polynomial; this raises
    :class:`ConjectureViolation` (carrying the residue) unless
    ``halt_on_violation`` is False, in which case the partial report is
    returned.
    """
    _require_commuting(L, B)
    curve = spectral_curve(L, B)
    f = curve.f
    residual = op_eval_poly(f, L, B)
    report = BCReport(f=f, f_is_bc=not residual, curve=curve)
    if residual:
        report.residual = residual
        if halt_on_violation:
            raise ConjectureViolation("f(L, B) is not the zero operator", operator=residual, report=report)
        return report
    fac = bp_factor(f, user)
    report.factorization_source = fac.source
    rs = minimal_exponents(fac, L, B)
    hs = [h for h, _ in fac.factors]
    report.factors = [(h, s, r) for (h, s), r in zip(fac.factors, rs)]
    report.f_red = fac.reduced(f.domain)
    report.F = _product(list(zip(hs, rs)), f.domain)
    report.decomposition = [_descriptor(h, r) for h, r in zip(hs, rs)]
    R = detect_polynomial_in_L(L, B)
    if R is not None:
        report.trivial_case = Poly.var(MU) - R
    return report
