"""The constant polynomial ring C[lambda, mu] and helpers around it.

Bivariate polynomials are :class:`~matdres.poly.Poly` instances in the two
variables :data:`LAM` and :data:`MU`. Their coefficient domain is normally
Q(i) (:data:`~matdres.gaussian.QI`); a spectral curve whose coefficients are
differential constants outside Q(i) (for instance the first integrals of the
symbolic AKNS pair) is kept over the differential field itself, and every
routine here works unchanged on it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Any, Callable, List, Optional, Sequence, Tuple

import mpmath
from mpmath.libmp import NoConvergence

from .errors import InvalidUserFactorization, NoncommutingArguments, UnsupportedFactorization
from .gaussian import GaussianRational, QI
from .poly import Poly, content, poly_gcd, primitive_part

LAM = 0
MU = 1
NAMES = {LAM: "lambda", MU: "mu"}


def bivar_name(v: int) -> str:
    return NAMES[v]


def lam(domain=QI) -> Poly:
    return Poly.var(LAM, domain)


def mu(domain=QI) -> Poly:
    return Poly.var(MU, domain)


class PolyRing:
    """Ring contract for matrices with entries in ``domain[lambda, mu]``."""

    def __init__(self, domain=QI):
        self.domain = domain
        self.zero = Poly({}, domain)
        self.one = Poly.const(1, domain)

    def convert(self, x) -> Poly:
        if isinstance(x, Poly):
            if x.domain is not self.domain:
                raise TypeError("polynomial over a different domain")
            return x
        return Poly.const(x, self.domain)

    def exact_div(self, a: Poly, b: Poly) -> Poly:
        return a.divexact(b)

    def gen(self, v: int) -> Poly:
        return Poly.var(v, self.domain)

    def __repr__(self):
        return f"PolyRing({self.domain!r})[lambda, mu]"


# -- arithmetic ---------------------------------------------------------------

def bp_arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def bp_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; raises ``ValueError`` when both inputs are zero."""
    return poly_gcd(a, b)


def bp_sqrt(p: Poly) -> Optional[Poly]:
    """Square root of a polynomial in ``lambda`` alone, or None."""
    if p.variables() - {LAM}:
        raise ValueError("bp_sqrt expects a polynomial in lambda only")
    return p.sqrt()


# -- factorizations -----------------------------------------------------------

@dataclass
class Factorization:
    unit: Any
    factors: List[Tuple[Poly, int]] = field(default_factory=list)
    source: str = "computed"

    def expand(self, domain=None) -> Poly:
        domain = domain or (self.factors[0][0].domain if self.factors else QI)
        out = Poly.const(self.unit, domain)
        for h, m in self.factors:
            out = out * h ** m
        return out

    def reduced(self, domain=None) -> Poly:
        """Product of the distinct factors (the square-free part, monic)."""
        domain = domain or (self.factors[0][0].domain if self.factors else QI)
        out = Poly.const(1, domain)
        for h, _ in self.factors:
            out = out * h
        return out


def _factor_sort_key(h: Poly):
    from .poly import mono_key
    return (h.total_degree(), [(mono_key(m), h.domain.sort_key(c)) for m, c in h.iter_sorted()])


def _yun(f: Poly, var: int) -> List[Tuple[Poly, int]]:
    """Square-free decomposition of ``f``, primitive with positive degree in ``var``."""
    fp = f.diff(var)
    a = poly_gcd(f, fp)
    b = f.divexact(a)
    c = fp.divexact(a)
    d = c - b.diff(var)
    out = []
    i = 1
    while b.degree(var) > 0:
        a = poly_gcd(b, d)
        b = b.divexact(a)
        c = d.divexact(a)
        d = c - b.diff(var)
        if a.degree(var) > 0:
            out.append((a, i))
        i += 1
    return out


def bp_squarefree(f: Poly) -> Factorization:
    """``f = unit * prod g_i^i`` with monic, square-free, pairwise coprime g_i."""
    if not f:
        raise ValueError("square-free decomposition of the zero polynomial")
    unit = f.lc()
    f1 = f.monic()
    if f1.is_constant():
        return Factorization(unit, [])
    parts: dict = {}
    c = content(f1, MU) if f1.degree(MU) > 0 else f1
    pp = f1.divexact(c)
    if pp.degree(MU) > 0:
        for g, i in _yun(pp, MU):
            parts[i] = parts[i] * g if i in parts else g
    if not c.is_constant():
        for g, i in _yun(c, LAM):
            parts[i] = parts[i] * g if i in parts else g
    factors = sorted(((g.monic(), i) for i, g in parts.items()), key=lambda t: (t[1], _factor_sort_key(t[0])))
    return Factorization(unit, factors, "squarefree")


def _horner(coeffs: Sequence[GaussianRational], x: GaussianRational) -> GaussianRational:
    acc = GaussianRational(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def gaussian_roots(p: Poly, var: int = LAM) -> List[GaussianRational]:
    """All distinct roots in Q(i) of a univariate polynomial over Q(i).

    Roots are located numerically at high precision and then confirmed
    exactly: for Gaussian-integer coefficients any root in Q(i) has the form
    g/a_n with g a Gaussian integer (a_n the leading coefficient), so
    rounding a_n*z recovers it.
    """
    if p.variables() - {var}:
        raise ValueError("gaussian_roots expects a univariate polynomial")
    d = p.degree(var)
    if d < 1:
        return []
    # repeated roots slow the numerical search down; the roots are the same
    p = p.divexact(poly_gcd(p, p.diff(var)))
    d = p.degree(var)
    uni = p.to_univariate(var)
    coeffs = [uni[k].constant_coeff() if k in uni else GaussianRational(0) for k in range(d, -1, -1)]
    den = 1
    for c in coeffs:
        den = lcm(den, c.re.denominator, c.im.denominator)
    ints = [(int(c.re * den), int(c.im * den)) for c in coeffs]
    an = GaussianRational(*ints[0])
    roots: List[GaussianRational] = []
    if d == 1:
        return [-coeffs[1] / coeffs[0]]
    with mpmath.workdps(60):
        approx = None
        for steps in (200, 2000):
            try:
                approx = mpmath.polyroots([mpmath.mpc(a, b) for a, b in ints], maxsteps=steps, extraprec=200)
                break
            except NoConvergence:
                continue
        if approx is None:
            raise UnsupportedFactorization("root isolation did not converge")
        for z in approx:
            w = mpmath.mpc(ints[0][0], ints[0][1]) * z
            g = GaussianRational(int(mpmath.nint(w.real)), int(mpmath.nint(w.imag)))
            r = g / an
            if r not in roots and not _horner(coeffs, r):
                roots.append(r)
    return roots


def _split_quartic(q: Poly, var: int) -> Optional[Tuple[Poly, Poly]]:
    """Split a root-free monic quartic over Q(i) into two quadratics, if possible."""
    uni = q.to_univariate(var)
    cf = [uni[k].constant_coeff() if k in uni else GaussianRational(0) for k in range(4)]
    d, c, b, a = cf
    x = Poly.var(var)
    y = Poly.var(var)
    resolvent = y ** 3 - b * y ** 2 + (a * c - 4 * d) * y - (a * a * d - 4 * b * d + c * c)
    for yy in gaussian_roots(resolvent, var):
        s1 = (a * a - 4 * (b - yy)).sqrt()
        s2 = (yy * yy - 4 * d).sqrt()
        if s1 is None or s2 is None:
            continue
        p1, r1 = (a + s1) / 2, (a - s1) / 2
        for q1, s_1 in (((yy + s2) / 2, (yy - s2) / 2), ((yy - s2) / 2, (yy + s2) / 2)):
            f1 = x ** 2 + p1 * x + q1
            f2 = x ** 2 + r1 * x + s_1
            if f1 * f2 == q:
                return f1, f2
    return None


def _factor_univariate(c: Poly, var: int) -> List[Poly]:
    """Irreducible monic factors of a square-free univariate polynomial."""
    d = c.degree(var)
    if d <= 1:
        return [c.monic()] if d == 1 else []
    if c.domain is not QI:
        if d == 2:
            return _split_quadratic(c, var)
        raise UnsupportedFactorization(f"cannot factor a degree-{d} polynomial over the differential field")
    out = []
    rest = c.monic()
    for r in gaussian_roots(rest, var):
        lin = Poly.var(var) - r
        out.append(lin)
        rest = rest.divexact(lin)
    dr = rest.degree(var)
    if dr in (2, 3):
        out.append(rest)
    elif dr == 4:
        split = _split_quartic(rest, var)
        out.extend(split if split else [rest])
    elif dr > 4:
        raise UnsupportedFactorization(f"root-free factor of degree {dr} in {NAMES.get(var, var)} is out of scope")
    return out


def _split_quadratic(pp: Poly, var: int) -> List[Poly]:
    """Factor ``a*var^2 + b*var + c`` (primitive in ``var``) via its discriminant."""
    uni = pp.to_univariate(var)
    zero = pp.zero()
    a, b, c = uni[2], uni.get(1, zero), uni.get(0, zero)
    disc = b * b - a * c * 4
    s = disc.sqrt()
    if s is None:
        return [pp.monic()]
    v = Poly.var(var, pp.domain)
    two_a_v = a * v * 2
    h1 = primitive_part(two_a_v + b - s, var).monic() if var == MU else (two_a_v + b - s).monic()
    h2 = primitive_part(two_a_v + b + s, var).monic() if var == MU else (two_a_v + b + s).monic()
    return [h1, h2]


def _factor_squarefree(g: Poly) -> List[Poly]:
    if g.degree(MU) <= 0:
        return _factor_univariate(g, LAM)
    c = content(g, MU)
    pp = g.divexact(c)
    out = _factor_univariate(c, LAM) if not c.is_constant() else []
    d = pp.degree(MU)
    if d == 1:
        out.append(pp.monic())
    elif d == 2:
        out.extend(_split_quadratic(pp, MU))
    else:
        raise UnsupportedFactorization(
            f"square-free factor of degree {d} in mu needs a user-supplied factorization")
    return out


def verify_user_factorization(f: Poly, user: Factorization) -> Factorization:
    """Check ``unit * prod h^m == f`` exactly and normalise factors to monic."""
    unit = f.domain.convert(user.unit) if f.domain is not QI else GaussianRational.coerce(user.unit)
    factors = []
    for h, m in user.factors:
        if m < 1 or h.total_degree() < 1:
            raise InvalidUserFactorization("factors must be non-constant with positive multiplicity")
        if h.domain is not f.domain:
            h = h.map_coeffs(f.domain.convert, f.domain)
        unit = unit * h.lc() ** m
        factors.append((h.monic(), m))
    monics = [h for h, _ in factors]
    if len(set(monics)) != len(monics):
        raise InvalidUserFactorization("factors must be pairwise non-associate")
    result = Factorization(unit, factors, "user")
    if result.expand(f.domain) != f:
        raise InvalidUserFactorization("supplied factorization does not reconstruct the polynomial")
    return result


def bp_factor(f: Poly, user: Optional[Factorization] = None) -> Factorization:
    """Factor ``f`` within the supported class, or verify a user factorization.

    Supported: square-free parts of mu-degree <= 2 (a mu-quadratic splits
    exactly when its discriminant is a square in domain[lambda]) and
    lambda-only parts over Q(i) whose root-free remainder has degree <= 4.
    """
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if user is not None:
        return verify_user_factorization(f, user)
    sq = bp_squarefree(f)
    out = []
    for g, i in sq.factors:
        for h in _factor_squarefree(g):
            out.append((h, i))
    out.sort(key=lambda t: (_factor_sort_key(t[0]), t[1]))
    return Factorization(sq.unit, out, "computed")


# -- evaluation at a commuting pair ---------------------------------------------

@dataclass(frozen=True)
class EvalRing:
    """What :func:`bp_eval_commuting` needs from the target ring."""

    one: Any
    zero: Any
    scale: Callable[[Any, Any], Any] = lambda c, x: c * x
    commutator: Optional[Callable[[Any, Any], Any]] = None
    is_zero: Callable[[Any], bool] = lambda x: not x


SCALARS = EvalRing(one=GaussianRational(1), zero=GaussianRational(0))


def bp_eval_commuting(g: Poly, X, Y, ring: EvalRing = SCALARS):
    """``sum a_ij X^i Y^j`` by Horner in ``Y`` with cached powers of ``X``."""
    if ring.commutator is not None and not ring.is_zero(ring.commutator(X, Y)):
        raise NoncommutingArguments("arguments do not commute")
    if not g:
        return ring.zero
    uni = g.to_univariate(MU)
    powers = [ring.one]
    for _ in range(max(0, g.degree(LAM))):
        powers.append(powers[-1] * X)

    def in_x(a: Poly):
        acc = ring.zero
        for m, c in a.iter_sorted():
            e = m[0][1] if m else 0
            acc = acc + ring.scale(c, powers[e])
        return acc

    top = max(uni)
    result = in_x(uni[top])
    for j in range(top - 1, -1, -1):
        result = result * Y
        if j in uni:
            result = result + in_x(uni[j])
    return result
