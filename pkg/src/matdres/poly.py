"""Sparse multivariate polynomials over an exact field.

A monomial is a tuple of ``(var, exp)`` pairs sorted by variable id with
positive exponents; the empty tuple is the unit monomial. Variables are
small integers whose meaning (``lambda``/``mu``, a jet, a generator) is
assigned by the caller. Coefficients live in a *domain* object exposing
``zero``, ``one``, ``convert`` and ``sqrt``; both :data:`matdres.gaussian.QI`
and :class:`matdres.difffield.DiffField` qualify.

The working term order is lexicographic with the highest variable id most
significant. For the bivariate ring (``lambda`` = 0, ``mu`` = 1) this puts
``mu`` first, which is the order used for canonical output.
"""
from __future__ import annotations

from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from .gaussian import QI

Monomial = Tuple[Tuple[int, int], ...]
ONE_MONO: Monomial = ()


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    if i < la:
        out.extend(a[i:])
    if j < lb:
        out.extend(b[j:])
    return tuple(out)


def mono_div(a: Monomial, b: Monomial) -> Optional[Monomial]:
    """``a / b`` if ``b`` divides ``a``, else None."""
    if not b:
        return a
    da = dict(a)
    for v, e in b:
        ea = da.get(v, 0)
        if ea < e:
            return None
        if ea == e:
            del da[v]
        else:
            da[v] = ea - e
    return tuple(sorted(da.items()))


def mono_pow(a: Monomial, k: int) -> Monomial:
    return tuple((v, e * k) for v, e in a)


def mono_key(m: Monomial):
    """Sort key realising lex order with the highest variable dominant."""
    return tuple(reversed(m))


def mono_degree(m: Monomial, var: int) -> int:
    for v, e in m:
        if v == var:
            return e
    return 0


def mono_without(m: Monomial, var: int) -> Monomial:
    return tuple(p for p in m if p[0] != var)


class Poly:
    __slots__ = ("terms", "domain", "_lead", "_hash")

    def __init__(self, terms: Optional[Dict[Monomial, object]] = None, domain=QI):
        # callers guarantee that stored coefficients are nonzero
        self.terms = terms if terms is not None else {}
        self.domain = domain
        self._lead = None
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c, domain=QI) -> "Poly":
        c = domain.convert(c)
        return cls({ONE_MONO: c} if c else {}, domain)

    @classmethod
    def var(cls, v: int, domain=QI, exp: int = 1) -> "Poly":
        return cls({((v, exp),) if exp else ONE_MONO: domain.one}, domain)

    @classmethod
    def from_terms(cls, items: Iterable[Tuple[Monomial, object]], domain=QI) -> "Poly":
        terms: Dict[Monomial, object] = {}
        for m, c in items:
            c = domain.convert(c)
            if not c:
                continue
            prev = terms.get(m)
            if prev is None:
                terms[m] = c
            else:
                s = prev + c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return cls(terms, domain)

    def _new(self, terms) -> "Poly":
        return Poly(terms, self.domain)

    def zero(self) -> "Poly":
        return Poly({}, self.domain)

    def one(self) -> "Poly":
        return Poly({ONE_MONO: self.domain.one}, self.domain)

    # -- predicates and accessors -----------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONO in self.terms)

    def constant_coeff(self):
        return self.terms.get(ONE_MONO, self.domain.zero)

    def coeff(self, m: Monomial):
        return self.terms.get(m, self.domain.zero)

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    def degree(self, var: int) -> int:
        """Degree in ``var``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_degree(m, var) for m in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e for _, e in m) for m in self.terms)

    def leading(self) -> Tuple[Monomial, object]:
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            m = max(self.terms, key=mono_key)
            self._lead = (m, self.terms[m])
        return self._lead

    def lc(self):
        return self.leading()[1]

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        c = self.lc()
        if c == self.domain.one:
            return self
        inv = self.domain.one / c
        return self._new({m: a * inv for m, a in self.terms.items()})

    def iter_sorted(self) -> Iterator[Tuple[Monomial, object]]:
        for m in sorted(self.terms, key=mono_key, reverse=True):
            yield m, self.terms[m]

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.domain is not self.domain:
                raise TypeError("polynomials over different coefficient domains")
            return other
        return Poly.const(other, self.domain)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            prev = terms.get(m)
            if prev is None:
                terms[m] = c
            else:
                s = prev + c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                c = self.domain.convert(other)
            except TypeError:
                return NotImplemented
            return self.scale(c)
        if other.domain is not self.domain:
            raise TypeError("polynomials over different coefficient domains")
        if not self.terms or not other.terms:
            return self.zero()
        if len(other.terms) == 1 and ONE_MONO in other.terms:
            return self.scale(other.terms[ONE_MONO])
        if len(self.terms) == 1 and ONE_MONO in self.terms:
            return other.scale(self.terms[ONE_MONO])
        acc: Dict[Monomial, object] = {}
        get = acc.get
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_mul(ma, mb)
                prev = get(m)
                acc[m] = ca * cb if prev is None else prev + ca * cb
        return self._new({m: c for m, c in acc.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        if not c:
            return self.zero()
        if c == self.domain.one:
            return self
        out = {}
        for m, a in self.terms.items():
            ac = a * c
            if ac:
                out[m] = ac
        return self._new(out)

    def mul_monomial(self, mono: Monomial, c=None) -> "Poly":
        if c is None:
            return self._new({mono_mul(m, mono): a for m, a in self.terms.items()})
        return self._new({mono_mul(m, mono): a * c for m, a in self.terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result, base = self.one(), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        try:
            return self.terms == Poly.const(other, self.domain).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        inner = " + ".join(f"({c})*{m}" for m, c in self.iter_sorted()) or "0"
        return f"Poly[{inner}]"

    # -- structural operations --------------------------------------------
    def map_coeffs(self, fn: Callable, domain=None) -> "Poly":
        domain = domain or self.domain
        out = {}
        for m, c in self.terms.items():
            c2 = fn(c)
            if c2:
                out[m] = c2
        return Poly(out, domain)

    def to_univariate(self, var: int) -> Dict[int, "Poly"]:
        """Split as ``sum_k c_k * var^k``; returns ``{k: c_k}``."""
        parts: Dict[int, Dict[Monomial, object]] = {}
        for m, c in self.terms.items():
            k = mono_degree(m, var)
            rest = mono_without(m, var) if k else m
            parts.setdefault(k, {})[rest] = c
        return {k: Poly(t, self.domain) for k, t in parts.items()}

    @staticmethod
    def from_univariate(coeffs: Mapping[int, "Poly"], var: int, domain=QI) -> "Poly":
        terms: Dict[Monomial, object] = {}
        for k, c in coeffs.items():
            if not c:
                continue
            vm: Monomial = ((var, k),) if k else ONE_MONO
            for m, a in c.terms.items():
                terms[mono_mul(m, vm)] = a
        return Poly(terms, domain)

    def diff(self, var: int) -> "Poly":
        """Formal partial derivative."""
        out = {}
        for m, c in self.terms.items():
            k = mono_degree(m, var)
            if not k:
                continue
            nm = tuple((v, e - 1 if v == var else e) for v, e in m)
            out[tuple(p for p in nm if p[1])] = c * self.domain.convert(k)
        return self._new({m: c for m, c in out.items() if c})

    def derive(self) -> "Poly":
        """Coefficientwise derivation (the variables are treated as constants)."""
        return self.map_coeffs(lambda c: c.derive())

    def subs(self, mapping: Mapping[int, "Poly"]) -> "Poly":
        """Substitute polynomials (same domain) for variables."""
        if not mapping or not (self.variables() & set(mapping)):
            return self
        powcache: Dict[Tuple[int, int], Poly] = {}
        result = self.zero()
        keep: Dict[Monomial, object] = {}
        for m, c in self.terms.items():
            kept = []
            factor = None
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    p = powcache.get(key)
                    if p is None:
                        p = mapping[v] ** e
                        powcache[key] = p
                    factor = p if factor is None else factor * p
                else:
                    kept.append((v, e))
            if factor is None:
                prev = keep.get(m)
                keep[m] = c if prev is None else prev + c
            else:
                result = result + factor.mul_monomial(tuple(kept), c)
        return result + self._new({m: c for m, c in keep.items() if c})

    def evaluate(self, values: Mapping[int, object]) -> "Poly":
        """Substitute domain constants for some variables."""
        return self.subs({v: Poly.const(c, self.domain) for v, c in values.items()})

    # -- division ---------------------------------------------------------
    def div_if_exact(self, q: "Poly") -> Optional["Poly"]:
        if not q.terms:
            raise ZeroDivisionError("polynomial division by zero")
        if not self.terms:
            return self
        if q.is_constant():
            return self.scale(self.domain.one / q.terms[ONE_MONO])
        lm_q, lc_q = q.leading()
        inv = self.domain.one / lc_q
        r = dict(self.terms)
        quot: Dict[Monomial, object] = {}
        qterms = list(q.terms.items())
        while r:
            m = max(r, key=mono_key)
            t = mono_div(m, lm_q)
            if t is None:
                return None
            coef = r[m] * inv
            quot[t] = coef
            for mq, cq in qterms:
                mm = mono_mul(t, mq)
                prev = r.get(mm)
                val = -(coef * cq) if prev is None else prev - coef * cq
                if val:
                    r[mm] = val
                else:
                    r.pop(mm, None)
        return self._new(quot)

    def divexact(self, q: "Poly") -> "Poly":
        res = self.div_if_exact(q)
        if res is None:
            raise ValueError("polynomial division is not exact")
        return res

    def sqrt(self) -> Optional["Poly"]:
        """Exact square root if the polynomial is a perfect square."""
        if not self.terms:
            return self
        m, c = self.leading()
        if any(e % 2 for _, e in m):
            return None
        sc = self.domain.sqrt(c)
        if sc is None:
            return None
        bounds = {}
        for v in self.variables():
            d = self.degree(v)
            if d % 2:
                return None
            bounds[v] = d // 2
        half = tuple((v, e // 2) for v, e in m)
        root = self._new({half: sc})
        r = self - root * root
        prev = half
        two_sc = sc + sc
        while r:
            mr, cr = r.leading()
            t = mono_div(mr, half)
            if t is None or mono_key(t) >= mono_key(prev):
                return None
            if any(e > bounds.get(v, 0) for v, e in t):
                return None
            term = self._new({t: cr / two_sc})
            r = r - (root + root) * term - term * term
            root = root + term
            prev = t
        return root


# -- gcd machinery ----------------------------------------------------------

def content(p: Poly, var: int) -> Poly:
    """Monic gcd of the coefficients of ``p`` viewed as a polynomial in ``var``."""
    coeffs = sorted(p.to_univariate(var).values(), key=lambda c: len(c.terms))
    g: Optional[Poly] = None
    for c in coeffs:
        g = c.monic() if g is None else poly_gcd(g, c)
        if g.is_constant():
            return p.one()
    return g if g is not None else p.zero()


def primitive_part(p: Poly, var: int) -> Poly:
    if not p:
        return p
    return p.divexact(content(p, var))


def prem(a: Poly, b: Poly, var: int) -> Poly:
    """Pseudo-remainder of ``a`` by ``b`` in ``var`` (up to a factor lc(b)^k)."""
    db = b.degree(var)
    ub = b.to_univariate(var)
    lcb = ub[db]
    r = a
    while r and r.degree(var) >= db:
        ur = r.to_univariate(var)
        dr = max(ur)
        lcr = ur[dr]
        shift: Monomial = ((var, dr - db),) if dr > db else ONE_MONO
        r = r * lcb - (b * lcr).mul_monomial(shift)
    return r


# A prime p = 1 (mod 4) and a square root of -1 modulo p, giving a ring map
# Z[i] -> GF(p) used to certify coprimality cheaply.
_P = 2305843009213693973
_SQRT_M1 = 1035093963448091331


def _modp(c) -> Optional[int]:
    if c.d % _P == 0:
        return None
    return (c.a + c.b * _SQRT_M1) * pow(c.d, -1, _P) % _P


def _univariate_modp(p: Poly, var: int, point: Dict[int, int]) -> Optional[List[int]]:
    """Image of ``p`` in GF(p)[var] with the other variables set to ``point``."""
    out = [0] * (p.degree(var) + 1)
    for m, c in p.terms.items():
        v = _modp(c)
        if v is None:
            return None
        e = 0
        for w, k in m:
            if w == var:
                e = k
            else:
                v = v * pow(point[w], k, _P) % _P
        out[e] = (out[e] + v) % _P
    return out


def _gcd_degree_modp(f: List[int], g: List[int]) -> int:
    def trim(h):
        while h and not h[-1]:
            h.pop()
        return h

    f, g = trim(list(f)), trim(list(g))
    while g:
        inv = pow(g[-1], -1, _P)
        while len(f) >= len(g):
            q = f[-1] * inv % _P
            shift = len(f) - len(g)
            for i, c in enumerate(g):
                f[shift + i] = (f[shift + i] - q * c) % _P
            trim(f)
            if not f:
                break
        f, g = g, f
    return len(f) - 1


def _coprime_modp(a: Poly, b: Poly) -> bool:
    """True only if ``gcd(a, b)`` is certainly constant (False means unknown).

    For each shared variable the polynomials are specialised at a fixed point
    and reduced modulo p. When the leading coefficients survive, the degree of
    the image gcd bounds the degree of the true gcd from above (Gauss's lemma
    over Z[i]), so degree 0 in every shared variable certifies coprimality.
    """
    if a.domain is not QI or b.domain is not QI:
        return False
    va, vb = a.variables(), b.variables()
    point = {w: (7919 * w + 104729) % _P for w in va | vb}
    for v in va & vb:
        fa, fb = _univariate_modp(a, v, point), _univariate_modp(b, v, point)
        if fa is None or fb is None or not fa[-1] or not fb[-1]:
            return False
        if _gcd_degree_modp(fa, fb) > 0:
            return False
    return True


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (leading coefficient 1 in the working term order)."""
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    if a.is_constant() or b.is_constant():
        return a.one()
    if _coprime_modp(a, b):
        return a.one()
    va, vb = a.variables(), b.variables()
    var = max(va | vb)
    if var not in va:
        return poly_gcd(a, content(b, var))
    if var not in vb:
        return poly_gcd(content(a, var), b)
    ca, cb = content(a, var), content(b, var)
    c = poly_gcd(ca, cb)
    pa, pb = a.divexact(ca).monic(), b.divexact(cb).monic()
    if pa.degree(var) < pb.degree(var):
        pa, pb = pb, pa
    while True:
        r = prem(pa, pb, var)
        if not r:
            g = primitive_part(pb, var)
            break
        if r.degree(var) == 0:
            g = a.one()
            break
        # over a field coefficient domain the content is 1, so also normalise the
        # leading coefficient to keep the remainder sequence from exploding
        pa, pb = pb, primitive_part(r, var).monic()
    return (c * g).monic()
