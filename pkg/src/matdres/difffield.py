"""Differential coefficient fields.

Two backends share one element type:

* ``ratfunc``: Q(i)(t) with a prescribed derivative ``t' = d(t)``, a
  polynomial in ``t`` (``x' = 1`` gives C(x); ``t' = 2i t`` models
  C(e^{2ix})).
* ``diffpoly``: rational functions in jet variables ``u, u', u'', ...``
  of finitely many differential indeterminates, modulo rewrite rules that
  solve for a top jet (``u'' -> -2*u^2*v``). Elements are kept fully
  rewritten, so the field is the rational function field in the
  irreducible jets and the zero test is structural.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .errors import ConfigError, DivisionByZero
from .gaussian import GaussianRational, QI
from .poly import ONE_MONO, Poly, poly_gcd

RATFUNC = "ratfunc"
DIFFPOLY = "diffpoly"

_EXACT = (int, Fraction, GaussianRational)


class DiffField:
    """A differential field K; also serves as a coefficient domain for Poly."""

    def __init__(self, backend: str, *, gen: str = "x", gen_derivative: Optional[Poly] = None,
                 symbols: Sequence[str] = (), rules: Optional[Mapping[Tuple[str, int], Poly]] = None):
        if backend not in (RATFUNC, DIFFPOLY):
            raise ValueError(f"unknown backend {backend!r}")
        self.backend = backend
        self.gen = gen
        self.symbols: Tuple[str, ...] = tuple(symbols)
        if backend == RATFUNC:
            if gen_derivative is None:
                gen_derivative = Poly.const(1)
            if gen_derivative.variables() - {0}:
                raise ValueError("generator derivative must be a polynomial in the generator")
            self.gen_derivative = gen_derivative
            self.thresholds: Dict[int, int] = {}
            self._rules: Dict[int, Poly] = {}
        else:
            if len(set(self.symbols)) != len(self.symbols) or not self.symbols:
                raise ValueError("diffpoly backend needs distinct jet symbols")
            self.gen_derivative = None
            self.thresholds = {}
            self._rules = {}
            for (name, order), rhs in (rules or {}).items():
                s = self.symbols.index(name)
                if s in self.thresholds:
                    raise ConfigError(f"duplicate rewrite rule for {name}", code="SYNTAX_ERROR")
                if order < 1:
                    raise ConfigError("rewrite rules must rewrite a derivative of order >= 1")
                for v in rhs.variables():
                    vs, vo = self.jet_of_var(v)
                    if vs == s and vo >= order:
                        raise ConfigError(f"rule for {name} must use strictly lower jets of {name}")
                self.thresholds[s] = order
                self._rules[s] = rhs
        self._rule_cache: Dict[int, Poly] = {}
        self._in_progress: set = set()
        self.zero = FieldElement(self, Poly(), Poly.const(1), _trusted=True)
        self.one = FieldElement(self, Poly.const(1), Poly.const(1), _trusted=True)

    # -- constructors -----------------------------------------------------
    @classmethod
    def ratfunc(cls, gen: str = "x", derivative=1) -> "DiffField":
        """``Q(i)(gen)`` with ``gen' = derivative`` (a Poly in var 0 or a constant)."""
        if not isinstance(derivative, Poly):
            derivative = Poly.const(derivative)
        return cls(RATFUNC, gen=gen, gen_derivative=derivative)

    @classmethod
    def diffpoly(cls, symbols: Sequence[str], rules: Optional[Mapping[Tuple[str, int], Poly]] = None) -> "DiffField":
        return cls(DIFFPOLY, symbols=symbols, rules=rules)

    # -- variables ----------------------------------------------------------
    def var_of_jet(self, sym: int, order: int) -> int:
        return order * len(self.symbols) + sym

    def jet_of_var(self, v: int) -> Tuple[int, int]:
        n = len(self.symbols)
        return v % n, v // n

    def var_name(self, v: int) -> str:
        if self.backend == RATFUNC:
            return self.gen
        s, order = self.jet_of_var(v)
        return self.symbols[s] + "'" * order

    def generator(self) -> "FieldElement":
        if self.backend != RATFUNC:
            raise TypeError("diffpoly fields have jet variables, not a generator")
        return FieldElement(self, Poly.var(0), Poly.const(1), _trusted=True)

    def jet(self, name: str, order: int = 0, reduce: bool = True) -> "FieldElement":
        if self.backend != DIFFPOLY:
            raise TypeError("ratfunc fields have no jet variables")
        s = self.symbols.index(name)
        p = Poly.var(self.var_of_jet(s, order))
        if reduce:
            p = self.reduce_poly(p)
        return FieldElement(self, p, Poly.const(1), _trusted=True)

    # -- domain protocol ----------------------------------------------------
    def convert(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field is not self:
                raise TypeError("element belongs to a different differential field")
            return x
        if isinstance(x, _EXACT):
            return FieldElement(self, Poly.const(x), Poly.const(1), _trusted=True)
        raise TypeError(f"cannot convert {type(x).__name__} into the differential field")

    def sqrt(self, c: "FieldElement") -> Optional["FieldElement"]:
        return c.sqrt()

    def sort_key(self, c: "FieldElement"):
        from .render import render_field_element
        g = c.to_gaussian()
        if g is not None:
            return (0, g.re, g.im)
        return (1, render_field_element(c))

    def is_constant(self, c: "FieldElement") -> bool:
        return c.is_constant()

    # -- derivation ---------------------------------------------------------
    def reducible(self, v: int) -> bool:
        if self.backend != DIFFPOLY:
            return False
        s, order = self.jet_of_var(v)
        t = self.thresholds.get(s)
        return t is not None and order >= t

    def _rule_poly(self, v: int) -> Poly:
        """Reduced replacement for the reducible jet variable ``v``."""
        cached = self._rule_cache.get(v)
        if cached is not None:
            return cached
        if v in self._in_progress:
            raise ConfigError("rewrite rules do not terminate (cyclic dependency)")
        self._in_progress.add(v)
        try:
            s, order = self.jet_of_var(v)
            t = self.thresholds[s]
            if order == t:
                result = self.reduce_poly(self._rules[s])
            else:
                result = self.derive_poly(self._rule_poly(self.var_of_jet(s, order - 1)))
        finally:
            self._in_progress.discard(v)
        self._rule_cache[v] = result
        return result

    def reduce_poly(self, p: Poly) -> Poly:
        if self.backend != DIFFPOLY:
            return p
        targets = [v for v in p.variables() if self.reducible(v)]
        if not targets:
            return p
        return p.subs({v: self._rule_poly(v) for v in targets})

    def derive_poly(self, p: Poly) -> Poly:
        """Derivative of a polynomial in the field's variables, fully reduced."""
        if not p:
            return p
        if self.backend == RATFUNC:
            if 0 not in p.variables():
                return p.zero()
            return p.diff(0) * self.gen_derivative
        n = len(self.symbols)
        out = p.zero()
        for v in sorted(p.variables()):
            out = out + p.diff(v) * Poly.var(v + n)
        return self.reduce_poly(out)

    def describe(self) -> dict:
        from .render import render_poly
        if self.backend == RATFUNC:
            return {"backend": RATFUNC, "gen": self.gen,
                    "derivative": render_poly(self.gen_derivative, self.var_name)}
        rules = []
        for s in sorted(self._rules):
            lhs = self.var_name(self.var_of_jet(s, self.thresholds[s]))
            rules.append(f"{lhs} -> {render_poly(self._rules[s], self.var_name)}")
        return {"backend": DIFFPOLY, "vars": list(self.symbols), "rules": rules}

    def __repr__(self):
        d = self.describe()
        if self.backend == RATFUNC:
            return f"DiffField(ratfunc, {d['gen']}' = {d['derivative']})"
        return f"DiffField(diffpoly, vars={','.join(d['vars'])}, rules={d['rules']})"


class FieldElement:
    """``num/den`` in lowest terms with the denominator monic."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: DiffField, num: Poly, den: Optional[Poly] = None, _trusted: bool = False):
        self.field = field
        self._hash = None
        if den is None:
            den = Poly.const(1)
        if _trusted:
            self.num, self.den = num, den
            return
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            self.num, self.den = num, Poly.const(1)
            return
        if den.is_constant():
            c = den.constant_coeff()
            self.num = num if c == 1 else num.scale(1 / c)
            self.den = Poly.const(1)
            return
        g = poly_gcd(num, den)
        if not g.is_constant():
            num, den = num.divexact(g), den.divexact(g)
        c = den.lc()
        if c != 1:
            inv = 1 / c
            num, den = num.scale(inv), den.scale(inv)
        if den.is_constant():
            den = Poly.const(1)
        self.num, self.den = num, den

    def _coerce(self, other) -> Optional["FieldElement"]:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise TypeError("elements of different differential fields")
            return other
        if isinstance(other, _EXACT):
            return self.field.convert(other)
        return None

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        K = self.field
        a, b, c, d = self.num, self.den, other.num, other.den
        if b.is_constant() and d.is_constant():
            return FieldElement(K, a + c, b, _trusted=True)
        # Henrici: with g = gcd(b, d) and t = a*(d/g) + c*(b/g), only gcd(t, g) can cancel
        g = b if b == d else poly_gcd(b, d)
        if g.is_constant():
            return FieldElement(K, a * d + c * b, b * d, _trusted=True)
        bg, dg = b.divexact(g), d.divexact(g)
        t = a * dg + c * bg
        if not t:
            return K.zero
        h = poly_gcd(t, g)
        if not h.is_constant():
            t, g = t.divexact(h), g.divexact(h)
        return FieldElement(K, t, bg * dg * g, _trusted=True)._normal_den()

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.num, self.den, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return self.field.zero
        a, b, c, d = self.num, self.den, other.num, other.den
        if b.is_constant() and d.is_constant():
            return FieldElement(self.field, a * c, b, _trusted=True)
        # cross-cancel: (a/b)(c/d) = (a/g1)(c/g2) / ((b/g2)(d/g1))
        g1 = poly_gcd(a, d) if not d.is_constant() else d
        g2 = poly_gcd(c, b) if not b.is_constant() else b
        if not g1.is_constant():
            a, d = a.divexact(g1), d.divexact(g1)
        if not g2.is_constant():
            c, b = c.divexact(g2), b.divexact(g2)
        return FieldElement(self.field, a * c, b * d, _trusted=True)._normal_den()

    def _normal_den(self) -> "FieldElement":
        """Rescale so the denominator is monic (1 when constant)."""
        den = self.den
        c = den.lc()
        if den.is_constant():
            if c == 1:
                return self
            return FieldElement(self.field, self.num.scale(1 / c), Poly.const(1), _trusted=True)
        if c == 1:
            return self
        inv = 1 / c
        return FieldElement(self.field, self.num.scale(inv), den.scale(inv), _trusted=True)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self.num:
            raise DivisionByZero("division by zero in K")
        return FieldElement(self.field, self.den, self.num, _trusted=True)._normal_den()

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.num:
            raise DivisionByZero("division by zero in K")
        if other.is_polynomial() and other.num.is_constant():
            c = other.num.constant_coeff()
            return FieldElement(self.field, self.num.scale(1 / c), self.den, _trusted=True)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return FieldElement(self.field, self.num ** k, self.den ** k, _trusted=True)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.num == other.num and self.den == other.den
        if isinstance(other, _EXACT):
            return self.den.is_constant() and self.num == Poly.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            g = self.to_gaussian()
            self._hash = hash(g) if g is not None else hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        from .render import render_field_element
        return f"FieldElement({render_field_element(self)})"

    def __str__(self):
        from .render import render_field_element
        return render_field_element(self)

    # -- differential structure --------------------------------------------
    def derive(self) -> "FieldElement":
        f = self.field
        dn = f.derive_poly(self.num)
        if self.den.is_constant():
            return FieldElement(f, dn, self.den, _trusted=True)
        d = self.den
        dd = f.derive_poly(d)
        # with g = gcd(d, d') the quotient rule needs only d * (d/g) below the line
        g = poly_gcd(d, dd) if dd else d
        dg = d.divexact(g)
        return FieldElement(f, dn * dg - self.num * dd.divexact(g), d * dg)

    def reduce(self) -> "FieldElement":
        f = self.field
        num, den = f.reduce_poly(self.num), f.reduce_poly(self.den)
        if num is self.num and den is self.den:
            return self
        return FieldElement(f, num, den)

    def is_constant(self) -> bool:
        return not self.derive()

    def to_gaussian(self) -> Optional[GaussianRational]:
        if self.num.is_constant() and self.den.is_constant():
            return self.num.constant_coeff() / self.den.constant_coeff()
        return None

    def sqrt(self) -> Optional["FieldElement"]:
        rn = self.num.sqrt()
        if rn is None:
            return None
        rd = self.den.sqrt()
        if rd is None:
            return None
        return FieldElement(self.field, rn, rd)


def fe_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def fe_derive(a: FieldElement) -> FieldElement:
    return a.derive()


def fe_reduce(a: FieldElement) -> FieldElement:
    return a.reduce()
