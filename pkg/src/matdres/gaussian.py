"""Exact Gaussian rationals, the constant field Q(i)."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from numbers import Rational
from typing import Optional, Union

Number = Union[int, Fraction, "GaussianRational"]


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class GaussianRational:
    """``(a + b*i)/d`` with integers ``a``, ``b``, ``d > 0`` and ``gcd(a, b, d) = 1``.

    A single shared denominator keeps arithmetic at one gcd per operation;
    ``re`` and ``im`` expose the parts as :class:`fractions.Fraction`.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, re: Rational | int = 0, im: Rational | int = 0):
        re = re if type(re) is Fraction else Fraction(re)
        im = im if type(im) is Fraction else Fraction(im)
        rd, idn = re.denominator, im.denominator
        d = rd * idn // gcd(rd, idn)
        self.a = re.numerator * (d // rd)
        self.b = im.numerator * (d // idn)
        self.d = d

    @classmethod
    def _make(cls, a: int, b: int, d: int) -> "GaussianRational":
        """Normalising constructor from integer parts (``d`` nonzero)."""
        g = gcd(a, b, d)
        if d < 0:
            g = -g
        obj = object.__new__(cls)
        if g != 1:
            a //= g
            b //= g
            d //= g
        obj.a, obj.b, obj.d = a, b, d
        return obj

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        return cls(re, im)

    @property
    def re(self) -> Fraction:
        return Fraction(self.a, self.d)

    @property
    def im(self) -> Fraction:
        return Fraction(self.b, self.d)

    @classmethod
    def coerce(cls, x: Number) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, int):
            return cls._make(x, 0, 1)
        if isinstance(x, Fraction):
            return cls._make(x.numerator, 0, x.denominator)
        if isinstance(x, complex):
            raise TypeError("floating-point complex values are not exact")
        if isinstance(x, Rational):
            return cls._make(x.numerator, 0, x.denominator)
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")

    @staticmethod
    def _other(x) -> Optional["GaussianRational"]:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational.coerce(x)
        return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.d == o.d:
            return GaussianRational._make(self.a + o.a, self.b + o.b, self.d)
        return GaussianRational._make(self.a * o.d + o.a * self.d, self.b * o.d + o.b * self.d, self.d * o.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b, c, e = self.a, self.b, o.a, o.b
        if not b:
            return GaussianRational._make(a * c, a * e, self.d * o.d)
        if not e:
            return GaussianRational._make(a * c, b * c, self.d * o.d)
        return GaussianRational._make(a * c - b * e, a * e + b * c, self.d * o.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        obj = object.__new__(GaussianRational)
        obj.a, obj.b, obj.d = -self.a, -self.b, self.d
        return obj

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "GaussianRational":
        # d/(a + b i) = d (a - b i)/(a^2 + b^2)
        n = self.a * self.a + self.b * self.b
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational._make(self.d * self.a, -self.d * self.b, n)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._make(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return Fraction(self.a * self.a + self.b * self.b, self.d * self.d)

    def sqrt(self) -> Optional["GaussianRational"]:
        """Square root in Q(i) if one exists.

        The root with positive real part is returned, or with positive
        imaginary part when the real part vanishes.
        """
        a, b = self.re, self.im
        if not b:
            r = _rational_sqrt(a)
            if r is not None:
                return GaussianRational._raw(r, _ZERO)
            r = _rational_sqrt(-a)
            return None if r is None else GaussianRational._raw(_ZERO, r)
        m = _rational_sqrt(a * a + b * b)
        if m is None:
            return None
        x = _rational_sqrt((a + m) / 2)
        if x is None or not x:
            return None
        return GaussianRational._raw(x, b / (2 * x))

    # -- predicates -------------------------------------------------------
    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_real(self) -> bool:
        return not self.b

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, int):
            return not self.b and self.d == 1 and self.a == other
        if isinstance(other, Fraction):
            return not self.b and self.a == other.numerator and self.d == other.denominator
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.re)
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        return format_gaussian(self)

    def sort_key(self):
        return (self.re, self.im)

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gaussian(z: GaussianRational) -> str:
    """Canonical ``a + b*i`` rendering, e.g. ``3``, ``-i``, ``1/2 - 2*i``."""
    a, b = z.re, z.im
    if not b:
        return _fmt_rational(a)
    if abs(b) == 1:
        imag = "i"
    else:
        imag = f"{_fmt_rational(abs(b))}*i"
    if not a:
        return imag if b > 0 else f"-{imag}"
    sign = "+" if b > 0 else "-"
    return f"{_fmt_rational(a)} {sign} {imag}"


_ZERO = Fraction(0)
ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


class GaussianDomain:
    """Coefficient-domain adaptor for Q(i), used by :class:`matdres.poly.Poly`."""

    zero = ZERO
    one = ONE

    def convert(self, x) -> GaussianRational:
        return GaussianRational.coerce(x)

    def sqrt(self, c: GaussianRational) -> Optional[GaussianRational]:
        return c.sqrt()

    def is_constant(self, c) -> bool:
        return True

    def sort_key(self, c: GaussianRational):
        return (0, c.re, c.im)

    def __repr__(self):
        return "QQ_I"


QI = GaussianDomain()
