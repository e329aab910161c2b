"""Matrix ordinary differential operators ``sum_j A_j D^j`` over a differential field."""
from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import List, Optional, Sequence

from .errors import DimensionMismatch, NoncommutingPair
from .matrix import Matrix
from .polyring import EvalRing, bp_eval_commuting


class MODO:
    """Operator in coefficient-left normal form; trailing zero matrices are stripped.

    The zero operator has an empty coefficient list and order -1.
    """

    __slots__ = ("coeffs", "ell", "field", "_hash")

    def __init__(self, coeffs: Sequence[Matrix], ell: Optional[int] = None, field=None):
        coeffs = list(coeffs)
        if coeffs:
            ell = coeffs[0].n
            field = coeffs[0].ring
            for A in coeffs:
                if A.n != ell:
                    raise DimensionMismatch("coefficient matrices of different sizes")
                if A.ring is not field:
                    raise TypeError("coefficients over different fields")
        elif ell is None or field is None:
            raise ValueError("the zero operator needs its size and field")
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = tuple(coeffs)
        self.ell = ell
        self.field = field
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, ell: int, field) -> "MODO":
        return cls([], ell, field)

    @classmethod
    def from_matrix(cls, A: Matrix) -> "MODO":
        return cls([A])

    @classmethod
    def identity(cls, ell: int, field) -> "MODO":
        return cls([Matrix.identity(ell, field)])

    @classmethod
    def scalar(cls, c, ell: int, field) -> "MODO":
        return cls([Matrix.scalar(c, ell, field)], ell, field)

    @classmethod
    def D(cls, ell: int, field) -> "MODO":
        return cls([Matrix.zeros(ell, field), Matrix.identity(ell, field)])

    # -- accessors ------------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, j: int) -> Matrix:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return Matrix.zeros(self.ell, self.field)

    def leading_coefficient(self) -> Matrix:
        if not self.coeffs:
            raise ValueError("the zero operator has no leading coefficient")
        return self.coeffs[-1]

    def entry(self, r: int, c: int) -> List:
        """Scalar operator in position (r, c) as its list of D-coefficients."""
        return [A[r, c] for A in self.coeffs]

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, MODO):
            return NotImplemented
        return self.ell == other.ell and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ell, self.coeffs))
        return self._hash

    def __repr__(self):
        from .render import render_modo
        return f"MODO({render_modo(self)})"

    def __str__(self):
        from .render import render_modo
        return render_modo(self)

    # -- arithmetic -----------------------------------------------------------
    def _same(self, other: "MODO"):
        if other.ell != self.ell:
            raise DimensionMismatch(f"operators of size {self.ell} and {other.ell}")
        if other.field is not self.field:
            raise TypeError("operators over different fields")

    def _lift(self, other) -> Optional["MODO"]:
        if isinstance(other, MODO):
            self._same(other)
            return other
        if isinstance(other, Matrix):
            if other.n != self.ell:
                raise DimensionMismatch("matrix size does not match operator size")
            return MODO([other], self.ell, self.field)
        try:
            return MODO.scalar(other, self.ell, self.field)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return MODO([self.coeff(j) + other.coeff(j) for j in range(n)], self.ell, self.field)

    __radd__ = __add__

    def __neg__(self):
        return MODO([-A for A in self.coeffs], self.ell, self.field)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (MODO, Matrix)):
            return modo_mul(self, self._lift(other))
        try:
            c = self.field.convert(other)
        except TypeError:
            return NotImplemented
        return MODO([A * c for A in self.coeffs], self.ell, self.field)

    def __rmul__(self, other):
        if isinstance(other, Matrix):
            return modo_mul(self._lift(other), self)
        try:
            c = self.field.convert(other)
        except TypeError:
            return NotImplemented
        return MODO([c * A for A in self.coeffs], self.ell, self.field)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = MODO.identity(self.ell, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result


def modo_mul(P: MODO, Q: MODO) -> MODO:
    """Product via ``D^i B = sum_k C(i, k) B^(k) D^(i-k)``."""
    P._same(Q)
    if not P or not Q:
        return MODO.zero(P.ell, P.field)
    m = P.order
    derivs = []
    for B in Q.coeffs:
        ds = [B]
        for _ in range(m):
            ds.append(ds[-1].derive())
        derivs.append(ds)
    acc = [None] * (P.order + Q.order + 1)
    for i, A in enumerate(P.coeffs):
        if not A:
            continue
        for j in range(len(Q.coeffs)):
            for k in range(i + 1):
                Bk = derivs[j][k]
                if not Bk:
                    continue
                term = A * Bk
                c = comb(i, k)
                if c != 1:
                    term = term * c
                idx = i - k + j
                acc[idx] = term if acc[idx] is None else acc[idx] + term
    z = Matrix.zeros(P.ell, P.field)
    return MODO([a if a is not None else z for a in acc], P.ell, P.field)


def modo_commutator(P: MODO, Q: MODO) -> MODO:
    return P * Q - Q * P


@lru_cache(maxsize=256)
def commutes(P: MODO, Q: MODO) -> bool:
    return not modo_commutator(P, Q)


def modo_ring(ell: int, field) -> EvalRing:
    return EvalRing(one=MODO.identity(ell, field), zero=MODO.zero(ell, field),
                    commutator=None)


def op_eval_poly(g, L: MODO, B: MODO, allow_noncommuting: bool = False,
                 require_constant: bool = True) -> MODO:
    """``g(L, B)`` for a polynomial ``g`` with differential-constant coefficients.

    Substitution is only meaningful when ``[L, B] = 0``; otherwise
    :class:`NoncommutingPair` is raised unless ``allow_noncommuting``, in
    which case powers of ``L`` are placed to the left of powers of ``B``.
    """
    L._same(B)
    if not allow_noncommuting and not commutes(L, B):
        raise NoncommutingPair("[L, B] is not zero; polynomial substitution is ill-defined")
    if require_constant:
        dom = g.domain
        for c in g.terms.values():
            if not dom.is_constant(c):
                raise ValueError("polynomial coefficients must be differential constants")
        if dom is not L.field:
            # Gaussian coefficients are constants of every field
            g = g.map_coeffs(L.field.convert, L.field)
    return bp_eval_commuting(g, L, B, modo_ring(L.ell, L.field))
