"""Canonical text rendering.

Every string produced here parses back (with :mod:`matdres.parser`) to the
same object. Bivariate polynomials print with ``mu`` leading
(``mu^2 + 4*lambda^4``); jet polynomials print by descending total degree.
"""
from __future__ import annotations

from typing import Callable, List, Optional, Tuple

from .gaussian import GaussianRational, format_gaussian, _fmt_rational
from .poly import Monomial, Poly, mono_key

NameFn = Callable[[int], str]


def render_gaussian(z: GaussianRational) -> str:
    return format_gaussian(z)


def _gaussian_parts(c: GaussianRational) -> Tuple[bool, str, bool]:
    """``(negative, body, is_unit)`` for a coefficient in front of a monomial."""
    if not c.im:
        return c.re < 0, _fmt_rational(abs(c.re)), abs(c.re) == 1
    if not c.re:
        body = "i" if abs(c.im) == 1 else f"{_fmt_rational(abs(c.im))}*i"
        return c.im < 0, body, False
    return False, f"({format_gaussian(c)})", False


def _coeff_parts(c, constant_term: bool = False) -> Tuple[bool, str, bool]:
    if isinstance(c, GaussianRational):
        return _gaussian_parts(c)
    g = c.to_gaussian()
    if g is not None:
        return _gaussian_parts(g)
    text = render_field_element(c)
    if len(c.num.terms) == 1:
        # a signed monomial (or monomial over a denominator) needs no parentheses
        if c.den.is_constant() or constant_term:
            neg = text.startswith("-")
            return neg, text[1:] if neg else text, False
        return False, f"({text})", False
    if constant_term and not c.den.is_constant():
        return False, text, False
    return False, f"({text})", False


def _mono(m: Monomial, names: NameFn) -> str:
    return "*".join(names(v) if e == 1 else f"{names(v)}^{e}" for v, e in m)


def _join(terms: List[Tuple[bool, str]]) -> str:
    if not terms:
        return "0"
    out = []
    for k, (neg, body) in enumerate(terms):
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def render_poly(p: Poly, names: NameFn, graded: bool = False) -> str:
    if not p:
        return "0"
    if len(p.terms) == 1 and p.is_constant():
        c = p.constant_coeff()
        if isinstance(c, GaussianRational):
            return format_gaussian(c)
        return render_field_element(c)
    if graded:
        monos = sorted(p.terms, key=lambda m: (sum(e for _, e in m), mono_key(m)), reverse=True)
    else:
        monos = sorted(p.terms, key=mono_key, reverse=True)
    terms = []
    for m in monos:
        neg, body, unit = _coeff_parts(p.terms[m], not m)
        if m:
            mono = _mono(m, names)
            body = mono if unit else f"{body}*{mono}"
        elif unit:
            body = "1"
        terms.append((neg, body))
    return _join(terms)


def render_bivar(p: Poly) -> str:
    from .polyring import bivar_name
    return render_poly(p, bivar_name)


def _top_level_sum(text: str) -> bool:
    """Whether ``text`` has a binary ``+``/``-`` outside parentheses."""
    depth = 0
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and k > 0:
            return True
    return False


def render_field_element(a) -> str:
    f = a.field
    num = render_poly(a.num, f.var_name, graded=True)
    if a.den.is_constant():
        return num
    den = render_poly(a.den, f.var_name, graded=True)
    if _top_level_sum(num):
        num = f"({num})"
    if _top_level_sum(den) or "*" in den or "/" in den:
        den = f"({den})"
    return f"{num}/{den}"


def _scalar_term(c, k: int) -> Tuple[bool, str]:
    """One ``c*D^k`` summand of an operator entry, sign split off."""
    dk = "" if k == 0 else ("D" if k == 1 else f"D^{k}")
    g = c.to_gaussian() if not isinstance(c, GaussianRational) else c
    if g is not None:
        neg, body, unit = _gaussian_parts(g)
        if not dk:
            return neg, body
        return neg, dk if unit else f"{body}*{dk}"
    text = render_field_element(c)
    single = not _top_level_sum(text)
    neg = False
    if single and text.startswith("-"):
        neg, text = True, text[1:]
    if not dk:
        return neg, text
    if single:
        return neg, f"{text}*{dk}"
    return neg, f"({text})*{dk}"


def render_operator_entry(coeffs: List) -> str:
    """``sum_k coeffs[k] D^k`` from the highest order down."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c:
            terms.append(_scalar_term(c, k))
    if len(terms) > 1:
        # a multi-term constant summand is safe after + or - only in parentheses
        fixed = []
        for neg, body in terms:
            if (" + " in body or " - " in body) and not body.startswith("("):
                body = f"({body})"
            fixed.append((neg, body))
        terms = fixed
    return _join(terms)


def render_modo(op) -> str:
    if not op:
        return "0"
    ell = op.ell
    entries = [[render_operator_entry([A[r, c] for A in op.coeffs]) for c in range(ell)] for r in range(ell)]
    if ell == 1:
        return entries[0][0]
    return "[" + ", ".join("[" + ", ".join(row) + "]" for row in entries) + "]"


def render_matrix(M, entry: Optional[Callable] = None) -> str:
    entry = entry or render_value
    return "[" + ", ".join("[" + ", ".join(entry(x) for x in row) + "]" for row in M.rows) + "]"


def render_value(x) -> str:
    """Best-effort canonical rendering of any library value."""
    from .difffield import FieldElement
    from .matrix import Matrix
    from .modo import MODO
    if isinstance(x, GaussianRational):
        return format_gaussian(x)
    if isinstance(x, FieldElement):
        return render_field_element(x)
    if isinstance(x, Poly):
        return render_bivar(x)
    if isinstance(x, MODO):
        return render_modo(x)
    if isinstance(x, Matrix):
        return render_matrix(x)
    if isinstance(x, int):
        return str(x)
    return str(x)
