"""Expression grammar and session configuration files.

Expressions::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := postfix ('^' unary)?
    postfix := atom "'"*
    atom    := NUMBER | NAME | '(' expr ')' | '[' row (',' row)* ']'
    row     := '[' expr (',' expr)* ']'

``'`` is the derivation (so ``u''`` is a jet and ``(u*v)'`` is a
derivative), ``i`` is the imaginary unit, ``D`` is the derivation operator
(operator context only) and ``lambda``/``mu`` are the spectral variables
(polynomial context only).

A configuration is a sequence of statements separated by newlines or
``;``::

    field { backend = diffpoly; vars = u, v; rule u'' = -2*u^2*v; rule v'' = -2*v^2*u }
    field { backend = ratfunc; gen = t; d(t) = 2*i*t }
    let u = 1/t                      # or simply: u = 1/t
    operator L = i*[[D, u], [v, -D]]
    poly g = mu - 2*i*lambda^2
    factor mu - 2*i*lambda^2 : 1     # optional user factorization
    unit 1
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .difffield import DIFFPOLY, RATFUNC, DiffField, FieldElement
from .errors import ConfigError, DimensionMismatch, MatDresError
from .gaussian import GaussianRational, I, QI
from .matrix import Matrix
from .modo import MODO
from .poly import Poly
from .polyring import LAM, MU, Factorization

RESERVED = {"i", "D", "lambda", "mu", "field", "operator", "let", "poly", "factor", "unit", "rule"}


# -- tokens -------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # NUM, NAME, OP, NL, EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<num>\d+(?:\.\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>->|[-+*/^()\[\],={};:'])
""", re.VERBOSE)

_CONTINUES = {"+", "-", "*", "/", "^", "=", ",", "->", "(", "[", "{", ";", ":"}


def tokenize(text: str) -> List[Token]:
    toks: List[Token] = []
    pos, line, line_start = 0, 1, 0
    depth = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ConfigError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            if depth == 0 and toks and not (toks[-1].kind == "OP" and toks[-1].text in _CONTINUES) \
                    and toks[-1].kind != "NL":
                toks.append(Token("NL", "\n", line, col))
            line += 1
            line_start = m.end()
        elif kind == "num":
            toks.append(Token("NUM", s, line, col))
        elif kind == "name":
            toks.append(Token("NAME", s, line, col))
        elif kind == "op":
            if s in "([":
                depth += 1
            elif s in ")]":
                depth = max(0, depth - 1)
            toks.append(Token("OP", s, line, col))
        pos = m.end()
    toks.append(Token("EOF", "", line, pos - line_start + 1))
    return toks


# -- syntax tree ----------------------------------------------------------------

@dataclass
class Node:
    kind: str  # num, name, neg, add, sub, mul, div, pow, prime, matrix
    value: object = None
    children: Tuple["Node", ...] = ()
    line: int = 0
    col: int = 0


class _Parser:
    def __init__(self, toks: List[Token]):
        self.toks = toks
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        raise ConfigError(msg, tok.line, tok.col)

    def at_op(self, *ops) -> bool:
        return self.tok.kind == "OP" and self.tok.text in ops

    def expect_op(self, op: str) -> Token:
        if not self.at_op(op):
            shown = self.tok.text if self.tok.kind != "EOF" else "end of input"
            self.error(f"expected {op!r}, found {shown!r}")
        return self.next()

    def expect_name(self) -> Token:
        if self.tok.kind != "NAME":
            self.error("expected a name")
        return self.next()

    def skip_separators(self):
        while self.tok.kind == "NL" or self.at_op(";"):
            self.next()

    def end_statement(self):
        if self.tok.kind in ("NL", "EOF") or self.at_op(";", "}"):
            return
        self.error(f"unexpected {self.tok.text!r}")

    # expressions
    def expr(self) -> Node:
        node = self.term()
        while self.at_op("+", "-"):
            t = self.next()
            rhs = self.term()
            node = Node("add" if t.text == "+" else "sub", None, (node, rhs), t.line, t.col)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.at_op("*", "/"):
            t = self.next()
            rhs = self.unary()
            node = Node("mul" if t.text == "*" else "div", None, (node, rhs), t.line, t.col)
        return node

    def unary(self) -> Node:
        if self.at_op("-", "+"):
            t = self.next()
            inner = self.unary()
            return Node("neg", None, (inner,), t.line, t.col) if t.text == "-" else inner
        return self.power()

    def power(self) -> Node:
        base = self.postfix()
        if self.at_op("^"):
            t = self.next()
            exp = self.unary()
            return Node("pow", None, (base, exp), t.line, t.col)
        return base

    def postfix(self) -> Node:
        node = self.atom()
        while self.at_op("'"):
            t = self.next()
            node = Node("prime", None, (node,), t.line, t.col)
        return node

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "NUM":
            self.next()
            return Node("num", Fraction(t.text), (), t.line, t.col)
        if t.kind == "NAME":
            self.next()
            return Node("name", t.text, (), t.line, t.col)
        if self.at_op("("):
            self.next()
            node = self.expr()
            self.expect_op(")")
            return node
        if self.at_op("["):
            self.next()
            rows = []
            while True:
                rt = self.expect_op("[")
                row = [self.expr()]
                while self.at_op(","):
                    self.next()
                    row.append(self.expr())
                self.expect_op("]")
                rows.append(Node("row", None, tuple(row), rt.line, rt.col))
                if self.at_op(","):
                    self.next()
                    continue
                break
            self.expect_op("]")
            return Node("matrix", None, tuple(rows), t.line, t.col)
        shown = t.text if t.kind != "EOF" else "end of input"
        self.error(f"unexpected {shown!r}")


def parse_expression(text: str) -> Node:
    p = _Parser([t for t in tokenize(text) if t.kind != "NL"])
    node = p.expr()
    if p.tok.kind != "EOF":
        p.error(f"unexpected {p.tok.text!r}")
    return node


# -- evaluation -------------------------------------------------------------------

FIELD, OPERATOR, POLY = "field", "operator", "poly"


def _err(node: Node, msg: str, code: str = "SYNTAX_ERROR"):
    raise ConfigError(msg, node.line, node.col, code)


class Evaluator:
    """Evaluates syntax trees to Gaussian constants, field elements,
    bivariate polynomials or operators, depending on ``mode``."""

    def __init__(self, field: Optional[DiffField], mode: str, definitions: Optional[Dict] = None):
        self.field = field
        self.mode = mode
        self.defs = definitions or {}

    # names
    def name(self, node: Node):
        s = node.value
        K = self.field
        if s == "i":
            return I
        if s == "D":
            if self.mode != OPERATOR:
                _err(node, "D appears only in operator context")
            return MODO.D(1, K)
        if s in ("lambda", "mu"):
            if self.mode != POLY:
                _err(node, f"{s} appears only in polynomial context", "UNDECLARED_SYMBOL")
            return Poly.var(LAM if s == "lambda" else MU, QI)
        if s in self.defs:
            return self.defs[s]
        if K is not None:
            if K.backend == RATFUNC and s == K.gen:
                return K.generator()
            if K.backend == DIFFPOLY and s in K.symbols:
                return K.jet(s, 0)
        _err(node, f"undeclared symbol {s!r}", "UNDECLARED_SYMBOL")

    def eval(self, node: Node):
        k = node.kind
        if k == "num":
            return GaussianRational(node.value)
        if k == "name":
            return self.name(node)
        if k == "neg":
            v = self.eval(node.children[0])
            return -v
        if k == "prime":
            return self.prime(node, self.eval(node.children[0]))
        if k == "matrix":
            return self.matrix(node)
        if k == "row":
            _err(node, "unexpected row")
        a = self.eval(node.children[0])
        if k == "pow":
            return self.power(node, a, self.eval(node.children[1]))
        b = self.eval(node.children[1])
        return self.binop(node, k, a, b)

    def prime(self, node: Node, v):
        if isinstance(v, GaussianRational):
            return GaussianRational(0)
        if isinstance(v, FieldElement):
            return v.derive()
        if isinstance(v, Poly):
            return v.zero() if v.domain is QI else v.derive()
        _err(node, "the derivation ' applies to field elements only")

    def power(self, node: Node, a, e):
        if not isinstance(e, GaussianRational) or e.im or e.re.denominator != 1:
            _err(node, "exponents must be integers")
        n = int(e.re)
        if isinstance(a, (GaussianRational, FieldElement)):
            try:
                return a ** n
            except ZeroDivisionError:
                _err(node, "zero raised to a negative power")
        if n < 0:
            _err(node, "negative powers are only defined for field elements")
        return a ** n

    def matrix(self, node: Node):
        rows = [[self.eval(e) for e in r.children] for r in node.children]
        n = len(rows)
        if any(len(r) != n for r in rows):
            _err(node, "matrix literal must be square with equal-length rows", "DIMENSION_MISMATCH")
        if self.mode != OPERATOR:
            K = self.field
            if K is None:
                _err(node, "matrix literals need a field")
            try:
                return Matrix([[self.scalar(e, node) for e in r] for r in rows], K)
            except TypeError:
                _err(node, "matrix entries must be field elements")
        K = self.field
        ops = [[self.as_scalar_op(e, node) for e in r] for r in rows]
        order = max((op.order for r in ops for op in r), default=-1)
        coeffs = []
        for j in range(order + 1):
            coeffs.append(Matrix([[op.coeff(j)[0, 0] for op in r] for r in ops], K))
        if not coeffs:
            return MODO.zero(n, K)
        return MODO(coeffs)

    def scalar(self, v, node: Node):
        if isinstance(v, (GaussianRational, FieldElement)):
            return v
        _err(node, "expected a scalar")

    def as_scalar_op(self, v, node: Node) -> MODO:
        K = self.field
        if isinstance(v, MODO):
            if v.ell != 1:
                _err(node, "matrix entries must be scalar operators", "DIMENSION_MISMATCH")
            return v
        if isinstance(v, (GaussianRational, FieldElement)):
            return MODO.scalar(v, 1, K)
        _err(node, "invalid matrix entry")

    def broadcast(self, a: MODO, ell: int) -> MODO:
        if a.ell == ell:
            return a
        K = self.field
        return MODO([Matrix.scalar(A[0, 0], ell, K) for A in a.coeffs], ell, K)

    def binop(self, node: Node, k: str, a, b):
        if isinstance(a, MODO) or isinstance(b, MODO):
            return self.op_binop(node, k, a, b)
        if isinstance(a, Poly) or isinstance(b, Poly):
            return self.poly_binop(node, k, a, b)
        if isinstance(a, Matrix) or isinstance(b, Matrix):
            _err(node, "matrix arithmetic is only available for operators")
        try:
            if k == "add":
                return a + b
            if k == "sub":
                return a - b
            if k == "mul":
                return a * b
            return a / b
        except ZeroDivisionError:
            _err(node, "division by zero")

    def op_binop(self, node: Node, k: str, a, b):
        K = self.field
        if k == "div":
            if isinstance(b, MODO):
                _err(node, "cannot divide by an operator")
            try:
                inv = 1 / b
            except ZeroDivisionError:
                _err(node, "division by zero")
            return a * inv
        if not isinstance(a, MODO):
            a = MODO.scalar(self.scalar(a, node), 1, K)
        if not isinstance(b, MODO):
            b = MODO.scalar(self.scalar(b, node), 1, K)
        if a.ell != b.ell:
            if a.ell == 1:
                a = self.broadcast(a, b.ell)
            elif b.ell == 1:
                b = self.broadcast(b, a.ell)
            else:
                _err(node, f"operator sizes {a.ell} and {b.ell} differ", "DIMENSION_MISMATCH")
        if k == "add":
            return a + b
        if k == "sub":
            return a - b
        return a * b

    def poly_binop(self, node: Node, k: str, a, b):
        a, b = _unify_poly(a, b)
        if k == "add":
            return a + b
        if k == "sub":
            return a - b
        if k == "mul":
            return a * b
        if not b.is_constant() or not b:
            _err(node, "polynomials can only be divided by nonzero constants")
        return a.scale(a.domain.one / b.constant_coeff())


def _unify_poly(a, b):
    """Bring two polynomial-context values to Polys over a common domain."""
    dom = QI
    for x in (a, b):
        if isinstance(x, FieldElement):
            dom = x.field
        elif isinstance(x, Poly) and x.domain is not QI:
            dom = x.domain

    def lift(x):
        if isinstance(x, Poly):
            if x.domain is dom:
                return x
            return x.map_coeffs(dom.convert, dom)
        return Poly.const(x, dom)

    return lift(a), lift(b)


def _finish_poly(v, node: Node) -> Poly:
    if isinstance(v, Poly):
        return v
    if isinstance(v, (GaussianRational, FieldElement)):
        return _unify_poly(v, GaussianRational(0))[0]
    _err(node, "expected a polynomial in lambda and mu")


# -- public single-expression entry points ------------------------------------------

def parse_poly(text: str, field: Optional[DiffField] = None, definitions: Optional[Dict] = None) -> Poly:
    """A polynomial in ``lambda``, ``mu``; coefficients in Q(i), or in K if field names occur."""
    node = parse_expression(text)
    return _finish_poly(Evaluator(field, POLY, definitions).eval(node), node)


def parse_field_element(text: str, field: DiffField, definitions: Optional[Dict] = None) -> FieldElement:
    node = parse_expression(text)
    v = Evaluator(field, FIELD, definitions).eval(node)
    if isinstance(v, (GaussianRational, FieldElement)):
        return field.convert(v)
    _err(node, "expected a field element")


def parse_operator(text: str, field: DiffField, ell: Optional[int] = None,
                   definitions: Optional[Dict] = None) -> MODO:
    node = parse_expression(text)
    ev = Evaluator(field, OPERATOR, definitions)
    v = ev.eval(node)
    if not isinstance(v, MODO):
        v = MODO.scalar(ev.scalar(v, node), 1, field)
    if ell is not None and v.ell != ell:
        if v.ell == 1:
            v = ev.broadcast(v, ell)
        else:
            _err(node, f"operator has size {v.ell}, expected {ell}", "DIMENSION_MISMATCH")
    return v


def parse_gaussian(text: str) -> GaussianRational:
    node = parse_expression(text)
    v = Evaluator(None, FIELD).eval(node)
    if not isinstance(v, GaussianRational):
        _err(node, "expected a Gaussian rational constant")
    return v


# -- configuration ------------------------------------------------------------------

@dataclass
class SessionConfig:
    field: DiffField
    definitions: Dict[str, object] = dc_field(default_factory=dict)
    operators: Dict[str, MODO] = dc_field(default_factory=dict)
    polys: Dict[str, Poly] = dc_field(default_factory=dict)
    factorization: Optional[Factorization] = None
    ell: int = 1

    def operator(self, name: str) -> MODO:
        try:
            return self.operators[name]
        except KeyError:
            raise ConfigError(f"operator {name!r} is not defined", code="UNDECLARED_SYMBOL") from None


def default_field() -> DiffField:
    return DiffField.ratfunc("x", 1)


class _ConfigParser(_Parser):
    def __init__(self, text: str):
        super().__init__(tokenize(text))
        self.field: Optional[DiffField] = None
        self.cfg: Optional[SessionConfig] = None
        self.pending_factors: List[Tuple[Poly, int]] = []
        self.unit = None

    def ensure_field(self) -> DiffField:
        if self.field is None:
            self.field = default_field()
        if self.cfg is None:
            self.cfg = SessionConfig(self.field)
        return self.field

    def run(self) -> SessionConfig:
        self.skip_separators()
        while self.tok.kind != "EOF":
            self.statement()
            self.end_statement()
            self.skip_separators()
        self.ensure_field()
        cfg = self.cfg
        if self.pending_factors:
            cfg.factorization = Factorization(self.unit if self.unit is not None else GaussianRational(1),
                                              self.pending_factors, "user")
        sizes = {op.ell for op in cfg.operators.values()}
        big = {s for s in sizes if s > 1}
        if len(big) > 1:
            raise ConfigError(f"operators of different sizes {sorted(big)}", code="DIMENSION_MISMATCH")
        cfg.ell = big.pop() if big else 1
        for name, op in list(cfg.operators.items()):
            if op.ell != cfg.ell:
                cfg.operators[name] = Evaluator(cfg.field, OPERATOR).broadcast(op, cfg.ell)
        return cfg

    def statement(self):
        t = self.tok
        if t.kind != "NAME":
            self.error("expected a statement")
        word = t.text
        if word == "field":
            self.next()
            self.field_block(t)
        elif word == "operator":
            self.next()
            name = self.defined_name()
            self.expect_op("=")
            node = self.expr()
            K = self.ensure_field()
            ev = Evaluator(K, OPERATOR, self.cfg.definitions)
            v = ev.eval(node)
            if not isinstance(v, MODO):
                v = MODO.scalar(ev.scalar(v, node), 1, K)
            self.cfg.operators[name] = v
        elif word == "poly":
            self.next()
            name = self.defined_name()
            self.expect_op("=")
            node = self.expr()
            K = self.ensure_field()
            self.cfg.polys[name] = _finish_poly(Evaluator(K, POLY, self.cfg.definitions).eval(node), node)
        elif word == "factor":
            self.next()
            node = self.expr()
            K = self.ensure_field()
            h = _finish_poly(Evaluator(K, POLY, self.cfg.definitions).eval(node), node)
            mult = 1
            if self.at_op(":"):
                self.next()
                mt = self.tok
                if mt.kind != "NUM" or "." in mt.text or int(mt.text) < 1:
                    self.error("multiplicity must be a positive integer")
                self.next()
                mult = int(mt.text)
            self.pending_factors.append((h, mult))
        elif word == "unit":
            self.next()
            node = self.expr()
            K = self.ensure_field()
            v = Evaluator(K, FIELD, self.cfg.definitions).eval(node)
            self.unit = v
        else:
            if word == "let":
                self.next()
            name = self.defined_name()
            self.expect_op("=")
            node = self.expr()
            K = self.ensure_field()
            v = Evaluator(K, FIELD, self.cfg.definitions).eval(node)
            if not isinstance(v, (GaussianRational, FieldElement)):
                _err(node, "definitions must be field elements")
            self.cfg.definitions[name] = v

    def defined_name(self) -> str:
        t = self.expect_name()
        if t.text in RESERVED:
            self.error(f"{t.text!r} is reserved", t)
        K = self.field
        if K is not None and (t.text == K.gen and K.backend == RATFUNC or t.text in K.symbols):
            self.error(f"{t.text!r} is a field variable", t)
        cfg = self.cfg
        if cfg is not None and (t.text in cfg.definitions or t.text in cfg.operators or t.text in cfg.polys):
            self.error(f"{t.text!r} is already defined", t)
        return t.text

    def field_block(self, start: Token):
        if self.field is not None:
            self.error("only one field block is allowed", start)
        self.expect_op("{")
        backend = None
        gen = None
        gen_rhs = None
        symbols: List[str] = []
        rules: List[Tuple[Token, int, Node]] = []
        self.skip_separators()
        while not self.at_op("}"):
            if self.tok.kind == "EOF":
                self.error("unterminated field block")
            key = self.expect_name()
            if key.text == "backend":
                self.expect_op("=")
                b = self.expect_name()
                if b.text not in (RATFUNC, DIFFPOLY):
                    self.error(f"unknown backend {b.text!r}", b)
                backend = b.text
            elif key.text == "gen":
                self.expect_op("=")
                gen = self.expect_name().text
            elif key.text == "vars":
                self.expect_op("=")
                symbols.append(self.expect_name().text)
                while self.at_op(","):
                    self.next()
                    symbols.append(self.expect_name().text)
            elif key.text == "d":
                self.expect_op("(")
                g = self.expect_name()
                self.expect_op(")")
                self.expect_op("=")
                if gen is not None and g.text != gen:
                    self.error(f"d({g.text}) does not match generator {gen!r}", g)
                gen = g.text
                gen_rhs = self.expr()
            elif key.text == "rule":
                sym = self.expect_name()
                order = 0
                while self.at_op("'"):
                    self.next()
                    order += 1
                if not self.at_op("=", "->"):
                    self.error("expected '=' or '->' in rule")
                self.next()
                rules.append((sym, order, self.expr()))
            else:
                self.error(f"unknown field setting {key.text!r}", key)
            if not self.at_op("}"):
                if not (self.tok.kind == "NL" or self.at_op(";")):
                    self.error(f"unexpected {self.tok.text!r}")
                self.skip_separators()
        self.expect_op("}")
        if backend is None:
            backend = DIFFPOLY if symbols else RATFUNC
        if backend == RATFUNC:
            if symbols or rules:
                self.error("ratfunc fields take gen and d(...), not vars or rules", start)
            gen = gen or "x"
            for bad in (gen,):
                if bad in RESERVED:
                    self.error(f"{bad!r} is reserved", start)
            deriv = Poly.const(1)
            if gen_rhs is not None:
                tmp = DiffField.ratfunc(gen, 1)
                v = Evaluator(tmp, FIELD).eval(gen_rhs)
                v = tmp.convert(v)
                if not v.is_polynomial():
                    _err(gen_rhs, "the generator derivative must be a polynomial in the generator")
                deriv = v.num
            self.field = DiffField.ratfunc(gen, deriv)
        else:
            if not symbols:
                self.error("diffpoly fields need vars", start)
            for s in symbols:
                if s in RESERVED:
                    self.error(f"{s!r} is reserved", start)
            if len(set(symbols)) != len(symbols):
                self.error("duplicate jet variables", start)
            tmp = DiffField.diffpoly(symbols)
            rule_map = {}
            for sym, order, node in rules:
                if sym.text not in symbols:
                    raise ConfigError(f"rule for undeclared variable {sym.text!r}", sym.line, sym.col,
                                      "UNDECLARED_SYMBOL")
                if order < 1:
                    self.error("rules must rewrite a derivative (u', u'', ...)", sym)
                v = tmp.convert(Evaluator(tmp, FIELD).eval(node))
                if not v.is_polynomial():
                    _err(node, "rule right-hand sides must be differential polynomials")
                if (sym.text, order) in rule_map:
                    self.error(f"duplicate rule for {sym.text}", sym)
                rule_map[(sym.text, order)] = v.num
            try:
                self.field = DiffField.diffpoly(symbols, rule_map)
            except ConfigError as e:
                raise ConfigError(str(e).split(": ", 1)[-1], start.line, start.col) from None
            except ValueError as e:
                self.error(str(e), start)
        if self.cfg is not None:
            self.error("the field block must come before definitions and operators", start)
        self.cfg = SessionConfig(self.field)


def parse_config(text: str) -> SessionConfig:
    """Parse a session configuration; the first error is reported with its position."""
    try:
        return _ConfigParser(text).run()
    except ConfigError:
        raise
    except DimensionMismatch as e:
        raise ConfigError(str(e), code="DIMENSION_MISMATCH") from None
    except MatDresError as e:
        raise ConfigError(str(e), code=e.code) from None


def parse_factorization_json(data: dict, field: Optional[DiffField] = None) -> Factorization:
    """``{"unit": "...", "factors": [{"poly": "...", "multiplicity": k}, ...]}``."""
    try:
        factors = [(parse_poly(str(item["poly"]), field), int(item.get("multiplicity", 1)))
                   for item in data["factors"]]
    except (KeyError, TypeError) as e:
        raise ConfigError(f"malformed factorization: {e}") from None
    unit = data.get("unit", "1")
    unit = parse_gaussian(str(unit))
    return Factorization(unit, factors, "user")
