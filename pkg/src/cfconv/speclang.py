"""Parser for the ``.cfspec`` sequence-description language.

A spec is a list of ``name: body;`` clauses::

    even: -36/23;        # a_{2n} for n >= 1
    odd: 1/23;           # a_{2n+1} for n >= 0, so a_1 = odd(0)
    b: 1;                # b_n (default 1)
    b0: 0;               # constant term (default 0)

or ``list: [..];`` / ``period: [..];`` for literal and cyclic a_n.

Expressions support ``+ - * / ^``, unary minus, parentheses, ``sqrt(..)``,
``abs(..)``, integer/decimal literals, the imaginary unit ``i`` (also as a
suffix, ``3i``) and the variable ``n``. ``^`` binds tighter than unary minus
and takes integer exponents only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InexactError, SpecEvalError, SpecSemanticError, SpecSyntaxError
from .scalars import DEFAULT_PRECISION, EXACT, FloatBackend
from .sequence import SequenceSpec

CLAUSES = ("list", "period", "even", "odd", "b", "b0")
FUNCTIONS = ("sqrt", "abs")
MAX_EXPONENT = 4096
MAX_DEPTH = 200

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<number>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()\[\],:;])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise SpecSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind == "number":
            end = m.end()
            # "3i" is an imaginary literal
            if end < len(text) and text[end] == "i" and not _ident_char(text, end + 1):
                tokens.append(Token("imag", chunk, line, col))
                pos = end + 1
                continue
            if end < len(text) and (text[end].isalpha() or text[end] == "_"):
                raise SpecSyntaxError(f"malformed number {chunk + text[end]!r}", line, col)
            tokens.append(Token("number", chunk, line, col))
        elif kind == "name":
            tokens.append(Token("name", chunk, line, col))
        elif kind == "op":
            tokens.append(Token(chunk, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    col = pos - line_start + 1
    tokens.append(Token("eof", "", line, col))
    return tokens


def _ident_char(text, i):
    return i < len(text) and (text[i].isalnum() or text[i] == "_")


# -- AST --------------------------------------------------------------------
# Nodes are plain tuples so structural equality comes for free:
#   ("num", lexeme)  ("imag", lexeme)  ("var",)  ("neg", x)
#   ("add"|"sub"|"mul"|"div"|"pow", left, right)  ("call", name, arg)

_BINARY = {"+": "add", "-": "sub", "*": "mul", "/": "div"}


@lru_cache(maxsize=4096)
def _literal_value(lexeme: str) -> Fraction:
    mantissa, _, exp = lexeme.lower().partition("e")
    if exp and abs(int(exp)) > MAX_EXPONENT:
        raise ValueError("exponent too large")
    return Fraction(mantissa) * (Fraction(10) ** int(exp or 0))


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.depth = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return SpecSyntaxError(message, tok.line, tok.column)

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect(self, kind, what=None) -> Token:
        if self.tok.kind != kind:
            found = "end of input" if self.tok.kind == "eof" else repr(self.tok.text)
            raise self.error(f"expected {what or repr(kind)}, found {found}")
        return self.advance()

    # spec := clause+
    def spec(self):
        clauses = []
        if self.tok.kind == "eof":
            raise self.error("empty spec: expected at least one clause")
        while self.tok.kind != "eof":
            clauses.append(self.clause())
        return clauses

    def clause(self):
        head = self.tok
        if head.kind != "name" or head.text not in CLAUSES:
            raise self.error(f"expected a clause name ({', '.join(CLAUSES)}), found {head.text or 'end of input'!r}")
        self.advance()
        self.expect(":", "':'")
        if self.tok.kind == "[":
            body = ("list_body", tuple(self.literal_list()))
        else:
            body = self.expr()
        self.expect(";", "';'")
        return head, body

    def literal_list(self):
        self.expect("[", "'['")
        items = [self.expr()]
        while self.tok.kind == ",":
            self.advance()
            items.append(self.expr())
        self.expect("]", "']' or ','")
        return items

    def expr(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.error("expression nested too deeply")
        node = self.term()
        while self.tok.kind in ("+", "-"):
            op = _BINARY[self.advance().kind]
            node = (op, node, self.term())
        self.depth -= 1
        return node

    def term(self):
        node = self.unary()
        while self.tok.kind in ("*", "/"):
            op = _BINARY[self.advance().kind]
            node = (op, node, self.unary())
        return node

    def unary(self):
        if self.tok.kind == "-":
            self.advance()
            self._enter()
            node = ("neg", self.unary())
            self.depth -= 1
            return node
        if self.tok.kind == "+":
            self.advance()
            return self.unary()
        return self.power()

    def _enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.error("expression nested too deeply")

    def power(self):
        base = self.atom()
        if self.tok.kind == "^":
            self.advance()
            self._enter()
            exponent = self.unary()
            self.depth -= 1
            return ("pow", base, exponent)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "number":
            self.advance()
            try:
                _literal_value(t.text)
            except ValueError:
                raise self.error(f"numeric literal {t.text!r} out of range", t)
            return ("num", t.text)
        if t.kind == "imag":
            self.advance()
            try:
                _literal_value(t.text)
            except ValueError:
                raise self.error(f"numeric literal {t.text!r} out of range", t)
            return ("imag", t.text)
        if t.kind == "name":
            self.advance()
            if t.text == "n":
                return ("var",)
            if t.text == "i":
                return ("imag", "1")
            if t.text in FUNCTIONS:
                self.expect("(", f"'(' after {t.text}")
                arg = self.expr()
                self.expect(")", "')'")
                return ("call", t.text, arg)
            raise self.error(f"unknown name {t.text!r}", t)
        if t.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")", "')'")
            return node
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise self.error(f"expected an expression, found {found}")


# -- evaluation ---------------------------------------------------------------

def uses_n(node) -> bool:
    if node[0] == "var":
        return True
    return any(isinstance(c, tuple) and uses_n(c) for c in node[1:])


def evaluate(node, n: int, backend=EXACT):
    """Value of an expression AST at index n, native to ``backend``.

    The exact backend raises InexactError for irrational square roots and
    moduli; callers fall back to a float backend.
    """
    kind = node[0]
    if kind == "num":
        return backend.from_fraction(_literal_value(node[1]))
    if kind == "imag":
        return backend.from_fraction(Fraction(0), _literal_value(node[1]))
    if kind == "var":
        return backend.from_fraction(Fraction(n))
    if kind == "neg":
        return -evaluate(node[1], n, backend)
    if kind == "call":
        arg = evaluate(node[2], n, backend)
        return backend.sqrt(arg) if node[1] == "sqrt" else backend.abs(arg)
    left = evaluate(node[1], n, backend)
    if kind == "pow":
        k = _integer_exponent(evaluate(node[2], n, backend), backend)
        if not left and k < 0:
            raise ZeroDivisionError("zero to a negative power")
        return left ** k
    right = evaluate(node[2], n, backend)
    if kind == "add":
        return left + right
    if kind == "sub":
        return left - right
    if kind == "mul":
        return left * right
    if not right:
        raise ZeroDivisionError("division by zero")
    return left / right


def _integer_exponent(value, backend) -> int:
    re_part, im_part = backend.to_fractions(value)
    if im_part or re_part.denominator != 1:
        raise SpecEvalError(f"exponent {value} is not an integer")
    k = int(re_part)
    if abs(k) > MAX_EXPONENT:
        raise SpecEvalError(f"exponent {k} exceeds the limit {MAX_EXPONENT}")
    return k


@dataclass(frozen=True)
class Expression:
    """A compiled expression in n, usable as a criterion parameter sequence."""

    node: tuple
    text: str

    @property
    def constant(self) -> bool:
        return not uses_n(self.node)

    def __call__(self, n: int, backend=EXACT):
        try:
            return evaluate(self.node, n, backend)
        except ZeroDivisionError as e:
            raise SpecEvalError(str(e), n) from None


def parse_expr(text: str) -> Expression:
    p = _Parser(text)
    node = p.expr()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r} after expression")
    return Expression(node, to_text(node))


# -- pretty printing ----------------------------------------------------------

_LEVEL = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4}
_SYMBOL = {"add": " + ", "sub": " - ", "mul": "*", "div": "/"}


def to_text(node, level: int = 0) -> str:
    """Canonical text of an expression; parses back to the same AST."""
    kind = node[0]
    if kind == "num":
        return node[1]
    if kind == "imag":
        return "i" if node[1] == "1" else node[1] + "i"
    if kind == "var":
        return "n"
    if kind == "call":
        return f"{node[1]}({to_text(node[2])})"
    own = _LEVEL[kind]
    if kind == "neg":
        s = "-" + to_text(node[1], 3)
    elif kind == "pow":
        s = to_text(node[1], 5) + "^" + to_text(node[2], 3)
    else:
        s = to_text(node[1], own) + _SYMBOL[kind] + to_text(node[2], own + 1)
    return f"({s})" if own < level else s


def _body_text(body) -> str:
    if body[0] == "list_body":
        return "[" + ", ".join(to_text(x) for x in body[1]) + "]"
    return to_text(body)


# -- spec assembly ------------------------------------------------------------

def _element_rule(node, index_map, label):
    def rule(n, backend):
        try:
            return evaluate(node, index_map(n), backend)
        except ZeroDivisionError as e:
            raise SpecEvalError(f"{label}: {e}", n) from None

    return rule


def _list_rule(items, label):
    def rule(n, backend):
        try:
            return evaluate(items[(n - 1) % len(items)], n, backend)
        except ZeroDivisionError as e:
            raise SpecEvalError(f"{label}: {e}", n) from None

    return rule


def parse_spec(text: str) -> SequenceSpec:
    """Parse DSL text into a SequenceSpec (elements are evaluated lazily)."""
    try:
        parser = _Parser(text)
        clauses = parser.spec()
    except RecursionError:
        raise SpecSyntaxError("expression nested too deeply", 1, 1) from None

    seen = {}
    for head, body in clauses:
        if head.text in seen:
            raise SpecSemanticError(f"duplicate clause {head.text!r}", head.line, head.column)
        seen[head.text] = (head, body)

    def conflict(a, b):
        head = seen[b][0]
        return SpecSemanticError(f"clause {b!r} conflicts with {a!r}", head.line, head.column)

    for x, y in (("list", "period"), ("list", "even"), ("list", "odd"),
                 ("period", "even"), ("period", "odd")):
        if x in seen and y in seen:
            raise conflict(x, y)

    def need_list(name):
        head, body = seen[name]
        if body[0] != "list_body":
            raise SpecSemanticError(f"{name!r} needs a bracketed list", head.line, head.column)
        for item in body[1]:
            if uses_n(item):
                raise SpecSemanticError(f"{name!r} entries must not use n", head.line, head.column)
        return body[1]

    def need_expr(name):
        head, body = seen[name]
        if body[0] == "list_body":
            raise SpecSemanticError(f"{name!r} needs an expression, not a list", head.line, head.column)
        return body

    b_rule, b_period, b_const = None, 1, True
    if "b" in seen:
        head, body = seen["b"]
        if body[0] == "list_body":
            items = need_list("b")
            b_rule, b_period = _list_rule(items, "b"), len(items)
        elif body != ("num", "1"):
            b_rule = _element_rule(body, lambda n: n, "b")
            b_const = not uses_n(body)
            b_period = 1 if b_const else 0

    b0_rule = None
    if "b0" in seen:
        node = need_expr("b0")
        if uses_n(node):
            head = seen["b0"][0]
            raise SpecSemanticError("'b0' must not use n", head.line, head.column)
        if node != ("num", "0"):
            b0_rule = lambda backend, node=node: _eval_const(node, backend, "b0")

    if "list" in seen or "period" in seen:
        name = "list" if "list" in seen else "period"
        items = need_list(name)
        a_rule = _list_rule(items, name)
        length = len(items) if name == "list" else None
        if name == "period":
            period = None if b_period == 0 else _lcm(len(items), b_period)
        else:
            period = None
        kind = name if name == "list" else "periodic"
    elif "even" in seen or "odd" in seen:
        for name in ("even", "odd"):
            if name not in seen:
                other = "odd" if name == "even" else "even"
                head = seen[other][0]
                raise SpecSemanticError(f"{other!r} given without {name!r}", head.line, head.column)
        even, odd = need_expr("even"), need_expr("odd")
        ev = _element_rule(even, lambda n: n // 2, "even")
        od = _element_rule(odd, lambda n: (n - 1) // 2, "odd")
        a_rule = lambda n, backend: ev(n, backend) if n % 2 == 0 else od(n, backend)
        length = None
        constant = not uses_n(even) and not uses_n(odd)
        period = 2 if constant and b_period in (1, 2) else None
        kind = "parity"
    else:
        raise SpecSemanticError("spec defines no partial numerators (need list, period or even/odd)")

    canonical = canonical_text(seen)
    return SequenceSpec(a_rule, b_rule, b0_rule, length, kind, period, canonical)


def _lcm(p, q):
    from math import gcd

    return p * q // gcd(p, q)


def _eval_const(node, backend, label):
    try:
        return evaluate(node, 0, backend)
    except ZeroDivisionError as e:
        raise SpecEvalError(f"{label}: {e}") from None


def canonical_text(clauses: dict) -> str:
    parts = []
    for name in CLAUSES:
        if name in clauses:
            parts.append(f"{name}: {_body_text(clauses[name][1])};")
    return " ".join(parts)


def pretty(spec: SequenceSpec) -> str:
    """DSL text for a spec that came from the parser."""
    if spec.text is None:
        raise ValueError("spec has no DSL form (constructed programmatically)")
    return spec.text


def eval_term(spec: SequenceSpec, n: int, backend=None, precision: int = DEFAULT_PRECISION):
    """(a_n, b_n), exact when possible, otherwise big-float at ``precision``."""
    if backend is not None:
        return spec.a(n, backend), spec.b(n, backend)
    try:
        return spec.a(n, EXACT), spec.b(n, EXACT)
    except InexactError:
        fb = FloatBackend(precision)
        return spec.a(n, fb), spec.b(n, fb)


def load_spec(path) -> SequenceSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())

