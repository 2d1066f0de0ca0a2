"""Recursive-descent parser for rational expressions in ``z``.

Grammar::

    expr    = term { ("+" | "-") term }
    term    = unary { ("*" | "/") unary }
    unary   = ("+" | "-") unary | power
    power   = atom [ "^" integer ]
    atom    = integer | "z" | "(" expr ")"

Rational literals such as ``3/2`` are ordinary divisions.  Exponents are
nonnegative integer literals; ``^`` binds tighter than unary minus, so
``-z^2`` is ``-(z^2)``.
"""

from __future__ import annotations

import re

from .poly import Poly
from .ratfunc import ArithError, RatFunc


class ParseError(ArithError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__("%s at position %d: %r" % (message, pos, text))


_TOKEN = re.compile(r"\s*(?:(\d+)|(z)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    text = text.replace("−", "-")
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError("unexpected character %r" % text[bad], text, bad)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(("var", "z", start))
        else:
            op = m.group(3)
            toks.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, self.text, tok[2])

    def expect(self, value):
        tok = self.take()
        if tok[1] != value or tok[0] != "op":
            raise self.error("expected %r" % value, tok)

    def parse(self) -> RatFunc:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            raise self.error("unexpected %r" % self.peek()[1])
        return value

    def expr(self) -> RatFunc:
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RatFunc:
        value = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            tok = self.take()
            rhs = self.unary()
            if tok[1] == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", self.text, tok[2])
                value = value / rhs
        return value

    def unary(self) -> RatFunc:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            value = self.unary()
            return -value if tok[1] == "-" else value
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise self.error("exponent must be a nonnegative integer literal", tok)
            return base ** int(tok[1])
        return base

    def atom(self) -> RatFunc:
        tok = self.take()
        kind, value, _ = tok
        if kind == "int":
            return RatFunc(int(value))
        if kind == "var":
            return RatFunc(Poly.z())
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error("unexpected %r" % value, tok)


def parse_ratfunc(text: str) -> RatFunc:
    """Parse an expression in z into a reduced rational function."""
    return _Parser(text).parse()
