"""Canonical rendering and parsing of polynomial expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom ('^' INT)?
    atom   := INT ('/' INT)? | NAME | '(' expr ')'

``^`` is only accepted on even generators; juxtaposition is an error.
"""
from __future__ import annotations

import re
from fractions import Fraction

__all__ = ["ParseError", "tokenize", "parse_expression", "format_polynomial", "format_rational", "monomial_key"]


class ParseError(ValueError):
    """Input error with a 1-based source position."""

    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[^\W\d]\w*)|(?P<op>[-+*^/()]))", re.UNICODE)


def tokenize(text: str, line: int = 1, col0: int = 1):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[pos + bad]!r}", line, col0 + pos + bad)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), line, col0 + start))
        pos = m.end()
    out.append(("end", "", line, col0 + len(text)))
    return out


class _Parser:
    def __init__(self, tokens, ctx, strict):
        self.toks = tokens
        self.i = 0
        self.ctx = ctx
        self.strict = strict

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], tok[3])

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok)
        return tok

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("name", "int") or tok[1] == "(":
                self.error("juxtaposition is not allowed; use '*'")
            self.error(f"unexpected token {tok[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[1] == "*":
            self.take()
            value = value * self.factor()
        return value

    def factor(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.factor()
        if self.peek()[1] == "+":
            self.take()
            return self.factor()
        tok = self.peek()
        value = self.atom()
        if self.peek()[1] == "^":
            caret = self.take()
            exp_tok = self.take()
            if exp_tok[0] != "int":
                self.error("exponent must be a non-negative integer", exp_tok)
            if tok[0] != "name":
                self.error("'^' is only allowed on generator names", caret)
            if self.ctx.is_odd(tok[1]) and self.strict:
                self.error(f"odd generator {tok[1]!r} cannot be raised to a power", caret)
            value = value ** int(exp_tok[1])
        return value

    def atom(self):
        tok = self.take()
        kind, text = tok[0], tok[1]
        if kind == "int":
            num = int(text)
            if self.peek()[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "int":
                    self.error("'/' is only allowed between integer literals", den)
                if int(den[1]) == 0:
                    self.error("division by zero", den)
                return self.ctx.const(Fraction(num, int(den[1])))
            return self.ctx.const(num)
        if kind == "name":
            if text not in self.ctx:
                self.error(f"unknown generator {text!r}", tok)
            return self.ctx.gen(text)
        if text == "(":
            value = self.expr()
            self.expect(")")
            return value
        self.error(f"unexpected token {text or 'end of input'!r}", tok)


def parse_expression(text: str, ctx, line: int = 1, col: int = 1, strict: bool = True):
    """Parse ``text`` into a :class:`~multigraded.algebra.Polynomial` of ``ctx``."""
    return _Parser(tokenize(text, line, col), ctx, strict).parse()


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def monomial_key(mono: tuple):
    """Graded-lexicographic order: total degree first, then earlier generators first."""
    return (sum(mono), tuple(-e for e in mono))


def _format_monomial(mono, names):
    parts = []
    for e, n in zip(mono, names):
        if e == 1:
            parts.append(n)
        elif e > 1:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def format_polynomial(f) -> str:
    if not f.terms:
        return "0"
    names = f.ctx.names
    out = []
    for mono in sorted(f.terms, key=monomial_key):
        c = f.terms[mono]
        body = _format_monomial(mono, names)
        mag = abs(c)
        if not body:
            piece = format_rational(mag)
        elif mag == 1:
            piece = body
        else:
            piece = f"{format_rational(mag)}*{body}"
        if not out:
            out.append(piece if c > 0 else f"-{piece}")
        else:
            out.append(f"+ {piece}" if c > 0 else f"- {piece}")
    return " ".join(out)
