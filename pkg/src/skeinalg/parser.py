"""Text grammar for algebra elements and curve products.

Atoms: generator letters of the chosen presentation (a b g g1 g2 x1 x2 x3),
scalars d0 d1 v1 v2, A and its square root Ah, integer literals, and C(n,k)
curve atoms in curve-aware commands.  Operators + - * ^ with ^ tightest and *
binding tighter than +; * is left associative; whitespace is insignificant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .coeff import A, Ah, CoeffElem, V1, V2
from .freealg import RewriteSystem, SkeinElem, word_of


class ParseError(ValueError):
    pass


_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)"
                       r"|(?P<op>[-+*^(),]))")

_SCALARS = {
    "A": lambda: A(),
    "Ah": lambda: Ah(),
    "d0": lambda: CoeffElem.monomial(d0=1),
    "d1": lambda: CoeffElem.monomial(d1=1),
    "v1": lambda: V1(),
    "v2": lambda: V2(),
}


@dataclass
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == m.start():
            if text[pos:].strip() == "":
                break
            raise ParseError(f"syntax error at position {pos}: {text[pos:pos + 8]!r}")
        for kind in ("int", "name", "op"):
            if m.group(kind) is not None:
                out.append(_Token(kind, m.group(kind), m.start(kind)))
                break
        pos = m.end()
    return out


class _Parser:
    """Recursive-descent parser producing unreduced elements over a system."""

    def __init__(self, text: str, sysm: RewriteSystem, allow_curves: bool):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.sysm = sysm
        self.allow_curves = allow_curves
        self.curves: list[tuple[int, int]] = []

    def peek(self) -> _Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, text: str | None = None) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression")
        if text is not None and tok.text != text:
            raise ParseError(f"expected {text!r} at position {tok.pos}")
        self.i += 1
        return tok

    # expr := ['-'] term (('+'|'-') term)*
    def expr(self):
        tok = self.peek()
        negate = False
        if tok and tok.text == "-":
            self.take()
            negate = True
        value = self.term()
        if negate:
            value = self._negate(value)
        while (tok := self.peek()) and tok.text in "+-":
            self.take()
            rhs = self.term()
            value = self._add(value, self._negate(rhs) if tok.text == "-" else rhs)
        return value

    # term := factor ('*' factor)*
    def term(self):
        value = self.factor()
        while (tok := self.peek()) and tok.text == "*":
            self.take()
            value = self._mul(value, self.factor())
        return value

    # factor := atom ('^' exponent)?
    def factor(self):
        value = self.atom()
        if (tok := self.peek()) and tok.text == "^":
            self.take()
            value = self._pow(value, self._exponent())
        return value

    def _exponent(self) -> int:
        tok = self.peek()
        if tok is None:
            raise ParseError("missing exponent")
        if tok.text == "(":
            self.take()
            sign = 1
            if self.peek() and self.peek().text == "-":
                self.take()
                sign = -1
            n = int(self.take().text)
            self.take(")")
            return sign * n
        if tok.text == "-":
            self.take()
            return -int(self.take().text)
        if tok.kind == "int":
            return int(self.take().text)
        raise ParseError(f"bad exponent at position {tok.pos}")

    def atom(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression")
        if tok.text == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        if tok.kind == "int":
            self.take()
            return SkeinElem.from_scalar(int(tok.text))
        if tok.kind == "name":
            self.take()
            name = tok.text
            if name == "C":
                if not self.allow_curves:
                    raise ParseError(
                        f"curve atom at position {tok.pos} is only accepted "
                        "in curve-aware commands")
                self.take("(")
                sign = 1
                if self.peek() and self.peek().text == "-":
                    self.take()
                    sign = -1
                n = sign * int(self.take().text)
                self.take(",")
                sign = 1
                if self.peek() and self.peek().text == "-":
                    self.take()
                    sign = -1
                k = sign * int(self.take().text)
                self.take(")")
                self.curves.append((n, k))
                return ("curve", (n, k))
            if name in self.sysm.letters:
                return SkeinElem.from_word(word_of(self.sysm, name))
            if name in _SCALARS:
                return SkeinElem.from_scalar(_SCALARS[name]())
            raise ParseError(f"unknown atom {name!r} at position {tok.pos}")
        raise ParseError(f"unexpected {tok.text!r} at position {tok.pos}")

    # -- value combinators (curve markers only combine under *) -----------------

    def _ensure_elem(self, v) -> SkeinElem:
        if isinstance(v, SkeinElem):
            return v
        raise ParseError("curve atoms cannot enter +, -, ^ arithmetic")

    def _negate(self, v):
        return -self._ensure_elem(v)

    def _add(self, a, b):
        return self._ensure_elem(a) + self._ensure_elem(b)

    def _mul(self, a, b):
        if isinstance(a, tuple) or isinstance(b, tuple):
            return ("curve-product", a, b)
        return a.concat(b)

    def _pow(self, v, k: int):
        v = self._ensure_elem(v)
        if k >= 0:
            out = SkeinElem.one()
            for _ in range(k):
                out = out.concat(v)
            return out
        if len(v.terms) == 1 and () in v.terms:
            return SkeinElem.from_scalar(v.terms[()] ** k)
        raise ParseError("negative powers are defined for invertible scalars only")


def parse_expression(text: str, sysm: RewriteSystem) -> SkeinElem:
    """Parse an element of the presented algebra (unreduced)."""
    p = _Parser(text, sysm, allow_curves=False)
    value = p.expr()
    if p.peek() is not None:
        raise ParseError(f"trailing input at position {p.peek().pos}")
    return p._ensure_elem(value)


def parse_curve_product(text: str) -> tuple[tuple[int, int], tuple[int, int]]:
    """Parse 'C(n1,k1)*C(n2,k2)' for the curve-aware commands."""
    from .freealg import make_presentation, RY022_3GEN
    p = _Parser(text, make_presentation(RY022_3GEN), allow_curves=True)
    p.expr()
    if p.peek() is not None:
        raise ParseError(f"trailing input at position {p.peek().pos}")
    if len(p.curves) != 2:
        raise ParseError("expected a product of exactly two curve atoms C(n,k)")
    return p.curves[0], p.curves[1]
