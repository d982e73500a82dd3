"""Recursive-descent reader and printer for boson operator expressions.

Grammar::

    expr      := ["+" | "-"] term (("+" | "-") term)*
    term      := factor ("*"? factor)*
    factor    := scalar | generator | "(" expr ")" | "[" expr "," expr "]"
    generator := ("a" | "b") ["^+"]
    scalar    := number | "i" | ("c" | "d") ["^*"]
    number    := digits ["." digits] ["/" digits]

Juxtaposition is the operator product and ``[x, y]`` the commutator. Every
identifier is a single letter, so ``ab`` reads as ``a b``. The printer emits
text in the same grammar; reading it back gives the same expression.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import CommutatorTable, Expr, commutator, product, word_of
from .coeffs import ONE, Num, Poly, format_poly


class ParseError(ValueError):
    def __init__(self, message: str, position: int, expected=()):
        self.position = position
        self.expected = tuple(sorted(expected))
        hint = f"; expected one of {', '.join(self.expected)}" if self.expected else ""
        super().__init__(f"{message} at position {position}{hint}")


class UnknownIdentifierError(ParseError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, IDENT, OP, END
    text: str
    pos: int


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<NUM>\d+(?:\.\d+)?(?:/\d+)?)|(?P<IDENT>[A-Za-z](?:\^[+*])?)|(?P<OP>[-+*()\[\],])|(?P<BAD>\S))"
)

_FACTOR_START = ("number", "a", "a^+", "b", "b^+", "c", "c^*", "d", "d^*", "i", "(", "[")
_KNOWN = {"a", "a^+", "b", "b^+", "c", "c^*", "d", "d^*", "i"}


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastgroup)
        if m.lastgroup == "BAD":
            raise ParseError(f"unexpected character {m.group('BAD')!r}", start, _FACTOR_START)
        tokens.append(Token(m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    tokens.append(Token("END", "", len(text)))
    return tokens


def _number(text: str) -> Num:
    if "/" in text:
        head, den = text.split("/")
        return Num(Fraction(head) / Fraction(den))
    return Num(Fraction(text))


class Parser:
    def __init__(self, text: str, table: CommutatorTable):
        self.text = text
        self.table = table
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def _advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def _expect(self, op: str) -> None:
        if self.tok.kind == "OP" and self.tok.text == op:
            self._advance()
            return
        raise ParseError(f"unexpected {self._describe(self.tok)}", self.tok.pos, (op,))

    @staticmethod
    def _describe(tok: Token) -> str:
        return "end of input" if tok.kind == "END" else repr(tok.text)

    def _at_factor(self) -> bool:
        tok = self.tok
        return tok.kind in ("NUM", "IDENT") or (tok.kind == "OP" and tok.text in "([")

    def parse(self) -> Expr:
        value = self.expr()
        if self.tok.kind != "END":
            raise ParseError(f"unexpected {self._describe(self.tok)}", self.tok.pos,
                             ("+", "-", "*", "end of input") + _FACTOR_START)
        return value

    def expr(self) -> Expr:
        negate = False
        if self.tok.kind == "OP" and self.tok.text in "+-":
            negate = self._advance().text == "-"
        value = self.term()
        if negate:
            value = -value
        while self.tok.kind == "OP" and self.tok.text in "+-":
            op = self._advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Expr:
        value = self.factor()
        while True:
            if self.tok.kind == "OP" and self.tok.text == "*":
                self._advance()
                value = product(value, self.factor(), self.table)
            elif self._at_factor():
                value = product(value, self.factor(), self.table)
            else:
                return value

    def factor(self) -> Expr:
        tok = self.tok
        if tok.kind == "NUM":
            self._advance()
            return Expr.scalar(_number(tok.text))
        if tok.kind == "IDENT":
            if tok.text not in _KNOWN:
                raise UnknownIdentifierError(f"unknown identifier {tok.text!r}", tok.pos, _KNOWN)
            self._advance()
            if tok.text == "i":
                return Expr.scalar(Num(0, 1))
            if tok.text[0] in "cd":
                return Expr.scalar(Poly.symbol(tok.text))
            return Expr.generator(tok.text)
        if tok.kind == "OP" and tok.text == "(":
            self._advance()
            value = self.expr()
            self._expect(")")
            return value
        if tok.kind == "OP" and tok.text == "[":
            self._advance()
            left = self.expr()
            self._expect(",")
            right = self.expr()
            self._expect("]")
            return commutator(left, right, self.table)
        raise ParseError(f"unexpected {self._describe(tok)}", tok.pos, _FACTOR_START)


def parse_expression(text: str, table: CommutatorTable | None = None) -> Expr:
    """Parse and normal-order ``text``; the table defaults to the undeformed one."""
    return Parser(text, table if table is not None else CommutatorTable.canonical()).parse()


def _negative(value: Num) -> bool:
    return (value.im == 0 and value.re < 0) or (value.re == 0 and value.im < 0)


def format_expr(expr: Expr) -> str:
    """Deterministic grammar-conformant text for a normal-ordered expression."""
    pieces: list[tuple[str, str]] = []
    for mono, coeff in expr.items():
        word = " ".join(word_of(mono))
        terms = list(coeff.items())
        if not word:
            for exps, value in terms:
                single = Poly({exps: -value if _negative(value) else value})
                pieces.append(("-" if _negative(value) else "+", format_poly(single)))
            continue
        if len(terms) > 1:
            pieces.append(("+", f"({format_poly(coeff)}) {word}"))
            continue
        exps, value = terms[0]
        sign = "-" if _negative(value) else "+"
        mag = Poly({exps: -value if sign == "-" else value})
        if mag == Poly.const(ONE):
            pieces.append((sign, word))
        else:
            pieces.append((sign, f"{format_poly(mag)} {word}"))
    if not pieces:
        return "0"
    first_sign, first = pieces[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text

