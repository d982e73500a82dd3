"""Normal-ordered polynomials in a^+, b^+, a, b under a central commutator table.

Every commutator in the table is a scalar (a :class:`Poly` in c, c*, d, d*),
so rewriting ``x y -> y x + [x, y]`` on an out-of-order adjacent pair always
terminates and the normal form does not depend on which pair is rewritten
first. ``normal_order`` accepts an optional RNG to pick the pair at random,
which the tests use to exercise that independence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from ..fock import TwoModeState, apply_word
from .coeffs import ONE, Num, Poly

A_DAG, B_DAG, A, B = "a^+", "b^+", "a", "b"
GENERATORS = (A_DAG, B_DAG, A, B)
RANK = {g: i for i, g in enumerate(GENERATORS)}
DAGGER = {A_DAG: A, A: A_DAG, B_DAG: B, B: B_DAG}

Word = tuple[str, ...]
Monomial = tuple[int, int, int, int]  # powers of a^+, b^+, a, b


def word_of(mono: Monomial) -> Word:
    return tuple(g for g, e in zip(GENERATORS, mono) for _ in range(e))


def monomial_of(word: Sequence[str]) -> Monomial:
    """Exponents of a normal-ordered word; raises ValueError otherwise."""
    word = tuple(word)
    for g in word:
        if g not in RANK:
            raise ValueError(f"unknown generator {g!r}")
    if not is_normal(word):
        raise ValueError(f"word {' '.join(word)!r} is not normal-ordered")
    return tuple(word.count(g) for g in GENERATORS)


def is_normal(word: Sequence[str]) -> bool:
    return all(RANK[x] <= RANK[y] for x, y in zip(word, word[1:]))


def _sort_key(mono: Monomial) -> tuple:
    return tuple(-e for e in mono)


@dataclass(frozen=True)
class CommutatorTable:
    """[a, a^+] = [b, b^+] = 1, [b, a] = c, [b, a^+] = d and the adjoint entries
    [a^+, b^+] = c*, [a, b^+] = d*. ``c`` and ``d`` may be numbers or polynomials."""

    c: Poly
    d: Poly

    def __post_init__(self):
        object.__setattr__(self, "c", Poly.coerce(self.c))
        object.__setattr__(self, "d", Poly.coerce(self.d))

    @classmethod
    def symbolic(cls) -> "CommutatorTable":
        return cls(Poly.symbol("c"), Poly.symbol("d"))

    @classmethod
    def canonical(cls) -> "CommutatorTable":
        return cls(Poly(), Poly())

    def with_values(self, c=None, d=None) -> "CommutatorTable":
        return CommutatorTable(self.c if c is None else c, self.d if d is None else d)

    def subs(self, values: dict) -> "CommutatorTable":
        return CommutatorTable(self.c.subs(values), self.d.subs(values))

    def is_canonical(self) -> bool:
        return self.c.is_zero() and self.d.is_zero()

    def entries(self) -> dict[tuple[str, str], Poly]:
        one = Poly.const(ONE)
        base = {
            (A, A_DAG): one,
            (B, B_DAG): one,
            (B, A): self.c,
            (B, A_DAG): self.d,
            (A_DAG, B_DAG): self.c.conj(),
            (A, B_DAG): self.d.conj(),
        }
        table = {}
        for (x, y), v in base.items():
            table[(x, y)] = v
            table[(y, x)] = -v
        for x in GENERATORS:
            table[(x, x)] = Poly()
        return table

    def bracket(self, x: str, y: str) -> Poly:
        return _entries(self)[(x, y)]

    def describe(self) -> dict[str, str]:
        listing = {}
        for x, y in ((A, A_DAG), (B, B_DAG), (B, A), (B, A_DAG), (A_DAG, B_DAG), (A, B_DAG)):
            listing[f"[{x},{y}]"] = str(self.bracket(x, y))
        return listing


@lru_cache(maxsize=None)
def _entries(table: CommutatorTable) -> dict:
    return table.entries()


class Expr:
    """Immutable normal-ordered operator polynomial: Monomial -> Poly."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean: dict[Monomial, Poly] = {}
        if terms:
            for mono, coeff in (terms.items() if isinstance(terms, dict) else terms):
                coeff = Poly.coerce(coeff)
                total = clean.get(mono, Poly()) + coeff
                if total:
                    clean[tuple(mono)] = total
                else:
                    clean.pop(tuple(mono), None)
        self._terms = dict(sorted(clean.items(), key=lambda kv: _sort_key(kv[0])))
        self._hash = None

    @classmethod
    def scalar(cls, value) -> "Expr":
        return cls({(0, 0, 0, 0): Poly.coerce(value)})

    @classmethod
    def generator(cls, name: str) -> "Expr":
        return cls({monomial_of((name,)): Poly.const(ONE)})

    @classmethod
    def from_word(cls, word: Sequence[str], coeff=ONE) -> "Expr":
        return cls({monomial_of(word): Poly.coerce(coeff)})

    @property
    def terms(self) -> dict[Monomial, Poly]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_scalar(self) -> bool:
        return all(m == (0, 0, 0, 0) for m in self._terms)

    def __add__(self, other: "Expr") -> "Expr":
        return Expr(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "Expr":
        return Expr({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Expr") -> "Expr":
        return self + (-other)

    def scale(self, factor) -> "Expr":
        factor = Poly.coerce(factor)
        return Expr({m: c * factor for m, c in self._terms.items()})

    def subs(self, values: dict) -> "Expr":
        return Expr({m: c.subs(values) for m, c in self._terms.items()})

    def symbols(self) -> set[str]:
        return set().union(*(c.symbols() for c in self._terms.values())) if self._terms else set()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Expr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        from .parser import format_expr

        return f"Expr({format_expr(self)})"


def _pick(word: Word, rng: random.Random | None) -> int | None:
    bad = [i for i in range(len(word) - 1) if RANK[word[i]] > RANK[word[i + 1]]]
    if not bad:
        return None
    return rng.choice(bad) if rng is not None else bad[0]


@lru_cache(maxsize=65536)
def _normal_cached(word: Word, table: CommutatorTable) -> Expr:
    return _normal(word, table, None)


def _normal(word: Word, table: CommutatorTable, rng) -> Expr:
    i = _pick(word, rng)
    if i is None:
        return Expr({tuple(word.count(g) for g in GENERATORS): Poly.const(ONE)})
    x, y = word[i], word[i + 1]
    swapped = word[:i] + (y, x) + word[i + 2:]
    recurse = _normal_cached if rng is None else (lambda w, t: _normal(w, t, rng))
    result = recurse(swapped, table)
    bracket = table.bracket(x, y)
    if bracket:
        result = result + recurse(word[:i] + word[i + 2:], table).scale(bracket)
    return result


def normal_order(word: Iterable[str], table: CommutatorTable, rng: random.Random | None = None) -> Expr:
    """Normal form of an operator word (leftmost factor written first)."""
    word = tuple(word)
    for g in word:
        if g not in RANK:
            raise ValueError(f"unknown generator {g!r}")
    if rng is None:
        return _normal_cached(word, table)
    return _normal(word, table, rng)


def normal_order_terms(terms: Iterable[tuple], table: CommutatorTable, rng=None) -> Expr:
    """Normal form of a sum of (coefficient, word) pairs."""
    out = Expr()
    for coeff, word in terms:
        out = out + normal_order(word, table, rng).scale(coeff)
    return out


def product(x: Expr, y: Expr, table: CommutatorTable) -> Expr:
    pieces = []
    for m1, c1 in x.items():
        w1 = word_of(m1)
        for m2, c2 in y.items():
            for m, c in normal_order(w1 + word_of(m2), table).items():
                pieces.append((m, c * c1 * c2))
    return Expr(pieces)


def commutator(x: Expr, y: Expr, table: CommutatorTable) -> Expr:
    return product(x, y, table) - product(y, x, table)


def adjoint_word(word: Sequence[str]) -> Word:
    return tuple(DAGGER[g] for g in reversed(tuple(word)))


def adjoint(expr: Expr, table: CommutatorTable) -> Expr:
    """Hermitian conjugate: reverse words, swap daggers, conjugate coefficients."""
    return normal_order_terms(((c.conj(), adjoint_word(word_of(m))) for m, c in expr.items()), table)


def coefficient_of(expr: Expr, monomial: Sequence[str] | Monomial) -> Poly:
    """Coefficient of a normal-ordered monomial given as a word or exponent tuple."""
    if len(monomial) == 4 and all(isinstance(e, int) for e in monomial):
        mono = tuple(monomial)
    else:
        mono = monomial_of(monomial)
    return expr.terms.get(mono, Poly())


def act(expr: Expr, state: TwoModeState) -> TwoModeState:
    """Action on a two-mode state; only defined for numeric coefficients."""
    out = TwoModeState()
    for mono, coeff in expr.items():
        if not coeff.is_const():
            raise ValueError("cannot represent symbolic coefficients on states")
        out = out + complex(coeff.const_value()) * apply_word(word_of(mono), state)
    return out


def num(x) -> Poly:
    return Poly.const(Num(x))
