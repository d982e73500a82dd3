"""Exact coefficient arithmetic: Gaussian rationals and polynomials in c, c*, d, d*."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

SYMBOLS = ("c", "c^*", "d", "d^*")
_CONJ_SYMBOL = {"c": "c^*", "c^*": "c", "d": "d^*", "d^*": "d"}
FAMILY = {"c": "c", "c^*": "c", "d": "d", "d^*": "d"}


@total_ordering
class Num:
    """Exact complex number re + im*i with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, Num):
            re, im = re.re, re.im
        elif isinstance(re, complex):
            re, im = re.real, re.imag
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x) -> "Num":
        return x if isinstance(x, Num) else cls(x)

    def __add__(self, other):
        other = Num.coerce(other)
        return Num(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Num(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-Num.coerce(other))

    def __rsub__(self, other):
        return Num.coerce(other) - self

    def __mul__(self, other):
        o = Num.coerce(other)
        return Num(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Num.coerce(other)
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero")
        return self * Num(o.re / den, -o.im / den)

    def conj(self) -> "Num":
        return Num(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = Num.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __lt__(self, other):
        o = Num.coerce(other)
        return (self.re, self.im) < (o.re, o.im)

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"Num({self})"

    def __str__(self):
        return format_num(self)


def _frac_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_num(x: Num) -> str:
    """Grammar-conformant text, e.g. ``3``, ``1/2``, ``2 i``, ``(1 + 2 i)``."""
    if x.im == 0:
        return _frac_text(x.re)
    imag = "i" if abs(x.im) == 1 else f"{_frac_text(abs(x.im))} i"
    if x.re == 0:
        return imag if x.im > 0 else f"-{imag}"
    sign = "+" if x.im > 0 else "-"
    return f"({_frac_text(x.re)} {sign} {imag})"


ONE = Num(1)
ZERO = Num(0)


def _key(exps: tuple) -> tuple:
    return (sum(exps), tuple(-e for e in exps))


class Poly:
    """Polynomial in the commuting symbols c, c*, d, d* with Num coefficients.

    Terms map exponent 4-tuples (c, c*, d, d*) to nonzero coefficients.
    Instances are immutable and hashable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for exps, value in (terms.items() if isinstance(terms, dict) else terms):
                value = Num.coerce(value)
                exps = tuple(exps)
                total = clean.get(exps, ZERO) + value
                if total:
                    clean[exps] = total
                else:
                    clean.pop(exps, None)
        self._terms = dict(sorted(clean.items(), key=lambda kv: _key(kv[0])))
        self._hash = None

    @classmethod
    def const(cls, value) -> "Poly":
        return cls({(0, 0, 0, 0): value})

    @classmethod
    def symbol(cls, name: str) -> "Poly":
        exps = [0, 0, 0, 0]
        exps[SYMBOLS.index(name)] = 1
        return cls({tuple(exps): ONE})

    @classmethod
    def coerce(cls, x) -> "Poly":
        if isinstance(x, Poly):
            return x
        return cls.const(x)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_const(self) -> bool:
        return all(exps == (0, 0, 0, 0) for exps in self._terms)

    def const_value(self) -> Num:
        if not self.is_const():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get((0, 0, 0, 0), ZERO)

    def symbols(self) -> set[str]:
        return {SYMBOLS[i] for exps in self._terms for i, e in enumerate(exps) if e}

    def __add__(self, other):
        other = Poly.coerce(other)
        return Poly(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return Poly({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-Poly.coerce(other))

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        other = Poly.coerce(other)
        out = []
        for e1, v1 in self._terms.items():
            for e2, v2 in other._terms.items():
                out.append((tuple(a + b for a, b in zip(e1, e2)), v1 * v2))
        return Poly(out)

    __rmul__ = __mul__

    def conj(self) -> "Poly":
        return Poly({(e[1], e[0], e[3], e[2]): v.conj() for e, v in self._terms.items()})

    def subs(self, values: dict) -> "Poly":
        """Substitute symbols by polynomials; conjugate symbols follow automatically
        when only one of a pair is given."""
        full = dict(values)
        for name, val in values.items():
            twin = _CONJ_SYMBOL[name]
            if twin not in full:
                full[twin] = Poly.coerce(val).conj()
        result = Poly()
        for exps, value in self._terms.items():
            term = Poly.const(value)
            for name, e in zip(SYMBOLS, exps):
                if not e:
                    continue
                base = Poly.coerce(full[name]) if name in full else Poly.symbol(name)
                for _ in range(e):
                    term = term * base
            result = result + term
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._terms == other._terms
        try:
            return self._terms == Poly.coerce(other)._terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def monomial_gcd(self) -> tuple:
        if not self._terms:
            return (0, 0, 0, 0)
        return tuple(min(col) for col in zip(*self._terms))

    def divide_monomial(self, exps: tuple) -> "Poly":
        return Poly({tuple(a - b for a, b in zip(e, exps)): v for e, v in self._terms.items()})

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)


def _format_symbols(exps) -> str:
    return " ".join(name for name, e in zip(SYMBOLS, exps) for _ in range(e))


def format_poly(p: Poly) -> str:
    """Sum of terms with a leading sign only when negative, e.g. ``1 - c c^*``."""
    if p.is_zero():
        return "0"
    parts = []
    for exps, value in p.items():
        negative = value.im == 0 and value.re < 0 or value.re == 0 and value.im < 0
        mag = -value if negative else value
        sym = _format_symbols(exps)
        if not sym:
            body = format_num(mag)
        elif mag == ONE:
            body = sym
        else:
            body = f"{format_num(mag)} {sym}"
        parts.append(("-", body) if negative else ("+", body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text
