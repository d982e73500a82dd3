import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from schwinger.fock import TwoModeState, apply_word, sector_basis
from schwinger.symbolic import (
    CommutatorTable, Expr, Num, ParseError, Poly, UnknownIdentifierError, act, adjoint,
    commutator, format_expr, normal_order, parse_expression, product,
)
from schwinger.symbolic.algebra import GENERATORS, is_normal, word_of

SYM = CommutatorTable.symbolic()
CANON = CommutatorTable.canonical()

words = st.lists(st.sampled_from(GENERATORS), max_size=6).map(tuple)
short = st.lists(st.sampled_from(GENERATORS), max_size=4).map(tuple)


def test_normal_forms_of_basic_products():
    assert format_expr(parse_expression("a a^+")) == "a^+ a + 1"
    assert format_expr(parse_expression("b a^+", SYM)) == "a^+ b + d"
    assert format_expr(parse_expression("b a", SYM)) == "a b + c"
    assert format_expr(parse_expression("b^+ a^+", SYM)) == "a^+ b^+ - c^*"


def test_number_difference_from_ladder_commutator():
    assert format_expr(parse_expression("[a^+ b, b^+ a]")) == "a^+ a - b^+ b"


def test_scalar_forms():
    assert format_expr(parse_expression("[a, a^+]")) == "1"
    assert format_expr(parse_expression("a - a")) == "0"
    assert format_expr(parse_expression("1/2 i a", SYM)) == "1/2 i a"


@pytest.mark.parametrize("text", ["a^+ a - b^+ b", "(1 - c c^*) a^+ b + 1/2 d", "-c a^+ b^+ + 2 i b b",
                                  "3/4", "-d^* a + c"])
def test_printer_round_trip(text):
    expr = parse_expression(text, SYM)
    assert parse_expression(format_expr(expr), SYM) == expr


@pytest.mark.parametrize("text,pos", [("a +", 3), ("(a b", 4), ("[a, b", 5), ("a $ b", 2), ("a ) b", 2)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_expression(text)
    assert info.value.position == pos
    assert info.value.expected


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifierError):
        parse_expression("a x")


def test_confluence_over_random_rewrite_orders():
    rng = random.Random(20261014)
    for _ in range(1000):
        word = tuple(rng.choice(GENERATORS) for _ in range(rng.randint(0, 8)))
        reference = normal_order(word, SYM)
        assert normal_order(word, SYM, rng=random.Random(rng.random())) == reference


@given(words)
def test_normal_form_is_normal(word):
    for mono, _ in normal_order(word, SYM).items():
        assert is_normal(word_of(mono))


@pytest.mark.parametrize("N", range(7))
def test_faithful_on_sectors(N):
    rng = random.Random(N)
    for _ in range(40):
        word = tuple(rng.choice(GENERATORS) for _ in range(rng.randint(1, 6)))
        expr = normal_order(word, CANON)
        for ket in sector_basis(N).kets:
            state = TwoModeState({ket: 1.0})
            assert act(expr, state).isclose(apply_word(word, state), atol=1e-10)


@settings(deadline=None)
@given(short, words)
def test_adjoint_reverses_products(x, y):
    X, Y = normal_order(x, SYM), normal_order(y, SYM)
    assert adjoint(product(X, Y, SYM), SYM) == product(adjoint(Y, SYM), adjoint(X, SYM), SYM)


@settings(deadline=None)
@given(short, short, short)
def test_commutator_is_a_derivation(x, y, z):
    X, Y, Z = (normal_order(w, SYM) for w in (x, y, z))
    lhs = commutator(X, product(Y, Z, SYM), SYM)
    rhs = product(commutator(X, Y, SYM), Z, SYM) + product(Y, commutator(X, Z, SYM), SYM)
    assert lhs == rhs


@settings(deadline=None)
@given(words, words, st.integers(-3, 3))
def test_bilinearity(x, y, k):
    X, Y = normal_order(x, SYM), normal_order(y, SYM)
    assert commutator(X.scale(Num(k)), Y, SYM) == commutator(X, Y, SYM).scale(Num(k))
    assert commutator(X, Y, SYM) == -commutator(Y, X, SYM)


def test_substitution_after_ordering_equals_ordering_under_values():
    word = ("b", "b", "a^+", "a")
    values = {"c": Poly.const(Num(1, 2)), "d": Poly.const(Num(F(1, 3)))}
    fixed = SYM.subs(values)
    assert normal_order(word, SYM).subs(values) == normal_order(word, fixed)


def test_poly_conjugation():
    p = Poly.symbol("c") * Poly.const(Num(0, 2)) + Poly.symbol("d^*")
    assert p.conj() == Poly.symbol("c^*") * Poly.const(Num(0, -2)) + Poly.symbol("d")
    assert p.conj().conj() == p


def test_num_arithmetic_is_exact():
    x = Num(F(1, 3), 1)
    assert x * x.conj() == Num(F(10, 9))
    assert (x / x) == Num(1)
    assert str(Num(0, 2)) == "2 i"


def test_act_rejects_symbolic_coefficients():
    with pytest.raises(ValueError):
        act(Expr.scalar(Poly.symbol("c")), TwoModeState.ket(0, 0))
