"""Noncommutative boson algebra with a deformable cross-mode commutator table."""

from .algebra import (
    A,
    A_DAG,
    B,
    B_DAG,
    GENERATORS,
    CommutatorTable,
    Expr,
    act,
    adjoint,
    adjoint_word,
    coefficient_of,
    commutator,
    is_normal,
    monomial_of,
    normal_order,
    normal_order_terms,
    product,
    word_of,
)
from .coeffs import SYMBOLS, Num, Poly
from .parser import ParseError, UnknownIdentifierError, format_expr, parse_expression
