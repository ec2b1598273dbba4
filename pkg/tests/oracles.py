"""Independent sympy bridge used to cross-check exact arithmetic.

The library never imports sympy; these helpers re-evaluate rendered scalar
literals with a completely separate engine so the two implementations can
disagree loudly in tests.
"""

from __future__ import annotations

import sympy
from sympy.parsing.sympy_parser import (convert_xor, parse_expr,
                                        standard_transformations)

S = sympy.Symbol("s")

_TRANSFORMS = standard_transformations + (convert_xor,)
_LOCALS = {"s": S, "i": sympy.I}


def to_sympy(scalar) -> sympy.Expr:
    """Re-read a scalar through its rendered literal."""
    return parse_expr(str(scalar), local_dict=_LOCALS,
                      transformations=_TRANSFORMS)


def sympy_equal(scalar, expr) -> bool:
    """Does the scalar agree with a sympy expression identically in s?"""
    return sympy.simplify(to_sympy(scalar) - sympy.sympify(expr)) == 0


def gauss_to_sympy(value) -> sympy.Expr:
    """GaussRat (a + b i)/d as an exact sympy number."""
    return (sympy.Rational(value.a, value.d)
            + sympy.Rational(value.b, value.d) * sympy.I)


def matrix_to_sympy(rows) -> sympy.Matrix:
    return sympy.Matrix([[to_sympy(x) for x in row] for row in rows])
