"""Exact scalar arithmetic against an independent sympy oracle."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hopf_forge.scalars import (DEFAULT_SPEC_POINTS, SC_ONE, SC_ZERO,
                                GaussRat, Scalar, ScalarError,
                                ScalarParseError, SpecializationPoleError,
                                parse_scalar, parse_spec_points,
                                validate_spec_points)

from oracles import S, gauss_to_sympy, sympy_equal, to_sympy

small_ints = st.integers(min_value=-9, max_value=9)
nonzero_ints = small_ints.filter(lambda n: n != 0)


@st.composite
def gauss_rats(draw):
    return GaussRat(draw(small_ints), draw(small_ints), draw(nonzero_ints))


@st.composite
def scalars(draw):
    """Random element of Q(i)(s) built from a few primitive pieces."""
    terms = draw(st.lists(st.tuples(gauss_rats(),
                                    st.integers(min_value=-4, max_value=4)),
                          min_size=1, max_size=4))
    num = SC_ZERO
    for coeff, power in terms:
        num = num + Scalar.const(coeff) * Scalar.s_power(power)
    den_terms = draw(st.lists(
        st.tuples(gauss_rats(), st.integers(min_value=0, max_value=3)),
        min_size=0, max_size=2))
    den = SC_ONE
    for coeff, power in den_terms:
        part = Scalar.const(coeff) * Scalar.s_power(power) + SC_ONE
        if not part.is_zero:
            den = den * part
    return num * den.inverse()


class TestGaussRat:
    def test_normalization(self):
        x = GaussRat(2, 4, -6)
        assert (x.a, x.b, x.d) == (-1, -2, 3)
        assert GaussRat(0, 0, 5) == GaussRat(0)

    def test_zero_denominator_rejected(self):
        with pytest.raises(ScalarError):
            GaussRat(1, 0, 0)

    @given(gauss_rats(), gauss_rats())
    def test_ring_ops_match_sympy(self, x, y):
        sx, sy = gauss_to_sympy(x), gauss_to_sympy(y)
        assert sympy.expand(gauss_to_sympy(x + y) - (sx + sy)) == 0
        assert sympy.expand(gauss_to_sympy(x - y) - (sx - sy)) == 0
        assert sympy.expand(gauss_to_sympy(x * y) - sx * sy) == 0

    @given(gauss_rats())
    def test_inverse_matches_sympy(self, x):
        if x.is_zero:
            with pytest.raises(ScalarError):
                x.inverse()
        else:
            assert x * x.inverse() == GaussRat(1)
            assert sympy.simplify(gauss_to_sympy(x.inverse())
                                  - 1 / gauss_to_sympy(x)) == 0

    @given(gauss_rats())
    def test_conjugate_is_involutive(self, x):
        assert x.conjugate().conjugate() == x
        assert (x * x.conjugate()).is_real

    def test_sign_and_real_fraction(self):
        assert GaussRat(-3, 0, 7).sign() == -1
        assert GaussRat(0).sign() == 0
        assert GaussRat(3, 0, 6).real_fraction() == Fraction(1, 2)
        with pytest.raises(ScalarError):
            GaussRat(1, 1).sign()


class TestScalarArithmetic:
    @settings(max_examples=60)
    @given(scalars(), scalars())
    def test_field_ops_match_sympy(self, x, y):
        assert sympy_equal(x + y, to_sympy(x) + to_sympy(y))
        assert sympy_equal(x - y, to_sympy(x) - to_sympy(y))
        assert sympy_equal(x * y, to_sympy(x) * to_sympy(y))

    @settings(max_examples=60)
    @given(scalars())
    def test_inverse_matches_sympy(self, x):
        if x.is_zero:
            with pytest.raises(ScalarError):
                x.inverse()
        else:
            assert x * x.inverse() == SC_ONE
            assert sympy_equal(x.inverse(), 1 / to_sympy(x))

    @settings(max_examples=60)
    @given(scalars())
    def test_equality_is_canonical(self, x):
        doubled = (x + x) * Scalar.from_fraction(Fraction(1, 2))
        assert doubled == x
        assert hash(doubled) == hash(x)

    @settings(max_examples=60)
    @given(scalars())
    def test_conjugation(self, x):
        assert x.conjugate().conjugate() == x
        assert sympy_equal(
            x.conjugate(),
            to_sympy(x).subs(sympy.I, -sympy.I))

    def test_self_adjoint(self):
        assert Scalar.s_power(3).is_self_adjoint()
        assert not Scalar.const(GaussRat(0, 1)).is_self_adjoint()
        mixed = Scalar.s_power(1) + Scalar.const(GaussRat(2, 0, 3))
        assert mixed.is_self_adjoint()

    @given(scalars(), st.sampled_from(DEFAULT_SPEC_POINTS))
    @settings(max_examples=40)
    def test_substitute_matches_sympy(self, x, point):
        expr = to_sympy(x)
        denom = sympy.denom(sympy.cancel(expr))
        if denom.subs(S, sympy.Rational(point)) == 0:
            with pytest.raises(SpecializationPoleError):
                x.substitute(point)
        else:
            got = x.substitute(point)
            want = expr.subs(S, sympy.Rational(point))
            assert sympy.simplify(gauss_to_sympy(got) - want) == 0

    def test_pow_negative(self):
        x = Scalar.s_power(2) + SC_ONE
        assert x ** -2 == (x.inverse()) ** 2
        assert Scalar.s_power(-3) == Scalar.s_power(3).inverse()


class TestParsing:
    @settings(max_examples=80)
    @given(scalars())
    def test_render_parse_round_trip(self, x):
        assert parse_scalar(str(x)) == x

    def test_literal_forms(self):
        assert parse_scalar("s^2/(s^4 - 1)") == \
            Scalar.s_power(2) * (Scalar.s_power(4) - SC_ONE).inverse()
        assert parse_scalar("(1 + 2*i)/3") == Scalar.const(GaussRat(1, 2, 3))
        assert parse_scalar("-s") == -Scalar.s_power(1)
        assert parse_scalar("0") == SC_ZERO

    def test_error_positions(self):
        with pytest.raises(ScalarParseError) as info:
            parse_scalar("s^")
        assert info.value.pos == 2
        with pytest.raises(ScalarParseError):
            parse_scalar("1 +")
        with pytest.raises(ScalarParseError):
            parse_scalar("")
        with pytest.raises(ScalarError):
            parse_scalar("1/0")


class TestSpecPoints:
    def test_defaults(self):
        assert DEFAULT_SPEC_POINTS == (Fraction(1, 3), Fraction(1, 2),
                                       Fraction(2, 3))

    def test_parse(self):
        assert parse_spec_points("1/2, 1/3") == (Fraction(1, 3),
                                                 Fraction(1, 2))
        with pytest.raises(ScalarError):
            parse_spec_points("0")
        with pytest.raises(ScalarError):
            parse_spec_points("nope")
        with pytest.raises(ScalarError):
            parse_spec_points("")

    def test_validate(self):
        assert validate_spec_points([Fraction(1, 2), Fraction(1, 2)]) == \
            (Fraction(1, 2),)
        with pytest.raises(ScalarError):
            validate_spec_points([Fraction(3, 2)])
