"""Unit tests for rational functions, Laurent polynomials and differential forms."""

import random

import pytest

from src.algebra import (
    INFINITY,
    FiniteField,
    FormClass,
    LaurentPoly,
    Mobius,
    Poly,
    RationalDifferentialForm,
    RationalFunction,
    cartier,
    classify_form,
    order_at,
    parse_rational_function,
)
from src.utils.errors import ValidationError, ZeroFormError


def _form(field, num, den=(1,)):
    return RationalDifferentialForm(RationalFunction(Poly(field, num), Poly(field, den)))


def _random_rational(field, rng):
    while True:
        num = Poly(field, [field.random(rng) for _ in range(rng.randint(1, 3))])
        den = Poly(field, [field.random(rng) for _ in range(rng.randint(1, 3))])
        if num.is_zero() or den.is_zero():
            continue
        f = RationalFunction(num, den)
        if not f.derivative().is_zero():
            return f


class TestRationalFunction:
    """Tests for the coprime normal form."""

    def test_normal_form_cancels_and_makes_denominator_monic(self):
        """(2z^2 - 2)/(2z - 2) normalizes to z + 1."""
        f5 = FiniteField(5)
        f = RationalFunction(Poly(f5, [-2, 0, 2]), Poly(f5, [-2, 2]))
        assert f.num == Poly(f5, [1, 1])
        assert f.den.is_one()

    def test_evaluation_at_infinity(self):
        """Values at infinity follow the degree comparison."""
        f5 = FiniteField(5)
        assert RationalFunction(Poly(f5, [1]), Poly(f5, [0, 1]))(INFINITY) == 0
        assert RationalFunction(Poly(f5, [0, 0, 1]), Poly(f5, [1]))(INFINITY) is INFINITY

    def test_parse_string(self):
        """Strings parse with reduction of constants modulo p."""
        f5 = FiniteField(5)
        parsed = parse_rational_function("1/((z^2-1)*(z^2-4))", f5)
        expected = RationalFunction(Poly(f5, [1]), Poly.from_roots(f5, [1, 4, 2, 3]))
        assert parsed == expected

    def test_parse_uses_field_generator(self):
        """The symbol a is the generator of the coefficient field."""
        f9 = FiniteField(3, 2)
        parsed = parse_rational_function("a*z + 1/2", f9)
        assert parsed.num == Poly(f9, [f9(2), f9.gen])

    def test_parse_rejects_garbage(self):
        """Malformed input raises a validation error."""
        with pytest.raises(ValidationError, match="Cannot parse"):
            parse_rational_function("z +* 1", FiniteField(5))


class TestLaurentPoly:
    """Tests for Laurent polynomial arithmetic."""

    def setup_method(self):
        self.f3 = FiniteField(3)

    def test_frobenius_multiplies_exponents(self):
        """(2 t^-1)^3 = 2 t^-3 over F_3."""
        x = LaurentPoly.monomial(self.f3, -1, 2)
        assert x.frobenius() == LaurentPoly.monomial(self.f3, -3, 2)
        assert x.frobenius() == x**3

    def test_pole_order_and_parts(self):
        """Pole order is the degree in t^-1."""
        x = LaurentPoly(self.f3, {-4: 1, -1: 2, 0: 1, 2: 1})
        assert x.pole_order == 4
        assert x.negative_part() == LaurentPoly(self.f3, {-4: 1, -1: 2})
        assert x.nonnegative_part() == LaurentPoly(self.f3, {0: 1, 2: 1})

    def test_zero_coefficients_are_dropped(self):
        """Adding opposite terms cancels them."""
        x = LaurentPoly(self.f3, {-2: 1})
        assert (x - x).is_zero()

    def test_to_rational_function(self):
        """t^-2 + 1 becomes (t^2 + 1)/t^2."""
        x = LaurentPoly(self.f3, {-2: 1, 0: 1})
        f = x.to_rational_function()
        assert f.num == Poly(self.f3, [1, 0, 1])
        assert f.den == Poly.monomial(self.f3, 2)

    def test_dict_round_trip(self):
        """Serialization keeps exponents and coefficients."""
        x = LaurentPoly(self.f3, {-5: 2, -1: 1})
        assert LaurentPoly.from_dict(self.f3, x.to_dict()) == x


class TestCartier:
    """Tests for the Cartier operator and form classification."""

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_dz_over_z_is_fixed(self, p):
        """C(dz/z) = dz/z."""
        field = FiniteField(p)
        omega = _form(field, [1], [0, 1])
        assert cartier(omega) == omega

    @pytest.mark.parametrize("p", [3, 5])
    def test_dz_is_killed(self, p):
        """C(dz) = 0."""
        assert cartier(_form(FiniteField(p), [1])).is_zero()

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_z_to_p_minus_one(self, p):
        """C(z^{p-1} dz) = dz."""
        field = FiniteField(p)
        assert cartier(_form(field, [0] * (p - 1) + [1])) == _form(field, [1])

    def test_dlog_of_quadratic_is_logarithmic(self):
        """df/f for f = z^2 - 1 over F_5."""
        f5 = FiniteField(5)
        omega = RationalDifferentialForm.logarithmic(RationalFunction(Poly(f5, [-1, 0, 1])))
        assert classify_form(omega) is FormClass.LOGARITHMIC

    def test_exact_form(self):
        """d(z^3) over F_5."""
        f5 = FiniteField(5)
        omega = RationalDifferentialForm.exact(RationalFunction(Poly.monomial(f5, 3)))
        assert classify_form(omega) is FormClass.EXACT

    def test_constructor_form_is_logarithmic(self):
        """dz/((z^2-1)(z^2-4)) over F_5."""
        f5 = FiniteField(5)
        omega = RationalDifferentialForm(RationalFunction(Poly(f5, [1]), Poly.from_roots(f5, [1, 4, 2, 3])))
        assert classify_form(omega) is FormClass.LOGARITHMIC

    def test_neither(self):
        """(1 + z^4) dz over F_5 is neither exact nor logarithmic."""
        f5 = FiniteField(5)
        omega = RationalDifferentialForm(Poly(f5, [1, 0, 0, 0, 1]))
        assert classify_form(omega) is FormClass.NEITHER

    def test_semilinearity(self):
        """C(a^p w) = a C(w) and C is additive."""
        rng = random.Random(5)
        field = FiniteField(5, 2)
        for _ in range(20):
            a = field.random(rng)
            w1 = RationalDifferentialForm(_random_rational(field, rng))
            w2 = RationalDifferentialForm(_random_rational(field, rng))
            assert cartier(w1 * a.frobenius()) == cartier(w1) * a
            assert cartier(w1 + w2) == cartier(w1) + cartier(w2)

    @pytest.mark.parametrize("p,r", [(3, 1), (3, 2), (5, 1), (5, 2)])
    def test_random_dlog_and_exact(self, p, r):
        """dlog forms are logarithmic and differentials are exact."""
        rng = random.Random(1000 * p + r)
        field = FiniteField(p, r)
        for _ in range(50):
            f = _random_rational(field, rng)
            assert classify_form(RationalDifferentialForm.logarithmic(f)) is FormClass.LOGARITHMIC
            assert classify_form(RationalDifferentialForm.exact(f)) is FormClass.EXACT


class TestOrdersAndDivisors:
    """Tests for orders, residues, divisors and pullbacks."""

    def setup_method(self):
        self.f5 = FiniteField(5)
        self.omega = RationalDifferentialForm(
            RationalFunction(Poly(self.f5, [1]), Poly.from_roots(self.f5, [1, 4, 2, 3]))
        )

    def test_simple_pole_at_zero(self):
        """ord_0(dz/z) = -1."""
        assert order_at(_form(self.f5, [1], [0, 1]), self.f5.zero) == -1

    def test_order_at_infinity(self):
        """The constructor form vanishes to order h - 1 = 2 at infinity."""
        assert order_at(self.omega, INFINITY) == 2

    def test_dz_has_double_pole_at_infinity(self):
        """ord_inf(dz) = -2."""
        assert order_at(_form(self.f5, [1]), INFINITY) == -2

    def test_zero_form_raises(self):
        """The zero form has no divisor."""
        with pytest.raises(ZeroFormError, match="zero form has no divisor"):
            order_at(_form(self.f5, []), INFINITY)

    def test_divisor_of_constructor_form(self):
        """Four simple poles and a double zero at infinity."""
        divisor = self.omega.divisor()
        assert divisor[INFINITY] == 2
        assert sorted(v for k, v in divisor.items() if k is not INFINITY) == [-1, -1, -1, -1]
        assert sum(divisor.values()) == -2

    def test_divisor_uses_splitting_field(self):
        """Poles at the roots of z^2 + 2 live in F_25."""
        omega = _form(self.f5, [1], [2, 0, 1])
        divisor = omega.divisor()
        finite = [pt for pt in divisor if pt is not INFINITY]
        assert len(finite) == 2
        assert all(pt.field is FiniteField(5, 2) for pt in finite)
        assert omega.degree() == -2

    @pytest.mark.parametrize("p,r", [(3, 1), (3, 2), (5, 1)])
    def test_random_divisors_have_degree_minus_two(self, p, r):
        """deg div(w) = -2 for every nonzero form."""
        rng = random.Random(7 * p + r)
        field = FiniteField(p, r)
        for _ in range(15):
            f = _random_rational(field, rng)
            for omega in (RationalDifferentialForm(f), RationalDifferentialForm.logarithmic(f)):
                assert omega.degree() == -2

    def test_residues(self):
        """Residues at finite points and at infinity."""
        dz_over_z = _form(self.f5, [1], [0, 1])
        assert dz_over_z.residue_at(self.f5.zero) == 1
        assert dz_over_z.residue_at(INFINITY) == -1
        assert _form(self.f5, [1], [-1, 0, 1]).residue_at(self.f5(1)) == 3

    def test_pullback_by_scaling(self):
        """z -> 2z pulls the constructor form back to 2 times itself."""
        phi = Mobius.scaling(self.f5(2))
        assert self.omega.pullback(phi) == self.omega * 2


class TestMobius:
    """Tests for fractional linear maps."""

    def setup_method(self):
        self.f7 = FiniteField(7)

    def test_apply_and_infinity(self):
        """z -> 1/z swaps 0 and infinity."""
        inv = Mobius(0, 1, 1, 0, self.f7)
        assert inv(self.f7.zero) is INFINITY
        assert inv(INFINITY) == 0

    def test_compose_with_inverse(self):
        """phi o phi^-1 is the identity."""
        phi = Mobius(2, 3, 1, 4, self.f7)
        assert phi.compose(phi.inverse()) == Mobius.identity(self.f7)

    def test_derivative_at_fixed_points(self):
        """z -> 3z has derivative 3 at 0 and 1/3 at infinity."""
        phi = Mobius.scaling(self.f7(3))
        assert phi.derivative_at(self.f7.zero) == 3
        assert phi.derivative_at(INFINITY) == self.f7(3).inverse()
