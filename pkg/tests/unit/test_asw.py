"""Unit tests for Artin-Schreier reduction and Witt normal forms."""

import random

import pytest

from src.algebra import FiniteField, LaurentPoly
from src.asw import (
    WittNormalForm,
    artin_schreier_jump,
    asw_upper_jumps,
    different_of,
    jump_constraints_hold,
    reduce_artin_schreier,
)
from src.utils.errors import NormalFormError


def random_laurent(field, rng, max_degree=30):
    terms = {}
    for _ in range(rng.randint(0, 8)):
        terms[rng.randint(-max_degree, max_degree)] = field.random(rng)
    return LaurentPoly(field, terms)


def random_normal_form(p, rng, n):
    field = FiniteField(p)
    j = rng.choice([j for j in range(1, 12) if j % p])
    components = [LaurentPoly(field, {-j: rng.randint(1, p - 1)})]
    for _ in range(n - 1):
        terms = {-k: rng.randint(0, p - 1) for k in range(1, 40) if k % p and rng.random() < 0.1}
        components.append(LaurentPoly(field, terms))
    return WittNormalForm(field, tuple(components))


class TestReduction:
    """Tests for reduce_artin_schreier."""

    def test_already_standard(self):
        """t^-3 over F_5 is unchanged."""
        field = FiniteField(5)
        f = LaurentPoly.monomial(field, -3)
        reduced = reduce_artin_schreier(f)
        assert reduced.standard == f
        assert reduced.witness.is_zero()

    def test_two_peels(self):
        """t^-9 over F_3 peels to t^-3 and then t^-1."""
        field = FiniteField(3)
        f = LaurentPoly.monomial(field, -9)
        reduced = reduce_artin_schreier(f)
        assert reduced.standard == LaurentPoly.monomial(field, -1)
        assert reduced.verify(f)
        assert artin_schreier_jump(f) == 1

    def test_peel_uses_pth_roots(self):
        """Over F_9 the peeled coefficient is the cube root."""
        field = FiniteField(3, 2)
        c = field.gen
        f = LaurentPoly.monomial(field, -6, c)
        reduced = reduce_artin_schreier(f)
        assert reduced.standard == LaurentPoly.monomial(field, -2, c.pth_root())
        assert reduced.verify(f)

    def test_nonnegative_part_is_trivial(self):
        """t^2 + 1 defines the trivial extension."""
        field = FiniteField(3)
        f = LaurentPoly(field, {2: 1, 0: 1})
        reduced = reduce_artin_schreier(f)
        assert reduced.is_trivial
        assert artin_schreier_jump(f) is None

    def test_cancellation_can_trivialize(self):
        """t^-3 - t^-1 over F_3 is z^3 - z for z = t^-1."""
        field = FiniteField(3)
        f = LaurentPoly(field, {-3: 1, -1: -1})
        assert reduce_artin_schreier(f).is_trivial

    @pytest.mark.parametrize("p,r", [(3, 1), (3, 2), (5, 1), (5, 2)])
    def test_random_inputs(self, p, r):
        """Idempotent, no exponent divisible by p, witness verified."""
        field = FiniteField(p, r)
        rng = random.Random(p * 10 + r)
        for _ in range(125):
            f = random_laurent(field, rng)
            reduced = reduce_artin_schreier(f)
            assert reduced.verify(f)
            assert all(k < 0 and k % p for k in reduced.standard.terms)
            again = reduce_artin_schreier(reduced.standard)
            assert again.standard == reduced.standard
            assert again.witness.is_zero()


class TestWittNormalForm:
    """Tests for validation, jumps and differents."""

    def test_jumps_with_zero_second_component(self):
        """(t^-1, 0) has jumps (1, p)."""
        for p in (2, 3, 5, 7):
            w = WittNormalForm.from_terms(p, [{-1: 1}, {}])
            assert asw_upper_jumps(w) == (1, p)

    def test_jump_formula(self):
        """(t^-1, t^-7) over F_5 has jumps (1, 7)."""
        w = WittNormalForm.from_terms(5, [{-1: 1}, {-7: 1}])
        assert asw_upper_jumps(w) == (1, 7)

    def test_small_second_component(self):
        """deg x_2 below p u_1 leaves u_2 = p u_1."""
        w = WittNormalForm.from_terms(5, [{-2: 1}, {-7: 1}])
        assert asw_upper_jumps(w) == (2, 10)

    def test_first_exponent_divisible_by_p(self):
        """x_1 = t^-3 over F_3 is not in normal form."""
        with pytest.raises(NormalFormError, match="prime to p"):
            WittNormalForm.from_terms(3, [{-3: 1}])

    def test_first_component_must_be_monomial(self):
        """x_1 has a single term."""
        with pytest.raises(NormalFormError, match="single monomial"):
            WittNormalForm.from_terms(5, [{-1: 1, -2: 1}])

    @pytest.mark.parametrize("terms,match", [({-6: 1}, "divisible by p"), ({1: 1}, "without constant")])
    def test_later_components(self, terms, match):
        """x_2 must be a polynomial in t^-1 with exponents prime to p."""
        with pytest.raises(NormalFormError, match=match):
            WittNormalForm.from_terms(3, [{-1: 1}, terms])

    def test_unit_leading_coefficient(self):
        """x_1 = 2 t^-1 is accepted."""
        assert asw_upper_jumps(WittNormalForm.from_terms(3, [{-1: 2}])) == (1,)

    @pytest.mark.parametrize(
        "p,components,expected", [(3, [{-1: 1}], 4), (3, [{-1: 1}, {}], 28), (3, [{-2: 1}], 6)]
    )
    def test_different(self, p, components, expected):
        """Differents through the cyclic formula."""
        assert different_of(WittNormalForm.from_terms(p, components)) == expected

    def test_jump_constraints_on_random_forms(self):
        """asw_upper_jumps always satisfies the jump constraints."""
        rng = random.Random(5)
        for _ in range(300):
            p = rng.choice([2, 3, 5])
            w = random_normal_form(p, rng, rng.randint(1, 4))
            assert jump_constraints_hold(p, asw_upper_jumps(w))

    def test_single_component_jump(self):
        """For n = 1 the jump is the pole order of x_1."""
        assert asw_upper_jumps(WittNormalForm.from_terms(7, [{-11: 3}])) == (11,)

    @pytest.mark.parametrize(
        "p,jumps,expected",
        [(3, (1, 3, 9), True), (5, (1, 7), True), (3, (1, 2), False), (3, (1, 6), False), (3, (3,), False)],
    )
    def test_jump_constraints(self, p, jumps, expected):
        """u_i >= p u_{i-1}, prime to p when strict."""
        assert jump_constraints_hold(p, jumps) is expected

    def test_json_round_trip(self):
        """Components serialize as exponent maps."""
        w = WittNormalForm.from_terms(5, [{-1: 1}, {-7: 2}])
        data = w.to_json()
        assert data["witt"] == [{"-1": 1}, {"-7": 2}]
        assert WittNormalForm.from_json(data) == w

    def test_malformed_json(self):
        """Missing keys raise NormalFormError."""
        with pytest.raises(NormalFormError, match="Malformed"):
            WittNormalForm.from_json({"p": 3})
