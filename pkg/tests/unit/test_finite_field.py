"""Unit tests for finite fields and polynomial factorization."""

import random

import pytest

from src.algebra.finite_field import FiniteField, common_field, embed_element
from src.algebra.polynomial import Poly
from src.utils.errors import FieldError


class TestFiniteField:
    """Tests for FiniteField construction and element arithmetic."""

    def test_fields_are_cached(self):
        """Two constructions with equal parameters return one object."""
        assert FiniteField(3, 2) is FiniteField(3, 2)

    def test_non_prime_characteristic_raises(self):
        """Characteristic must be prime."""
        with pytest.raises(FieldError, match="prime"):
            FiniteField(4)

    def test_modulus_is_first_irreducible(self):
        """The defining polynomial is the first irreducible in coefficient order."""
        assert FiniteField(2, 2).modulus == (1, 1, 1)
        assert FiniteField(3, 2).modulus == (1, 0, 1)
        assert FiniteField(5).modulus == (0, 1)

    def test_element_count_and_frobenius_fixes_all(self):
        """Every element of F_9 satisfies x^9 = x."""
        field = FiniteField(3, 2)
        elements = list(field.elements())
        assert len(elements) == 9
        assert all(x**9 == x for x in elements)

    def test_inverse(self):
        """x * x^{-1} = 1 for all nonzero x."""
        field = FiniteField(5, 2)
        for x in field.nonzero_elements():
            assert (x * x.inverse()).is_one()

    def test_inverse_of_zero_raises(self):
        """Zero has no inverse."""
        with pytest.raises(ZeroDivisionError):
            FiniteField(7).zero.inverse()

    def test_pth_root_inverts_frobenius(self):
        """pth_root is the inverse of the Frobenius."""
        field = FiniteField(3, 3)
        for x in field.elements():
            assert x.pth_root().frobenius() == x

    def test_trace_of_one(self):
        """The trace of 1 is r modulo p."""
        assert FiniteField(3, 2).one.trace() == 2
        assert FiniteField(5, 3).one.trace() == 3

    def test_mixed_field_arithmetic_raises(self):
        """Elements of different fields do not combine silently."""
        with pytest.raises(FieldError, match="Mixed-field"):
            FiniteField(3, 2).gen + FiniteField(3, 3).gen

    def test_integer_coercion(self):
        """Integers reduce modulo p."""
        field = FiniteField(5)
        assert field(7) == 2
        assert field(-1) == 4

    def test_embedding_respects_modulus(self):
        """The image of a generator is a root of its modulus."""
        small = FiniteField(3, 2)
        big = FiniteField(3, 4)
        image = embed_element(small.gen, big)
        assert image**2 + 1 == big.zero

    def test_embedding_is_multiplicative(self):
        """Embedding commutes with multiplication."""
        small = FiniteField(2, 2)
        big = FiniteField(2, 4)
        for x in small.elements():
            for y in small.elements():
                assert embed_element(x * y, big) == embed_element(x, big) * embed_element(y, big)

    def test_common_field(self):
        """The common field has degree lcm of the inputs."""
        assert common_field(FiniteField(5, 2), FiniteField(5, 3)) is FiniteField(5, 6)


class TestPoly:
    """Tests for polynomial arithmetic and root finding."""

    def setup_method(self):
        self.f5 = FiniteField(5)
        self.rng = random.Random(11)

    def _random_poly(self, field, degree):
        return Poly(field, [field.random(self.rng) for _ in range(degree)] + [1])

    def test_divmod_identity(self):
        """a = q b + r with deg r < deg b."""
        for _ in range(20):
            a = self._random_poly(self.f5, 7)
            b = self._random_poly(self.f5, 3)
            q, r = divmod(a, b)
            assert q * b + r == a
            assert r.degree < b.degree

    def test_gcd_is_monic_common_factor(self):
        """gcd recovers a planted common factor."""
        common = Poly(self.f5, [1, 1])
        a = common * Poly(self.f5, [2, 0, 1])
        b = common * Poly(self.f5, [3, 1])
        assert a.gcd(b) == common

    def test_roots_of_z_squared_minus_one(self):
        """z^2 - 1 over F_5 has roots 1 and 4."""
        roots = Poly(self.f5, [-1, 0, 1]).roots()
        assert [(r.to_int(), m) for r, m in roots] == [(1, 1), (4, 1)]

    def test_roots_with_multiplicity(self):
        """Multiplicities survive root finding."""
        f = Poly.from_roots(self.f5, [2, 2, 2, 3])
        assert [(r.to_int(), m) for r, m in f.roots()] == [(2, 3), (3, 1)]

    def test_squarefree_decomposition_in_characteristic_p(self):
        """A cube in characteristic 3 is detected through the p-th root."""
        f3 = FiniteField(3)
        f = Poly.from_roots(f3, [0, 2, 2, 2])
        assert f.squarefree_decomposition() == [(Poly.x(f3), 1), (Poly(f3, [1, 1]), 3)]

    def test_factor_x4_plus_1_over_f3(self):
        """x^4 + 1 splits into two quadratics over F_3."""
        f3 = FiniteField(3)
        factors = Poly(f3, [1, 0, 0, 0, 1]).factor()
        assert factors == [(Poly(f3, [2, 1, 1]), 1), (Poly(f3, [2, 2, 1]), 1)]
        assert Poly(f3, [1, 0, 0, 0, 1]).splitting_degree() == 2

    def test_distinct_degree_factorization(self):
        """x(x + 1)(x^2 + 1) over F_3 separates its linear and quadratic parts."""
        f3 = FiniteField(3)
        f = Poly(f3, [0, 1, 1]) * Poly(f3, [1, 0, 1])
        assert f.distinct_degree_factorization() == [(Poly(f3, [0, 1, 1]), 1), (Poly(f3, [1, 0, 1]), 2)]

    def test_powmod_is_frobenius_on_quadratic_extension(self):
        """x^5 = -x modulo x^2 + 2 over F_5."""
        modulus = Poly(self.f5, [2, 0, 1])
        assert Poly.x(self.f5).powmod(5, modulus) == Poly(self.f5, [0, 4])

    def test_roots_in_characteristic_two(self):
        """The trace-map splitting handles p = 2."""
        f4 = FiniteField(2, 2)
        f = Poly(f4, [1, 1, 1])
        roots = f.roots()
        assert len(roots) == 2
        assert all(not f(r) for r, _ in roots)

    def test_random_split_polynomials(self):
        """Roots of a product of random linear factors are recovered."""
        f9 = FiniteField(3, 2)
        for _ in range(10):
            planted = [f9.random(self.rng) for _ in range(5)]
            found = []
            for root, multiplicity in Poly.from_roots(f9, planted).roots():
                found.extend([root] * multiplicity)
            assert sorted(found, key=lambda x: x.sort_key()) == sorted(planted, key=lambda x: x.sort_key())

    def test_evaluation_in_extension(self):
        """A root in an extension field evaluates to zero."""
        f3 = FiniteField(3)
        f9 = FiniteField(3, 2)
        f = Poly(f3, [1, 0, 1])
        assert not f(f9.gen)

    def test_mixed_field_raises(self):
        """Polynomials over different fields do not combine."""
        with pytest.raises(FieldError):
            Poly.x(FiniteField(3)) + Poly.x(FiniteField(5))
