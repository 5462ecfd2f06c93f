"""Unit tests for Eisenstein rings, valued Laurent polynomials and Newton polygons."""

import random
from fractions import Fraction

import pytest

from src.padic import (
    SymbolicCoefficient,
    ValuedLaurentPoly,
    exp_truncated,
    laurent_from_json,
    make_cyclotomic_ring,
    make_eisenstein_ring,
    newton_polygon,
    residual_polynomial,
    roots_simple_distinct_certificate,
)
from src.utils.errors import PrecisionError, ValidationError


@pytest.fixture(scope="module")
def ring3():
    return make_cyclotomic_ring(3, 1, 24)


@pytest.fixture(scope="module")
def ring3_level2():
    return make_cyclotomic_ring(3, 2, 36)


class TestCyclotomicRing:
    """Tests for make_cyclotomic_ring."""

    def test_level_one_p3(self):
        """e = 2, v(lambda) = 1/2 and v(lambda^2 + 3) > 1."""
        ring = make_cyclotomic_ring(3, 1, 12)
        assert ring.e == 2
        assert ring.lam.valuation() == Fraction(1, 2)
        assert (ring.lam**2 + 3).valuation_lower_bound() > 1

    def test_level_one_p5(self):
        """v(lambda) = 1/4 for p = 5."""
        assert make_cyclotomic_ring(5, 1, 20).lam.valuation() == Fraction(1, 4)

    def test_level_two_p3(self):
        """e = 6 and v(mu) = v(pi) = 1/6."""
        ring = make_cyclotomic_ring(3, 2, 30)
        assert ring.e == 6
        assert ring.mu.valuation() == Fraction(1, 6)
        assert ring.pi.valuation() == Fraction(1, 6)
        assert ring.lam.valuation() == Fraction(1, 2)

    def test_insufficient_precision_raises(self):
        """N below 3e cannot certify the valuations."""
        with pytest.raises(PrecisionError, match="Precision too small"):
            make_cyclotomic_ring(3, 2, 12)

    def test_level_three_rejected(self):
        """Only levels 1 and 2 are supported."""
        with pytest.raises(ValidationError, match="level"):
            make_cyclotomic_ring(3, 3, 100)

    def test_mu_needs_level_two(self, ring3):
        """mu lives in the level-2 ring only."""
        with pytest.raises(ValidationError):
            _ = ring3.mu


class TestEisensteinRing:
    """Tests for general Eisenstein rings and element arithmetic."""

    def setup_method(self):
        self.ring = make_eisenstein_ring(5, [-5, 0, 1], precision=20)

    def test_uniformizer_squares_to_p(self):
        """a^2 = 5 in Z_5[a]."""
        assert self.ring.pi * self.ring.pi == 5
        assert self.ring.pi.valuation() == Fraction(1, 2)

    def test_valuation_of_integers(self):
        """v(25) = 2 and v(5a) = 3/2."""
        assert self.ring(25).valuation() == 2
        assert (self.ring.pi * 5).valuation() == Fraction(3, 2)

    def test_divide_by_uniformizer(self):
        """5 / a^2 = 1."""
        assert self.ring(5).divide_by_uniformizer(2) == 1

    def test_unit_residue(self):
        """The unit part of 10 a has residue 2."""
        assert (self.ring.pi * 10).unit_residue() == 2

    def test_unit_part(self):
        """Stripping pi^3 from 10 pi leaves the unit 2."""
        unit = (self.ring.pi * 10).unit_part()
        assert unit.valuation() == 0
        assert unit == 2

    def test_rejects_non_eisenstein(self):
        """Constant term of valuation 2 and unit middle coefficients are rejected."""
        with pytest.raises(ValidationError, match="valuation exactly 1"):
            make_eisenstein_ring(5, [25, 0, 1])
        with pytest.raises(ValidationError, match="divisible by p"):
            make_eisenstein_ring(5, [5, 1, 1])

    def test_inverse(self):
        """x x^-1 = 1 for units."""
        rng = random.Random(3)
        for _ in range(20):
            x = self.ring.element([(rng.randrange(1, 5),), (rng.randrange(25),)])
            assert x * x.inverse() == 1

    def test_non_unit_inverse_raises(self):
        """Only units are invertible."""
        with pytest.raises(ValidationError, match="units"):
            self.ring.pi.inverse()

    def test_vanishing_element_has_no_valuation(self):
        """An element known to be zero to its precision has no exact valuation."""
        x = self.ring.element([(0,), (0,)], prec=3)
        assert not x.is_exact
        with pytest.raises(PrecisionError, match="not determined"):
            x.valuation()

    def test_fraction_coercion(self):
        """1/2 is a unit with 2 * (1/2) = 1."""
        assert self.ring(Fraction(1, 2)) * 2 == 1
        with pytest.raises(ValidationError, match="p-integral"):
            self.ring(Fraction(1, 5))

    @pytest.mark.parametrize("p,level,precision", [(3, 1, 24), (5, 1, 40), (3, 2, 36)])
    def test_valuation_is_additive_and_ultrametric(self, p, level, precision):
        """v(xy) = v(x) + v(y) and v(x + y) >= min(v(x), v(y))."""
        ring = make_cyclotomic_ring(p, level, precision)
        rng = random.Random(p * 100 + level)

        def random_element():
            shift = rng.randrange(0, 3 * ring.e)
            unit = ring.element([(rng.randrange(1, p),)] + [(rng.randrange(ring.modulus),) for _ in range(ring.e - 1)])
            return unit * ring.pi_power(shift)

        for _ in range(30):
            x, y = random_element(), random_element()
            assert (x * y).valuation() == x.valuation() + y.valuation()
            total = x + y
            if not total.is_zero():
                assert total.valuation() >= min(x.valuation(), y.valuation())


class TestTruncatedExponential:
    """Tests for exp_truncated on elements and Laurent polynomials."""

    def test_exp_of_zero(self, ring3):
        """exp(0) = 1."""
        assert exp_truncated(ring3.zero) == 1

    def test_exp_p3_formula(self, ring3):
        """For p = 3 the truncation is 1 + x + x^2 / 2."""
        x = ring3.lam * 7
        assert exp_truncated(x) == 1 + x + x * x * ring3(Fraction(1, 2))

    def test_exp_of_mu_monomial(self, ring3_level2):
        """exp(mu^3 T^-1) has valuations 0, 1/2, 1."""
        ring = ring3_level2
        h2 = exp_truncated(ValuedLaurentPoly.monomial(ring, 1, ring.mu**3))
        assert h2.valuations() == {0: 0, 1: Fraction(1, 2), 2: Fraction(1)}
        assert h2.degree == 2

    def test_exp_substituted_degree(self, ring3_level2):
        """Substituting T^-2 doubles the degree to 4."""
        ring = ring3_level2
        h2 = exp_truncated(ValuedLaurentPoly.monomial(ring, 1, ring.mu**3)).substitute_power(2)
        assert h2.degree == 4

    def test_symbolic_exp_matches_exact(self, ring3_level2):
        """The symbolic monomial rule agrees with the exact computation."""
        ring = ring3_level2
        x = ValuedLaurentPoly.monomial(ring, 1, ring.mu**3)
        exact = exp_truncated(x).to_symbolic()
        symbolic = exp_truncated(x.to_symbolic())
        assert symbolic.terms == exact.terms

    def test_symbolic_exp_needs_monomial(self, ring3):
        """Symbolic binomials have no exponential."""
        f = ValuedLaurentPoly(ring3, {1: SymbolicCoefficient(Fraction(1)), 2: SymbolicCoefficient(Fraction(2))})
        with pytest.raises(ValidationError, match="monomial"):
            exp_truncated(f)


class TestValuedLaurentPoly:
    """Tests for valuations on circles and normalization."""

    def test_val_at_radius(self, ring3):
        """val_r(1 + lambda^3 T^-2) = min(0, 3/2 - 2r)."""
        f = ValuedLaurentPoly(ring3, {0: 1, 2: ring3.lam**3})
        assert f.val_at_radius(Fraction(0)) == 0
        assert f.val_at_radius(Fraction(1)) == Fraction(-1, 2)

    def test_normalized(self, ring3):
        """Unit constant term and positive valuations elsewhere."""
        assert ValuedLaurentPoly(ring3, {0: 1, 1: ring3.lam}).is_normalized()
        assert not ValuedLaurentPoly(ring3, {0: 1, 1: 1}).is_normalized()
        assert not ValuedLaurentPoly(ring3, {1: 1}).is_normalized()

    def test_arithmetic(self, ring3):
        """(1 + lambda T^-1)^2 = 1 + 2 lambda T^-1 + lambda^2 T^-2."""
        f = ValuedLaurentPoly(ring3, {0: 1, 1: ring3.lam})
        expected = ValuedLaurentPoly(ring3, {0: 1, 1: ring3.lam * 2, 2: ring3.lam**2})
        assert f**2 == expected

    def test_symbolic_arithmetic_refused(self, ring3):
        """Symbolic coefficients carry no digits to compute with."""
        f = ValuedLaurentPoly(ring3, {0: SymbolicCoefficient(Fraction(0))})
        with pytest.raises(ValidationError, match="symbolic"):
            f + f


class TestLaurentDocument:
    """Tests for laurent_from_json."""

    def test_exact_terms(self):
        """1 + lambda^3 T^-2 over Z_3[zeta_3]."""
        doc = {
            "schema": "oortlift.laurent/1",
            "p": 3,
            "cyclotomic": 1,
            "terms": [{"k": 0, "coefficients": [1]}, {"k": 2, "coefficients": [0, 0, 0, 1]}],
        }
        f = laurent_from_json(doc, precision=24)
        assert f.valuations() == {0: 0, 2: Fraction(3, 2)}
        assert not f.is_symbolic

    def test_symbolic_term(self):
        doc = {
            "schema": "oortlift.laurent/1",
            "p": 5,
            "eisenstein": [-5, 0, 1],
            "terms": [{"k": 0, "coefficients": [1]}, {"k": 3, "valuation": "7/2", "residue": 2}],
        }
        f = laurent_from_json(doc, precision=20)
        assert f.is_symbolic
        assert f.coefficient(3).residue == f.ring.residue_field(2)

    def test_malformed(self):
        with pytest.raises(ValidationError, match="Malformed"):
            laurent_from_json({"schema": "oortlift.laurent/1", "p": 3, "cyclotomic": 1}, precision=24)


class TestNewtonPolygon:
    """Tests for newton_polygon and residual polynomials."""

    def test_binomial_zp_lift(self, ring3):
        """1 + lambda^3 T^-2 has two roots with v(T) = 3/4."""
        polygon = newton_polygon(ValuedLaurentPoly(ring3, {0: 1, 2: ring3.lam**3}))
        assert polygon.root_valuations() == [(Fraction(3, 4), 2)]
        assert polygon.roots_in_open_disc() == 2

    def test_monomial_is_degenerate(self, ring3):
        """T^-1 has no segment and one root at T^-1 = 0."""
        polygon = newton_polygon(ValuedLaurentPoly.monomial(ring3, 1))
        assert polygon.degenerate
        assert polygon.zero_multiplicity == 1
        assert polygon.segments == ()

    def test_exp_polygon(self, ring3_level2):
        """exp(mu^3 T^-1) has two roots with v(T) = 1/2."""
        ring = ring3_level2
        polygon = newton_polygon(exp_truncated(ValuedLaurentPoly.monomial(ring, 1, ring.mu**3)))
        assert polygon.root_valuations() == [(Fraction(1, 2), 2)]

    def test_zero_polynomial_raises(self, ring3):
        """The zero polynomial has no polygon."""
        with pytest.raises(ValidationError):
            newton_polygon(ValuedLaurentPoly(ring3, {}))

    def test_lengths_and_slopes_on_random_inputs(self, ring3):
        """Lengths sum to the degree and slopes strictly increase."""
        rng = random.Random(17)
        for _ in range(100):
            terms = {
                k: SymbolicCoefficient(Fraction(rng.randint(0, 12), rng.randint(1, 4)))
                for k in rng.sample(range(12), rng.randint(2, 8))
            }
            f = ValuedLaurentPoly(ring3, terms)
            polygon = newton_polygon(f)
            assert sum(s.length for s in polygon.segments) + polygon.zero_multiplicity == f.degree
            slopes = [s.slope for s in polygon.segments]
            assert slopes == sorted(set(slopes))

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_binomial_family(self, p):
        """1 + lambda^p T^-u has u roots of valuation p / (u (p - 1)) > 0."""
        ring = make_cyclotomic_ring(p, 1, 6 * (p - 1))
        for u in range(1, 7):
            if u % p == 0:
                continue
            polygon = newton_polygon(ValuedLaurentPoly(ring, {0: 1, u: ring.lam**p}))
            assert polygon.root_valuations() == [(Fraction(p, u * (p - 1)), u)]

    def test_residual_polynomial_of_square(self, ring3):
        """(1 + lambda T^-1)^2 has residual polynomial (y + 1)^2."""
        f = ValuedLaurentPoly(ring3, {0: 1, 1: ring3.lam}) ** 2
        (segment,) = newton_polygon(f).segments
        residual = residual_polynomial(f, segment)
        assert residual.degree == 2
        assert not residual.is_squarefree()


class TestRootCertificate:
    """Tests for roots_simple_distinct_certificate."""

    def test_single_binomial(self, ring3):
        """A binomial with unit constant term is certified."""
        f = ValuedLaurentPoly(ring3, {0: 1, 2: ring3.lam**3})
        assert roots_simple_distinct_certificate([f]).certified

    def test_zp2_pair(self, ring3_level2):
        """H1 and H2 of the Z/9 lift have different root valuations."""
        ring = ring3_level2
        h1 = ValuedLaurentPoly(ring, {0: 1, 1: ring.lam**3})
        h2 = exp_truncated(ValuedLaurentPoly.monomial(ring, 1, ring.mu**3))
        assert roots_simple_distinct_certificate([h1, h2]).certified

    def test_shared_roots(self, ring3):
        """[f, f] is refused with the failing pair."""
        f = ValuedLaurentPoly(ring3, {0: 1, 2: ring3.lam**3})
        result = roots_simple_distinct_certificate([f, f])
        assert not result.certified
        assert result.reason == "shared roots"
        assert result.failing_pair == (0, 1)

    def test_repeated_root(self, ring3):
        """A square is refused."""
        f = ValuedLaurentPoly(ring3, {0: 1, 1: ring3.lam}) ** 2
        result = roots_simple_distinct_certificate([f])
        assert not result.certified
        assert "squarefree" in result.reason

    def test_unknown_residue(self, ring3):
        """Symbolic data without residues cannot be certified."""
        f = ValuedLaurentPoly(
            ring3,
            {0: SymbolicCoefficient(Fraction(0), ring3.residue_field.one), 2: SymbolicCoefficient(Fraction(1))},
        )
        result = roots_simple_distinct_certificate([f])
        assert not result.certified
        assert "unknown residue" in result.reason

    def test_not_normalized_raises(self, ring3):
        """A non-unit constant term is a precondition failure."""
        f = ValuedLaurentPoly(ring3, {0: ring3.lam, 1: 1})
        with pytest.raises(ValidationError, match="not normalized"):
            roots_simple_distinct_certificate([f])
