"""Unit tests for explicit lifts, the different criterion, the jump condition and depth."""

import random
from fractions import Fraction

import pytest

from src.algebra import FiniteField, FormClass, LaurentPoly
from src.asw import artin_schreier_jump
from src.lifting import (
    DepthProfile,
    DifferentCertificate,
    KummerChain,
    LiftStatus,
    Reduction,
    build_zp2_lift,
    build_zp_lift,
    chain_depth,
    deformation_datum,
    depth_profile_check,
    dihedral_example_check,
    different_criterion,
    generic_different,
    minimal_jumps,
    obstruction_window,
    oort_condition,
    reduction_type,
    zp_depth,
    zp_reduction,
)
from src.padic import SymbolicCoefficient, ValuedLaurentPoly, make_cyclotomic_ring
from src.utils.errors import DepthError, LiftError, ValidationError


@pytest.fixture(scope="module")
def ring3():
    return make_cyclotomic_ring(3, 1)


@pytest.fixture(scope="module")
def ring3_level2():
    return make_cyclotomic_ring(3, 2)


def kummer(ring, *terms):
    return ValuedLaurentPoly(ring, dict(terms))


def random_jumps(p, n, rng):
    jumps = [rng.choice([u for u in range(1, 3 * p) if u % p])]
    for _ in range(n - 1):
        step = rng.choice([0] + [k for k in range(1, 2 * p) if k % p])
        jumps.append(p * jumps[-1] + step)
    return jumps


class TestKummerChain:
    """Tests for build_zp_lift, build_zp2_lift and chain validation."""

    def test_zp_lift(self):
        """(3, 2) gives H_1 = 1 + lambda^3 T^-2."""
        chain = build_zp_lift(3, 2)
        (h1,) = chain.polys
        assert chain.n == 1
        assert h1.degree == 2
        assert h1.valuations() == {0: 0, 2: Fraction(3, 2)}

    def test_zp_lift_p5(self):
        """(5, 1) has coefficient lambda^5 of valuation 5/4."""
        (h1,) = build_zp_lift(5, 1).polys
        assert h1.valuations()[1] == Fraction(5, 4)

    @pytest.mark.parametrize("builder", [build_zp_lift, build_zp2_lift])
    def test_jump_divisible_by_p(self, builder):
        """p | u is not a valid jump."""
        with pytest.raises(LiftError, match="prime to p"):
            builder(3, 3)

    @pytest.mark.parametrize("p,u,degree", [(3, 1, 2), (3, 2, 4), (5, 1, 4)])
    def test_zp2_degrees(self, p, u, degree):
        """deg H_2 = (p - 1) u."""
        chain = build_zp2_lift(p, u)
        assert chain.degrees == (u, degree)

    def test_non_unit_constant_rejected(self, ring3):
        """A chain polynomial needs a unit constant term."""
        with pytest.raises(LiftError, match="not normalized"):
            KummerChain(3, ring3, (kummer(ring3, (0, ring3(3)), (1, ring3.lam)),))

    def test_unit_higher_coefficient_rejected(self, ring3):
        """Higher coefficients must have positive valuation."""
        with pytest.raises(LiftError, match="not normalized"):
            KummerChain(3, ring3, (kummer(ring3, (0, 1), (1, 1)),))

    def test_json(self):
        """Chains serialize their polynomials through valuations and residues."""
        data = build_zp_lift(3, 2).to_json()
        assert data["n"] == 1
        assert data["H"][0]["2"]["valuation"] == "3/2"


class TestGenericDifferent:
    """Tests for branch point counting."""

    def test_zp_lift(self):
        """u + 1 = 3 branch points, different (u + 1)(p - 1) = 6."""
        result = generic_different(build_zp_lift(3, 2))
        assert result.exact
        assert result.value == 6
        assert [row.to_json() for row in result.rows] == [["3/4", 2, 3], ["inf", 1, 3]]

    def test_green_matignon_p3(self):
        """One zero of index 9, two of index 3 and the pole: 8 + 12 + 8 = 28."""
        result = generic_different(build_zp2_lift(3, 1))
        assert result.exact
        assert result.value == 28
        assert [row.to_json() for row in result.rows] == [["3/2", 1, 9], ["1/2", 2, 3], ["inf", 1, 9]]

    def test_extra_factor_never_decreases(self):
        """Multiplying H_1 by a normalized factor can only add branch points."""
        base = build_zp_lift(3, 2)
        factor = kummer(base.ring, (0, 1), (1, base.ring(3)))
        grown = KummerChain(3, base.ring, (base.polys[0] * factor,))
        assert generic_different(grown).value >= generic_different(base).value

    def test_shared_roots_give_a_bound(self, ring3_level2):
        """Two equal polynomials share their zero and the sum is only a bound."""
        ring = ring3_level2
        h = kummer(ring, (0, 1), (1, ring.lam**3))
        result = generic_different(KummerChain(3, ring, (h, h)))
        assert not result.exact
        assert result.certificate.reason == "shared roots"
        assert result.value == 22


class TestDifferentCriterion:
    """Tests for different_criterion."""

    @pytest.mark.parametrize("p,u", [(p, u) for p in (3, 5, 7) for u in range(1, 7) if u % p])
    def test_zp_lifts_certified(self, p, u):
        """Every Z/p lift with a jump prime to p is certified."""
        certificate = different_criterion(build_zp_lift(p, u), [u], check_degrees=True)
        assert certificate.status is LiftStatus.LIFT_CERTIFIED
        assert certificate.delta_eta == certificate.delta_s == (u + 1) * (p - 1)

    @pytest.mark.parametrize("u", [1, 2])
    def test_zp2_lifts_certified_p3(self, u):
        """The Z/9 lifts are certified with jumps (u, 3u)."""
        certificate = different_criterion(build_zp2_lift(3, u), [u, 3 * u], check_degrees=True)
        assert certificate.is_lift

    @pytest.mark.slow
    @pytest.mark.parametrize("u", [1, 2])
    def test_zp2_lifts_certified_p5(self, u):
        """The Z/25 lifts are certified with jumps (u, 5u)."""
        certificate = different_criterion(build_zp2_lift(5, u), [u, 5 * u], check_degrees=True)
        assert certificate.is_lift
        assert certificate.delta_s == 24 * (u + 1) + 80 * u

    def test_green_matignon_value(self):
        """(p^2 - 1)(u + 1) + p (p - 1)^2 u = 28 for p = 3, u = 1."""
        certificate = different_criterion(build_zp2_lift(3, 1), [1, 3])
        assert certificate.delta_eta == certificate.delta_s == 28

    def test_wrong_jump_is_not_a_lift(self):
        """Jump 5 would need different 12, the chain has 6."""
        certificate = different_criterion(build_zp_lift(3, 2), [5])
        assert certificate.status is LiftStatus.NOT_A_LIFT
        assert (certificate.delta_eta, certificate.delta_s) == (6, 12)

    def test_bound_below_target_refutes(self, ring3_level2):
        """An uncertified count of 22 still rules out a different of 28."""
        ring = ring3_level2
        h = kummer(ring, (0, 1), (1, ring.lam**3))
        certificate = different_criterion(KummerChain(3, ring, (h, h)), [1, 3])
        assert certificate.status is LiftStatus.NOT_A_LIFT

    def test_bound_above_target_is_inconclusive(self):
        """An extra factor with a repeated pole order leaves only a bound."""
        base = build_zp_lift(3, 2)
        factor = kummer(base.ring, (0, 1), (1, base.ring(3)))
        chain = KummerChain(3, base.ring, (base.polys[0] * factor,))
        certificate = different_criterion(chain, [2])
        assert certificate.status is LiftStatus.BOUND_ONLY
        assert certificate.delta_eta >= certificate.delta_s

    @pytest.mark.parametrize("jumps", [[3], [1, 2], [1]])
    def test_invalid_jumps(self, jumps):
        """Jumps must be valid for Z/p^n with the chain's n."""
        with pytest.raises(ValidationError):
            different_criterion(build_zp2_lift(3, 1), jumps)

    def test_degree_check(self):
        """(1, 4) expects deg H_2 = 3 but the chain has 2."""
        with pytest.raises(LiftError, match="deg H_i"):
            different_criterion(build_zp2_lift(3, 1), [1, 4], check_degrees=True)

    def test_json_shape(self):
        """Rationals as strings, the pole as "inf"."""
        data = different_criterion(build_zp_lift(3, 2), [2]).to_json()
        assert data == {
            "delta_eta": "6",
            "delta_s": "6",
            "status": "lift-certified",
            "branch_table": [["3/4", 2, 3], ["inf", 1, 3]],
        }

    def test_certified_needs_equality(self):
        """The certificate refuses a certified status with unequal differents."""
        with pytest.raises(LiftError, match="equal"):
            DifferentCertificate(Fraction(6), Fraction(12), LiftStatus.LIFT_CERTIFIED)


class TestZpReduction:
    """Tests for the special fiber of the Z/p step."""

    @pytest.mark.parametrize("p,u", [(3, 1), (3, 2), (5, 1), (5, 3), (7, 2)])
    def test_reduces_to_artin_schreier(self, p, u):
        """Z = 1 + lambda Y turns Z^p = 1 + lambda^p T^-u into y^p - y = t^-u."""
        reduction = zp_reduction(build_zp_lift(p, u))
        assert reduction.is_artin_schreier
        assert reduction.rhs == LaurentPoly.monomial(FiniteField(p), -u)
        assert artin_schreier_jump(reduction.rhs) == u

    def test_first_step_of_zp2_lift(self):
        """The Z/9 chain reduces to t^-u at its first level as well."""
        reduction = zp_reduction(build_zp2_lift(3, 2))
        assert reduction.is_artin_schreier
        assert artin_schreier_jump(reduction.rhs) == 2

    def test_constant_term_must_be_one(self, ring3):
        """A unit constant other than 1 is refused."""
        chain = KummerChain(3, ring3, (kummer(ring3, (0, 4), (1, ring3.lam**3)),))
        with pytest.raises(LiftError, match="exactly 1"):
            zp_reduction(chain)

    def test_non_integral_right_side(self, ring3):
        """3 T^-1 / lambda^3 has valuation -1/2."""
        chain = KummerChain(3, ring3, (kummer(ring3, (0, 1), (1, ring3(3))),))
        with pytest.raises(LiftError, match="not integral"):
            zp_reduction(chain)


class TestDihedralExample:
    """Tests for dihedral_example_check."""

    @pytest.mark.parametrize("p,expected", [(3, 7), (5, 13), (7, 19)])
    def test_differents_agree(self, p, expected):
        """Both differents equal 3p - 2."""
        certificate = dihedral_example_check(p)
        assert certificate.is_lift
        assert certificate.delta_eta == certificate.delta_s == expected

    def test_branch_table(self):
        """T = lambda^6 / 4 with index 3 and T = 0 with index 2."""
        data = dihedral_example_check(3).to_json()
        assert data["branch_table"] == [["3", 1, 3], ["inf", 1, 2]]

    def test_even_prime(self):
        """p = 2 has no dihedral example."""
        with pytest.raises(ValidationError, match="odd prime"):
            dihedral_example_check(2)

    def test_explicit_precision(self):
        """A short working precision still certifies the lift."""
        certificate = dihedral_example_check(5, precision=40)
        assert certificate.is_lift
        assert certificate.to_json() == dihedral_example_check(5).to_json()


class TestOortCondition:
    """Tests for oort_condition and minimal_jumps."""

    def test_failing_example(self):
        """p = 5, (1, 5, 34, 170) fails at i = 3 with a_3 = 10."""
        verdict = oort_condition(5, [1, 5, 34, 170])
        assert (verdict.holds, verdict.index, verdict.value) == (False, 3, 10)
        assert verdict.to_json() == {"holds": False, "index": 3, "value": 10}

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_minimal_jumps_hold(self, p):
        """(u, pu, p^2 u, ...) always passes."""
        for n in range(1, 6):
            for u in (1, 2, 4):
                if u % p:
                    assert oort_condition(p, minimal_jumps(p, u, n)).holds

    def test_short_tuples_hold(self):
        """For n <= 3 there is no index to check."""
        rng = random.Random(3)
        for _ in range(100):
            p = rng.choice([2, 3, 5, 7])
            assert oort_condition(p, random_jumps(p, rng.randint(1, 3), rng)).holds

    def test_p3_minimal(self):
        """(1, 3, 9, 27) passes."""
        assert oort_condition(3, [1, 3, 9, 27]).holds

    def test_invalid_jumps(self):
        """(1, 2) breaks u_2 >= p u_1."""
        with pytest.raises(ValidationError):
            oort_condition(3, [1, 2])

    def test_window_scales(self):
        """Scaling the jumps by c scales both ends of every window by c."""
        rng = random.Random(11)
        for _ in range(100):
            p = rng.choice([3, 5, 7])
            jumps = random_jumps(p, 4, rng)
            c = rng.choice([k for k in range(2, 12) if k % p])
            scaled = [c * u for u in jumps]
            for i in range(2, 5):
                low, high = obstruction_window(p, jumps, i)
                assert obstruction_window(p, scaled, i) == (c * low, c * high)

    def test_minimal_jumps(self):
        """(u_1, p u_1, ..., p^{n-1} u_1) with u_1 prime to p."""
        assert minimal_jumps(3, 1, 4) == (1, 3, 9, 27)
        with pytest.raises(ValidationError, match="prime to p"):
            minimal_jumps(3, 3, 2)


class TestZpDepth:
    """Tests for zp_depth and reduction_type."""

    @pytest.mark.parametrize("p,u", [(3, 1), (3, 2), (5, 1), (5, 3)])
    def test_linear_in_radius(self, p, u):
        """1 + lambda^p T^-u has depth u r up to r = 1/(u(p-1))."""
        (h1,) = build_zp_lift(p, u).polys
        edge = Fraction(1, u * (p - 1))
        assert zp_depth(h1, 0) == 0
        assert zp_depth(h1, edge / 2) == u * edge / 2
        assert zp_depth(h1, edge) == Fraction(1, p - 1)

    def test_etale_at_zero(self):
        """The Z/p lift has separable reduction on the whole disc."""
        (h1,) = build_zp_lift(3, 2).polys
        assert reduction_type(h1, 0) is Reduction.ETALE

    def test_multiplicative(self, ring3):
        """1 + T^-1 reduces to 1 + u^-1, not a p-th power."""
        f = kummer(ring3, (0, 1), (1, 1))
        assert zp_depth(f, 0) == Fraction(3, 2)
        assert reduction_type(f, 0) is Reduction.MULTIPLICATIVE

    def test_small_deviation_is_etale(self, ring3):
        """Terms of val_r >= p/(p-1) never matter."""
        f = kummer(ring3, (0, 1), (1, ring3(9)))
        assert zp_depth(f, 0) == 0

    def test_peel_absorbs_pth_power(self, ring3_level2):
        """(1 + pi T^-1)^3 (1 + lambda^3 T^-2) has the depth of its second factor."""
        ring = ring3_level2
        second = kummer(ring, (0, 1), (2, ring.lam**3))
        f = kummer(ring, (0, 1), (1, ring.pi)) ** 3 * second
        assert zp_depth(f, Fraction(1, 8)) == zp_depth(second, Fraction(1, 8)) == Fraction(1, 4)
        assert zp_depth(f, 0) == 0

    def test_additive(self, ring3):
        """Between the extremes the reduction is additive."""
        (h1,) = build_zp_lift(3, 2).polys
        assert reduction_type(h1, Fraction(1, 8)) is Reduction.ADDITIVE

    def test_negative_radius(self):
        """Radii are nonnegative."""
        (h1,) = build_zp_lift(3, 2).polys
        with pytest.raises(ValidationError, match="nonnegative"):
            zp_depth(h1, -1)

    def test_nonconstant_pth_power(self, ring3):
        """1 + T^-3 reduces to (1 + u^-1)^3."""
        with pytest.raises(DepthError, match="nonconstant p-th power"):
            zp_depth(kummer(ring3, (0, 1), (3, 1)), 0)

    def test_ramified_peel(self, ring3):
        """lambda T^-3 would need a cube root of lambda."""
        with pytest.raises(DepthError, match="ramified"):
            zp_depth(kummer(ring3, (0, 1), (3, ring3.lam)), 0)

    def test_symbolic_rejected(self, ring3):
        """Depth needs exact coefficients."""
        f = ValuedLaurentPoly(ring3, {0: SymbolicCoefficient(Fraction(0)), 1: SymbolicCoefficient(Fraction(1))})
        with pytest.raises(DepthError, match="exact"):
            zp_depth(f, 0)

    def test_zero(self, ring3):
        """The zero function has no depth."""
        with pytest.raises(DepthError, match="zero"):
            zp_depth(ValuedLaurentPoly(ring3), 0)


class TestDepthProfile:
    """Tests for depth_profile_check."""

    def test_slope_matches_branch_points(self):
        """Depth 2r has slope 2 = nu - 1 with two zeros and the pole."""
        (h1,) = build_zp_lift(3, 2).polys
        profile = depth_profile_check(h1, [0, Fraction(1, 8), Fraction(1, 4)])
        assert [d for _, d in profile.samples] == [0, Fraction(1, 4), Fraction(1, 2)]
        assert profile.slopes == (2, 2)
        assert profile.bounds == (2, 2)
        assert profile.holds

    def test_constant(self, ring3):
        """A constant has an all-zero profile."""
        profile = depth_profile_check(kummer(ring3, (0, 1)), [0, Fraction(1, 2), 1])
        assert all(d == 0 for _, d in profile.samples)
        assert profile.holds

    def test_multiplicative_profile_is_flat(self, ring3):
        """1 + T^-1 stays multiplicative with depth p/(p-1) on every disc."""
        profile = depth_profile_check(kummer(ring3, (0, 1), (1, 1)), [0, Fraction(1, 4), Fraction(1, 2)])
        assert all(d == Fraction(3, 2) for _, d in profile.samples)
        assert profile.slopes == (0, 0)
        assert profile.holds

    def test_depth_above_cap_rejected(self):
        """Depths live in [0, p/(p-1)]."""
        with pytest.raises(DepthError, match="Depths must lie"):
            DepthProfile(p=3, samples=((Fraction(0), Fraction(2)),), slopes=(), bounds=(), holds=True)

    def test_radii_must_increase(self):
        """Repeated or decreasing radii are rejected."""
        (h1,) = build_zp_lift(3, 2).polys
        with pytest.raises(ValidationError, match="strictly increasing"):
            depth_profile_check(h1, [Fraction(1, 4), Fraction(1, 8)])

    def test_json(self):
        """Samples are rendered as rational strings."""
        (h1,) = build_zp_lift(3, 2).polys
        data = depth_profile_check(h1, [0, Fraction(1, 8)]).to_json()
        assert data["samples"] == [["0", "0"], ["1/8", "1/4"]]
        assert data["slopes"] == ["2"]


class TestChainDepth:
    """Tests for chain_depth."""

    def test_single_step(self):
        """For n = 1 the chain depth is the Z/p depth."""
        chain = build_zp_lift(3, 2)
        assert chain_depth(chain, Fraction(1, 8)) == Fraction(1, 4)

    def test_trivial_lower_level(self, ring3):
        """A lower level within p/(p-1) of 1 leaves the top step's depth."""
        chain = KummerChain(
            3, ring3, (kummer(ring3, (0, 1), (1, ring3(27))), kummer(ring3, (0, 1), (2, ring3.lam**3)))
        )
        assert chain_depth(chain, Fraction(1, 8)) == Fraction(1, 4)
        assert chain_depth(chain, 0) == 0

    def test_refuses_nontrivial_lower_level(self):
        """Z_1 of the Z/9 lift is not a p-th power up to a unit."""
        with pytest.raises(DepthError, match="p-th power"):
            chain_depth(build_zp2_lift(3, 1), 0)


class TestDeformationDatum:
    """Tests for deformation_datum."""

    def test_multiplicative_is_logarithmic(self, ring3):
        """du/u for u = 1 + t^-1."""
        datum = deformation_datum(kummer(ring3, (0, 1), (1, 1)), 0)
        assert datum.kind is Reduction.MULTIPLICATIVE
        assert datum.form_class is FormClass.LOGARITHMIC
        assert datum.depth == Fraction(3, 2)

    def test_additive_is_exact(self):
        """du for the residual c u^-2 of the Z/p lift at r = 1/8."""
        (h1,) = build_zp_lift(3, 2).polys
        datum = deformation_datum(h1, Fraction(1, 8))
        assert datum.kind is Reduction.ADDITIVE
        assert datum.form_class is FormClass.EXACT
        assert datum.to_json()["depth"] == "1/4"

    def test_etale_has_no_datum(self):
        """Depth 0 carries no deformation datum."""
        (h1,) = build_zp_lift(3, 2).polys
        with pytest.raises(DepthError, match="positive depth"):
            deformation_datum(h1, 0)
