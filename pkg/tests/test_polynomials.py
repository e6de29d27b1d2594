from fractions import Fraction

import pytest

from repgap import arith, polynomials as poly
from repgap.arith import DomainError
from repgap.polynomials import PolyZ, ShapeTag, SingularCaseError


class TestPolyZ:
    def test_normalization(self):
        assert PolyZ([1, 2, 0, 0]).coeffs == (1, 2)
        assert PolyZ([0, 0]).is_zero
        assert PolyZ([]).degree == -1

    def test_arithmetic(self):
        f = PolyZ([1, 1])  # 1 + X
        g = PolyZ([-1, 1])  # -1 + X
        assert (f * g).coeffs == (-1, 0, 1)
        assert (f + g).coeffs == (0, 2)
        assert (f - f).is_zero

    def test_evaluate(self):
        f = PolyZ([2, 0, 3])  # 2 + 3X^2
        assert f.evaluate(-2) == 14

    def test_derivative(self):
        assert PolyZ([5, 4, 3]).derivative().coeffs == (4, 6)

    def test_divide_out_root(self):
        f = PolyZ([-6, 11, -6, 1])  # (X-1)(X-2)(X-3)
        g = f.divide_out_root(2)
        assert g.evaluate(1) == 0 and g.evaluate(3) == 0
        with pytest.raises(DomainError):
            f.divide_out_root(5)

    def test_json_roundtrip(self):
        f = PolyZ([10**40, -1, 7])
        assert PolyZ.from_json(f.to_json()) == f
        assert PolyZ([]).to_json() == ["0"]

    def test_immutable(self):
        f = PolyZ([1, 2])
        with pytest.raises(AttributeError):
            f.coeffs = (3,)


class TestBuildP:
    def test_smallest(self):
        assert poly.build_P(3, 0).coeffs == (1, 1, 1)

    def test_constant_shift(self):
        assert poly.build_P(7, -127).coeffs == (-126, 1, 1, 1, 1, 1, 1)

    def test_evaluation(self):
        assert poly.build_P(7, -43).evaluate(-2) == 0

    def test_value_at_one(self):
        for p in (3, 5, 7, 11, 13):
            for a in range(-10, 11):
                assert poly.build_P(p, a).evaluate(1) == a + p

    def test_guards(self):
        with pytest.raises(DomainError):
            poly.build_P(9, 0)
        with pytest.raises(DomainError):
            poly.build_P(10**4 + 7, 0)

    def test_product_identity(self):
        # (X - 1) * P = X^p + aX - (a+1)
        x_minus_1 = PolyZ([-1, 1])
        for p in (3, 5, 7, 11, 13):
            for a in range(-10, 11):
                lhs = x_minus_1 * poly.build_P(p, a)
                rhs = PolyZ([-(a + 1), a] + [0] * (p - 2) + [1])
                assert lhs == rhs


class TestShiftPlusOne:
    def test_square(self):
        assert poly.shift_plus_one(PolyZ([0, 0, 1])).coeffs == (1, 2, 1)

    def test_shifted_constant_term(self):
        g = poly.shift_plus_one(poly.build_P(7, 56))  # a1 = 8
        assert g.constant == 7 * 9

    def test_degree_preserved(self):
        for coeffs in ([1, 2, 3], [5], [0, 1, 0, 0, 2]):
            f = PolyZ(coeffs)
            assert poly.shift_plus_one(f).degree == f.degree

    def test_binomial_coefficients(self):
        import math

        g = poly.shift_plus_one(poly.build_P(7, 7 * 4))
        expected = [7 * 5] + [math.comb(7, 7 - 1 - i) for i in range(1, 6)] + [1]
        assert g.coeffs == tuple(expected)


class TestDiscriminants:
    def test_quadratics(self):
        assert poly.discriminant_resultant(PolyZ([1, 1, 1])) == -3
        assert poly.discriminant_resultant(PolyZ([-1, 0, 1])) == 4

    def test_closed_small(self):
        assert poly.discriminant_closed(3, 0) == 3

    def test_closed_with_zero_term(self):
        # a = -1 makes P = X^4 + X^3 + X^2 + X at p = 5
        assert poly.discriminant_closed(5, -1) == 16
        assert abs(poly.discriminant_resultant(poly.build_P(5, -1))) == 16

    def test_frozen_value(self):
        assert poly.discriminant_closed(7, 7) == 1297500400

    def test_oracle_equivalence_sweep(self):
        for p in (3, 5, 7, 11, 13):
            for a in range(-30, 31):
                if a == -p:
                    continue
                closed = poly.discriminant_closed(p, a)
                oracle = poly.discriminant_resultant(poly.build_P(p, a))
                assert closed == abs(oracle), (p, a)

    def test_singular_case(self):
        with pytest.raises(SingularCaseError):
            poly.discriminant_closed(7, -7)
        # the oracle still works there
        assert poly.discriminant_resultant(poly.build_P(7, -7)) != 0

    def test_linear(self):
        assert poly.discriminant_resultant(PolyZ([4, 3])) == 1

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            poly.discriminant_resultant(PolyZ([]))

    def test_product_factor_consistency(self):
        # disc((X-1) * P) = disc(X^p + aX - (a+1)) for both routes of building it
        for p in (5, 7):
            for a in (-3, 2, 9):
                left = PolyZ([-1, 1]) * poly.build_P(p, a)
                right = PolyZ([-(a + 1), a] + [0] * (p - 2) + [1])
                assert poly.discriminant_resultant(left) == poly.discriminant_resultant(
                    right
                )


class TestNewtonPolygon:
    def test_eisenstein_cubic(self):
        np_ = poly.newton_polygon(PolyZ([2, 2, 0, 1]), 2)
        assert np_.vertices == ((0, 0), (3, 1))
        assert np_.slopes == (Fraction(1, 3),)

    def test_two_segment_shape(self):
        g = poly.shift_plus_one(poly.build_P(7, -39991))
        np_ = poly.newton_polygon(g, 7)
        assert np_.vertices == ((0, 0), (5, 1), (6, 2))
        assert np_.slopes == (Fraction(1, 5), Fraction(1, 1))

    def test_constant_poly(self):
        np_ = poly.newton_polygon(PolyZ([5]), 5)
        assert np_.vertices == ((0, 1),)

    def test_zero_constant_rejected(self):
        with pytest.raises(DomainError):
            poly.newton_polygon(PolyZ([0, 1]), 3)

    def test_slopes_strictly_increase(self):
        for p in (7, 11, 13):
            for a1 in range(-20, 21):
                if a1 in (0, -1):
                    continue
                g = poly.shift_plus_one(poly.build_P(p, p * a1))
                np_ = poly.newton_polygon(g, p)
                assert all(
                    s1 < s2 for s1, s2 in zip(np_.slopes, np_.slopes[1:])
                )

    def test_hull_property_brute_force(self):
        # every valuation point lies on or above every hull segment, every
        # vertex is a valuation point, and no vertex is redundant
        cases = [
            (PolyZ([8, 4, 2, 1]), 2),
            (PolyZ([27, 9, 1, 3, 81]), 3),
            (PolyZ([125, 1, 5, 0, 25, 1]), 5),
            (PolyZ([49, 14, 7, 2]), 7),
            (poly.shift_plus_one(poly.build_P(11, -11 * 32)), 11),
        ]
        for f, p in cases:
            n = f.degree
            pts = {
                (n - i, arith.int_valuation(c, p))
                for i, c in enumerate(f.coeffs)
                if c != 0
            }
            hull = poly.newton_polygon(f, p)
            assert set(hull.vertices) <= pts
            assert hull.vertices[0][0] == 0
            assert hull.vertices[-1][0] == n
            for (x1, y1), (x2, y2), _ in hull.segments:
                for (px, py) in pts:
                    if x1 <= px <= x2:
                        # above-or-on test without division
                        assert (py - y1) * (x2 - x1) >= (y2 - y1) * (px - x1)
            # interior vertices are strictly below their neighbors' chord
            for (ax, ay), (bx, by), (cx, cy) in zip(
                hull.vertices, hull.vertices[1:], hull.vertices[2:]
            ):
                assert (by - ay) * (cx - ax) < (cy - ay) * (bx - ax)


class TestEisenstein:
    def test_shifted_is_eisenstein(self):
        assert poly.is_eisenstein(poly.shift_plus_one(poly.build_P(7, 56)), 7)

    def test_plain_repunit_poly_is_not(self):
        for p in (2, 3, 7):
            assert not poly.is_eisenstein(PolyZ([1, 1, 1]), p)

    def test_computed_example(self):
        # a = -49: constant 7(1-7) = -42 has valuation exactly 1
        assert poly.is_eisenstein(poly.shift_plus_one(poly.build_P(7, -49)), 7)

    def test_predicate_sweep(self):
        # Eisenstein iff p does not divide a1 + 1 (for a = p*a1, a != -p)
        for p in (7, 11, 13):
            for a1 in range(-20, 21):
                if a1 in (0, -1):
                    continue
                g = poly.shift_plus_one(poly.build_P(p, p * a1))
                assert poly.is_eisenstein(g, p) == ((a1 + 1) % p != 0)


class TestIntegerRoots:
    def test_single_root(self):
        assert poly.integer_roots(poly.build_P(7, -127)) == [2]

    def test_root_one_at_minus_p(self):
        for p in (7, 11, 13):
            assert poly.integer_roots(poly.build_P(p, -p)) == [1]

    def test_eisenstein_case_rootless(self):
        assert poly.integer_roots(poly.build_P(7, 7)) == []

    def test_zero_and_negative_roots(self):
        # Φ7(0) = Φ7(-1) = 1, so a = -1 gives roots 0 and -1
        assert poly.integer_roots(poly.build_P(7, -1)) == [-1, 0]

    def test_multiplicity(self):
        f = PolyZ([-1, 1]) * PolyZ([-1, 1]) * PolyZ([3, 1])
        assert poly.integer_roots(f) == [-3, 1, 1]

    def test_roots_verify_and_divide_constant(self):
        for p in (7, 11):
            for a in range(-50, 51):
                if a == 0:
                    continue
                f = poly.build_P(p, a)
                for r in poly.integer_roots(f):
                    assert f.evaluate(r) == 0
                    if r != 0 and f.constant != 0:
                        assert f.constant % r == 0


class TestFactorDegreesModQ:
    def test_split(self):
        assert poly.factor_degrees_mod_q(PolyZ([1, 0, 1]), 5).degrees == (1, 1)

    def test_inert(self):
        assert poly.factor_degrees_mod_q(PolyZ([1, 0, 1]), 7).degrees == (2,)

    def test_irreducibility_certificate(self):
        # least q where build_P(7,7) stays irreducible mod q
        f = poly.build_P(7, 7)
        first = None
        for q in arith.primes_up_to(50):
            rep = poly.factor_degrees_mod_q(f, q)
            if rep.squarefree and rep.degrees == (6,):
                first = q
                break
        assert first == 3

    def test_degrees_sum_to_degree(self):
        for p in (7, 11):
            for a in (-43, -7, 3, 19):
                f = poly.build_P(p, a)
                for q in arith.primes_up_to(40):
                    rep = poly.factor_degrees_mod_q(f, q)
                    assert sum(rep.degrees) == f.degree

    def test_non_squarefree_flag_and_multiplicity(self):
        f = PolyZ([1, 1, 1]) * PolyZ([1, 1, 1]) * PolyZ([1, 1])
        rep = poly.factor_degrees_mod_q(f, 5)
        assert not rep.squarefree
        assert rep.degrees == (1, 2, 2)

    def test_qth_power_descent(self):
        # (X+1)^9 mod 3 exercises the Frobenius descent twice
        f = PolyZ([1, 1])
        g = f
        for _ in range(8):
            g = g * f
        rep = poly.factor_degrees_mod_q(g, 3)
        assert rep.degrees == (1,) * 9
        assert not rep.squarefree

    def test_bad_leading_coefficient(self):
        with pytest.raises(DomainError):
            poly.factor_degrees_mod_q(PolyZ([1, 5]), 5)

    def test_matches_root_detection(self):
        for a in (-43, 7, 11):
            f = poly.build_P(7, a)
            for q in arith.primes_up_to(60):
                rep = poly.factor_degrees_mod_q(f, q)
                assert poly.has_root_mod_q(f, q) == (1 in rep.degrees)


class TestClassifyShape:
    def test_eisenstein_route(self):
        shape = poly.classify_shape(7, 7)
        assert shape.tag is ShapeTag.IRREDUCIBLE
        assert shape.certificate["route"] == "eisenstein"

    def test_fiat_pair(self):
        shape = poly.classify_shape(7, -7)
        assert shape.tag is ShapeTag.LINEAR_TIMES_IRREDUCIBLE
        assert shape.root == 1

    def test_survivor_pair(self):
        shape = poly.classify_shape(7, -43)
        assert shape.tag is ShapeTag.LINEAR_TIMES_IRREDUCIBLE
        assert shape.root == -2
        assert shape.certificate["primes"]

    def test_dumas_route(self):
        # a = 7 * (-8): a1 + 1 = -7 divisible by 7, no integer root
        shape = poly.classify_shape(7, -56)
        assert shape.certificate["route"] == "two_segment_polygon"
        assert shape.tag is ShapeTag.IRREDUCIBLE

    def test_dumas_route_with_root(self):
        # a = -39991 = 7 * (-5713): two-segment polygon and root -6
        shape = poly.classify_shape(7, -39991)
        assert shape.certificate["route"] == "two_segment_polygon"
        assert shape.tag is ShapeTag.LINEAR_TIMES_IRREDUCIBLE
        assert shape.root == -6

    def test_reducible_cofactor_reported(self):
        # Φ7 - 1 = X (X+1) (X^2+X+1) (X^2-X+1): linear factor, cofactor splits
        shape = poly.classify_shape(7, -1)
        assert shape.tag is ShapeTag.HAS_LINEAR_FACTOR_UNCERTIFIED
        assert shape.root in (-1, 0)

    def test_soundness_against_mod_q_patterns(self):
        # a verdict must never contradict a squarefree degree pattern
        for (p, a) in ((7, 7), (7, -43), (11, -683), (13, -2731), (7, -56)):
            shape = poly.classify_shape(p, a)
            f = poly.build_P(p, a)
            for q in arith.primes_up_to(60):
                if f.lead % q == 0:
                    continue
                rep = poly.factor_degrees_mod_q(f, q)
                if not rep.squarefree:
                    continue
                sums = {0}
                for d in rep.degrees:
                    sums |= {s + d for s in sums}
                if shape.tag is ShapeTag.IRREDUCIBLE:
                    assert sums >= {0, f.degree}
                    assert 1 not in rep.degrees or not poly.integer_roots(f)
                elif shape.tag is ShapeTag.LINEAR_TIMES_IRREDUCIBLE:
                    assert 1 in sums  # the linear factor shows up mod q
                    assert f.degree - 1 in sums

    def test_guards(self):
        with pytest.raises(DomainError):
            poly.classify_shape(5, 5)
        with pytest.raises(DomainError):
            poly.classify_shape(7, 0)
