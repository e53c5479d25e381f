"""Configuration types, cross-ratios, and orbit-closure forms.

The independent oracle for forms evaluates the defining rational product
formula directly with Fraction arithmetic on finite points and compares
its vanishing with the homogenized form.
"""

import itertools
import random
from fractions import Fraction

import pytest

from stablecurves.configurations import (
    SectionForm,
    cross_ratio,
    in_orbit_closure,
    iter_set_partitions,
    orbit_form,
    orbit_ideal_forms,
    partition,
    type_of,
)
from stablecurves.errors import (
    CoincidentPoints,
    DegenerateConfiguration,
    TooDegenerateType,
)
from stablecurves.projline import Mobius, parse_configuration, pp
from stablecurves.sampling import DefaultGenerator


def rational_form_value(x, z):
    """Defining formula evaluated with exact fractions; finite points only."""
    xs = [Fraction(p.a, p.b) for p in x]
    zs = [Fraction(p.a, p.b) for p in z]
    return (xs[3] - xs[0]) * (xs[1] - xs[2]) * (zs[1] - zs[0]) * (zs[3] - zs[2]) - (
        xs[1] - xs[0]
    ) * (xs[3] - xs[2]) * (zs[3] - zs[0]) * (zs[1] - zs[2])


class TestTypeOf:
    def test_generic(self):
        assert type_of(parse_configuration("0,1,inf,2")) == partition([[1], [2], [3], [4]])

    def test_one_pair(self):
        assert type_of(parse_configuration("0,0,1,inf")) == partition([[1, 2], [3], [4]])

    def test_small_diagonal(self):
        assert type_of(parse_configuration("5,5,5")) == partition([[1, 2, 3]])

    def test_invariant_under_action(self):
        gen = DefaultGenerator(2)
        for _ in range(50):
            x = gen.configuration(5, distinct=False)
            g = gen.mobius()
            assert type_of(g.apply_configuration(x)) == type_of(x)


class TestCrossRatio:
    def test_normalization_identity(self):
        # t(0, 1, inf, t) = t
        for value in ("2", "-7", "3/5"):
            x = parse_configuration(f"0,1,inf,{value}")
            assert cross_ratio(x) == pp(value)

    def test_integer_example(self):
        assert cross_ratio(parse_configuration("1,2,3,4")) == pp(-3)

    def test_invariance(self):
        gen = DefaultGenerator(4)
        x = parse_configuration("0,1,inf,2")
        for _ in range(50):
            g = gen.mobius()
            assert cross_ratio(g.apply_configuration(x)) == cross_ratio(x)

    def test_never_special(self):
        gen = DefaultGenerator(9)
        for _ in range(100):
            x = tuple(gen.distinct_points(4))
            assert str(cross_ratio(x)) not in ("0", "1", "inf")

    def test_coincident_rejected(self):
        with pytest.raises(CoincidentPoints):
            cross_ratio(parse_configuration("0,0,1,inf"))


class TestOrbitForm:
    def test_hand_expanded_coefficients(self):
        # x = (0,1,inf,2): canonical coefficients, derived by expanding the
        # two bracket products and normalizing the sign
        f = orbit_form(parse_configuration("0,1,inf,2"))
        assert f.coeff_map() == {
            0b0011: 1,   # a1 a2 b3 b4
            0b1100: 1,   # a3 a4 b1 b2
            0b0101: 1,   # a1 a3 b2 b4
            0b1010: 1,   # a2 a4 b1 b3
            0b1001: -2,  # a1 a4 b2 b3
            0b0110: -2,  # a2 a3 b1 b4
        }

    def test_vanishes_at_defining_point(self):
        gen = DefaultGenerator(5)
        for _ in range(50):
            x = tuple(gen.distinct_points(4))
            assert orbit_form(x).vanishes_at(x)

    def test_matches_rational_formula(self):
        # dual route: compare vanishing against the affine product formula
        rng = random.Random(6)
        for _ in range(200):
            x = tuple(pp(Fraction(rng.randint(-8, 8), rng.randint(1, 4))) for _ in range(4))
            z = tuple(pp(Fraction(rng.randint(-8, 8), rng.randint(1, 4))) for _ in range(4))
            if max(len(p) for p in type_of(x).parts) >= 3:
                continue
            lhs = orbit_form(x).evaluate(z)
            rhs = rational_form_value(x, z)
            assert (lhs == 0) == (rhs == 0)

    def test_pair_collision_cuts_diagonal_union(self):
        f = orbit_form(parse_configuration("0,0,1,inf"))
        # proportional to [21][43]: vanishes exactly when z1=z2 or z3=z4
        gen = DefaultGenerator(8)
        for _ in range(100):
            z = tuple(gen.configuration(4, distinct=False))
            expected = z[0] == z[1] or z[2] == z[3]
            assert f.vanishes_at(z) == expected

    def test_vanishes_on_every_near_diagonal(self):
        x = parse_configuration("0,1,inf,2")
        f = orbit_form(x)
        gen = DefaultGenerator(10)
        for i in range(4):
            for _ in range(25):
                shared = gen.projpoint()
                free = gen.projpoint()
                z = tuple(free if j == i else shared for j in range(4))
                assert f.vanishes_at(z)

    def test_invariance_up_to_normalization(self):
        gen = DefaultGenerator(12)
        x = parse_configuration("0,1,inf,5/3")
        for _ in range(50):
            g = gen.mobius()
            assert orbit_form(g.apply_configuration(x)) == orbit_form(x)

    def test_three_coincident_rejected(self):
        with pytest.raises(DegenerateConfiguration):
            orbit_form(parse_configuration("3,3,3,1"))

    def test_zero_locus_is_cross_ratio_level_set(self):
        x = parse_configuration("0,1,inf,2")
        f = orbit_form(x)
        gen = DefaultGenerator(13)
        for _ in range(100):
            z = tuple(gen.distinct_points(4))
            assert f.vanishes_at(z) == (cross_ratio(z) == cross_ratio(x))


class TestSectionFormNormalization:
    def test_primitive_and_sign(self):
        f = SectionForm(tuple(-4 if m == 3 else (8 if m == 12 else 0) for m in range(16)))
        assert f.coeff_map() == {3: 1, 12: -2}

    def test_projective_equality(self):
        coeffs = [0] * 16
        coeffs[5], coeffs[10] = 3, -6
        assert SectionForm(tuple(coeffs)) == SectionForm(tuple(-2 * c for c in coeffs))


class TestIdealForms:
    def test_single_subset_for_n4(self):
        x = parse_configuration("0,1,inf,2")
        forms = orbit_ideal_forms(x)
        assert set(forms) == {(1, 2, 3, 4)}
        assert forms[(1, 2, 3, 4)] == orbit_form(x)

    def test_five_forms_vanish_on_orbit(self):
        x = parse_configuration("0,1,inf,2,3")
        forms = orbit_ideal_forms(x)
        assert len(forms) == 5
        gen = DefaultGenerator(3)
        for _ in range(20):
            g = gen.mobius()
            moved = g.apply_configuration(x)
            for subset, form in forms.items():
                assert form.vanishes_at(tuple(moved[i - 1] for i in subset))

    def test_degenerate_type_skips_bad_subsets(self):
        x = parse_configuration("0,0,1,inf,2")
        forms = orbit_ideal_forms(x)
        # subsets avoiding a triple coincidence: all of them here (max pair)
        assert set(forms) == set(itertools.combinations(range(1, 6), 4))

    def test_skips_triple_projections(self):
        x = parse_configuration("0,0,0,1,inf")  # type {1,2,3}{4}{5}: 3 parts
        forms = orbit_ideal_forms(x)
        assert (1, 2, 3, 4) not in forms
        assert (1, 2, 4, 5) in forms

    def test_too_degenerate_rejected(self):
        with pytest.raises(TooDegenerateType):
            orbit_ideal_forms(parse_configuration("0,0,1,1"))


class TestOrbitClosureMembership:
    def test_orbit_points_belong(self):
        gen = DefaultGenerator(21)
        x = parse_configuration("0,1,inf,2,3")
        for _ in range(20):
            g = gen.mobius()
            assert in_orbit_closure(x, g.apply_configuration(x))

    def test_near_diagonal_belongs(self):
        x = parse_configuration("0,1,inf,2")
        z = parse_configuration("9,5,5,5")
        assert in_orbit_closure(x, z)

    def test_wrong_cross_ratio_rejected(self):
        x = parse_configuration("0,1,inf,2")
        z = parse_configuration("0,1,inf,3")
        assert not in_orbit_closure(x, z)


class TestPartitionHelpers:
    def test_partition_count_bell(self):
        assert sum(1 for _ in iter_set_partitions(range(1, 6))) == 52

    def test_round_trip_string(self):
        P = partition([[1, 2], [3], [4, 5]])
        assert str(P) == "1,2|3|4,5"
