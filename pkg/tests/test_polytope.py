"""Divisors, polytopes, ampleness, facet volumes, reflexivity."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricstab.errors import DimMismatch, NonAmple
from toricstab.fan import (
    catalog_fano4,
    construct_hirzebruch,
    construct_proj_split,
    construct_projective_space,
)
from toricstab.polytope import (
    anticanonical,
    divisor,
    facet_volumes,
    is_ample,
    is_reflexive,
    polytope_from_divisor,
)


def hirzebruch_polytope(m, coeffs):
    return polytope_from_divisor(divisor(construct_hirzebruch(m), coeffs))


class TestVertices:
    def test_plane_anticanonical_triangle(self):
        p = polytope_from_divisor(anticanonical(construct_projective_space(2)))
        assert set(p.vertices) == {(-1, -1), (2, -1), (-1, 2)}

    def test_twisted_surface_anticanonical(self):
        p = hirzebruch_polytope(1, (1, 1, 1, 1))
        assert p.vertices == ((-1, -1), (0, -1), (2, 1), (-1, 1))

    def test_facet_lists_follow_rays(self):
        f = construct_projective_space(2)
        p = polytope_from_divisor(anticanonical(f))
        # ray r bounds exactly the cones containing it
        assert p.facets == ((1, 2), (0, 2), (0, 1))

    def test_vertices_satisfy_their_equalities(self):
        f = construct_proj_split(1, (1, 0, 0))
        p = polytope_from_divisor(anticanonical(f))
        for ci, cone in enumerate(f.max_cones):
            v = p.vertices[ci]
            for r in cone:
                assert sum(a * b for a, b in zip(v, f.rays[r])) == -1

    def test_coefficient_count_checked(self):
        with pytest.raises(DimMismatch):
            divisor(construct_projective_space(2), (1, 1))


class TestAmpleness:
    def test_anticanonical_on_catalog(self):
        for name, f in catalog_fano4():
            p = polytope_from_divisor(anticanonical(f))
            assert is_ample(p), name

    def test_twist_two_anticanonical_degenerates(self):
        p = hirzebruch_polytope(2, (1, 1, 1, 1))
        assert not is_ample(p)
        with pytest.raises(NonAmple):
            facet_volumes(p)

    def test_line_segment(self):
        f = construct_projective_space(1)
        assert is_ample(polytope_from_divisor(divisor(f, (1, 1))))
        assert not is_ample(polytope_from_divisor(divisor(f, (1, -1))))

    @pytest.mark.parametrize("m", [0, 1, 2, 3])
    def test_matches_twist_criterion(self, m):
        # ample iff both coordinates in the standard basis of the divisor
        # class group are positive
        span = [-1, 0, 1, 2]
        for a1 in span:
            for a2 in span:
                for a3 in span:
                    for a4 in span:
                        p = hirzebruch_polytope(m, (a1, a2, a3, a4))
                        expected = a1 + a3 - m * a2 > 0 and a2 + a4 > 0
                        assert is_ample(p) == expected, (m, a1, a2, a3, a4)


class TestFacetVolumes:
    def test_plane(self):
        p = polytope_from_divisor(anticanonical(construct_projective_space(2)))
        t = facet_volumes(p)
        assert t.values == (3, 3, 3)
        assert t.total == 9
        assert t.dim == 2 and len(t) == 3 and t[0] == 3

    def test_quadric_square(self):
        p = hirzebruch_polytope(0, (1, 1, 1, 1))
        assert facet_volumes(p).values == (2, 2, 2, 2)

    def test_twisted_surface(self):
        p = hirzebruch_polytope(1, (1, 1, 1, 1))
        assert facet_volumes(p).values == (2, 1, 2, 3)

    def test_fourfold_bundle_over_line(self):
        f = construct_proj_split(1, (1, 0, 0))
        t = facet_volumes(polytope_from_divisor(anticanonical(f)))
        third = Fraction(56, 3)
        assert t.values == (8, third, third, third, Fraction(32, 3), Fraction(32, 3))
        assert t.total == Fraction(256, 3)

    def test_segment_endpoints(self):
        f = construct_projective_space(1)
        t = facet_volumes(polytope_from_divisor(divisor(f, (2, 3))))
        assert t.values == (1, 1)
        assert t.dim == 1

    def test_scaling_power(self):
        base = facet_volumes(hirzebruch_polytope(1, (1, 1, 1, 1)))
        for k in (2, 3):
            scaled = facet_volumes(hirzebruch_polytope(1, (k, k, k, k)))
            assert scaled.values == tuple(k * v for v in base.values)

    def test_linear_equivalence_invariance(self):
        # adding the divisor of a character translates the polytope
        base = facet_volumes(hirzebruch_polytope(1, (1, 1, 1, 1)))
        shifted = facet_volumes(hirzebruch_polytope(1, (2, 2, 1, 0)))
        assert shifted.values == base.values

    @given(st.integers(-3, 3), st.integers(-3, 3), st.integers(0, 2))
    @settings(max_examples=40, deadline=None)
    def test_translation_invariance_fuzz(self, u1, u2, m):
        f = construct_hirzebruch(m)
        base_coeffs = (3, 1, 3, 1)  # ample for every twist up to 5
        coeffs = tuple(
            a + u1 * r[0] + u2 * r[1] for a, r in zip(base_coeffs, f.rays)
        )
        p = polytope_from_divisor(divisor(f, coeffs))
        assert is_ample(p)
        base = facet_volumes(polytope_from_divisor(divisor(f, base_coeffs)))
        assert facet_volumes(p).values == base.values

    def test_rational_coefficients(self):
        p = hirzebruch_polytope(0, (Fraction(1, 2),) * 4)
        assert facet_volumes(p).values == (1, 1, 1, 1)


class TestReflexive:
    def test_anticanonical_surfaces(self):
        assert is_reflexive(hirzebruch_polytope(0, (1, 1, 1, 1)))
        assert is_reflexive(hirzebruch_polytope(1, (1, 1, 1, 1)))

    def test_anticanonical_spaces(self):
        for n in (2, 3, 4):
            p = polytope_from_divisor(anticanonical(construct_projective_space(n)))
            assert is_reflexive(p)

    def test_non_ample_but_reflexive(self):
        # twist-two surface: the anticanonical polytope collapses to a
        # triangle with a unique interior lattice point
        assert is_reflexive(hirzebruch_polytope(2, (1, 1, 1, 1)))

    def test_big_polytope_not_reflexive(self):
        assert not is_reflexive(hirzebruch_polytope(1, (1, 0, 0, 4)))

    def test_shifted_square_not_reflexive(self):
        assert not is_reflexive(hirzebruch_polytope(0, (0, 2, 2, 0)))

    def test_fractional_vertices_not_reflexive(self):
        assert not is_reflexive(hirzebruch_polytope(0, (Fraction(1, 2),) * 4))

    def test_fourfold_catalog_anticanonical(self):
        for name, f in catalog_fano4():
            p = polytope_from_divisor(anticanonical(f))
            assert is_reflexive(p), name
