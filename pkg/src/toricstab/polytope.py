"""Polarizations: invariant divisors, their polytopes, and facet volumes.

A divisor assigns a rational coefficient to every ray.  Its polytope is cut
out by the inequalities ``<x, ray> >= -coeff``; on a smooth complete fan it
is always bounded and carries one distinguished point per maximal cone --
the simultaneous solution of that cone's equalities.  Ampleness is exactly
strict convexity of the support function: every cone's point must satisfy
every inequality it does not saturate strictly.  For an ample divisor these
points are precisely the vertices and the polytope's facets correspond to
the rays; each facet volume is measured in the lattice of its own
hyperplane (unit simplex = 1/(dim-1)!).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .errors import DimMismatch, NonAmple
from .fan import Fan, cone_rays
from .lattice import QVector, dot, dual_basis, lattice_volume


@dataclass(frozen=True)
class ToricDivisor:
    fan: Fan
    coeffs: tuple[Fraction, ...]


def divisor(f: Fan, coeffs) -> ToricDivisor:
    """Divisor sum(coeffs[i] * D_i) over the rays of ``f``."""
    cs = tuple(Fraction(c) for c in coeffs)
    if len(cs) != len(f.rays):
        raise DimMismatch(f"{len(cs)} coefficients for {len(f.rays)} rays")
    return ToricDivisor(f, cs)


def anticanonical(f: Fan) -> ToricDivisor:
    """The anticanonical divisor: coefficient one on every ray."""
    return divisor(f, [1] * len(f.rays))


@dataclass(frozen=True)
class Polytope:
    """Vertex data of a divisor's polytope.

    ``vertices[ci]`` is the point attached to maximal cone ``ci`` and
    ``facets[r]`` lists the cones containing ray ``r`` (equivalently, for an
    ample divisor, the vertices of the facet where ``<x, ray r>`` is tight).
    """

    divisor: ToricDivisor
    vertices: tuple[QVector, ...]
    facets: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class VolumeTable:
    """Per-ray normalized facet volumes of an ample polytope."""

    dim: int
    values: tuple[Fraction, ...]

    def __getitem__(self, i) -> Fraction:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    @property
    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))


def polytope_from_divisor(d: ToricDivisor) -> Polytope:
    """Solve each maximal cone's equality system for its polytope point.

    In the dual basis m_1..m_n of a smooth cone the solution of
    ``<v, ray_i> = -coeff_i`` is ``v = sum_i (-coeff_i) m_i``.
    """
    f = d.fan
    n = f.dim
    verts = []
    for cone in f.max_cones:
        duals = dual_basis(cone_rays(f, cone))
        v = [Fraction(0)] * n
        for pos, ray_idx in enumerate(cone):
            c = d.coeffs[ray_idx]
            for j in range(n):
                v[j] -= c * duals[pos][j]
        verts.append(tuple(v))
    facets = tuple(
        tuple(ci for ci, cone in enumerate(f.max_cones) if r in cone)
        for r in range(len(f.rays))
    )
    return Polytope(d, tuple(verts), facets)


def is_ample(p: Polytope) -> bool:
    """Strict convexity: each cone's vertex strictly satisfies all other inequalities."""
    f = p.divisor.fan
    for ci, cone in enumerate(f.max_cones):
        v = p.vertices[ci]
        inside = set(cone)
        for r, ray in enumerate(f.rays):
            if r in inside:
                continue
            if dot(v, ray) <= -p.divisor.coeffs[r]:
                return False
    return True


def facet_volumes(p: Polytope) -> VolumeTable:
    """Normalized volume of every facet of an ample polytope.

    Raises NonAmple when the divisor is not ample (the facet structure is
    then degenerate and the slope theory does not apply).
    """
    f = p.divisor.fan
    if not is_ample(p):
        raise NonAmple("facet volumes need an ample divisor")
    vols = []
    for r, ray in enumerate(f.rays):
        verts = [p.vertices[ci] for ci in p.facets[r]]
        vols.append(lattice_volume(verts, ray))
    return VolumeTable(f.dim, tuple(vols))


def is_reflexive(p: Polytope) -> bool:
    """Whether the polytope is reflexive: integral, with the origin as its
    only interior lattice point.

    The polytope is contained in the convex hull of the cone points (for
    any direction c, pick a maximal cone containing -c; its point bounds
    the support function), so the hull's bounding box is scanned and each
    candidate tested against all inequalities.  Exact for ample divisors;
    for non-ample ones the integrality test is conservative because the
    cone points may not all be true vertices.
    """
    f = p.divisor.fan
    if any(x.denominator != 1 for v in p.vertices for x in v):
        return False
    lo = [min(int(v[j]) for v in p.vertices) for j in range(f.dim)]
    hi = [max(int(v[j]) for v in p.vertices) for j in range(f.dim)]
    interior = []
    for point in iproduct(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if all(
            dot(point, ray) > -p.divisor.coeffs[r]
            for r, ray in enumerate(f.rays)
        ):
            interior.append(point)
            if len(interior) > 1:
                return False
    return interior == [tuple(0 for _ in range(f.dim))]
