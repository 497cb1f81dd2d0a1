"""Chart-level oracle for equivariant vector fields.

Every maximal smooth cone sigma gives an affine chart with coordinates
z_1..z_n dual to its rays.  A monomial derivation chi(u) * d_v expands
there as

    chi(u) d_v  =  sum_i  <m_i, v> * chi(u + m_i) * d/dz_i

with m_1..m_n the dual basis of sigma's rays, and it is regular on the
chart exactly when every exponent with nonzero coefficient lies in the
semigroup S_sigma.  This gives an existence check for rank-one sheaf
data that is independent of the subspace criterion used by the
stability module: the two are compared against each other in tests and
by the `oracle` command, never merged.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidLambda, NotMaximal, ZeroVector
from .fan import Fan, cone_rays
from .lattice import Vector, dot, dual_basis, hermite_canonical
from .sheafdata import validate_lambda_vector


@dataclass(frozen=True)
class Chart:
    fan: Fan
    cone: tuple[int, ...]
    rays: tuple[Vector, ...]
    dual: tuple[Vector, ...]


@dataclass(frozen=True)
class MonomialDerivation:
    """The rational vector field chi(u) * d_v, chart-independent data."""

    u: Vector
    v: tuple

    def __post_init__(self):
        if not any(self.v):
            raise ZeroVector("derivation direction must be nonzero")


def chart_of(f: Fan, sigma) -> Chart:
    cone = tuple(sorted(sigma))
    if cone not in f.max_cones:
        raise NotMaximal(f"{cone} is not a maximal cone of the fan")
    rays = cone_rays(f, cone)
    return Chart(fan=f, cone=cone, rays=rays, dual=dual_basis(rays))


def in_semigroup(c: Chart, u) -> bool:
    """Membership of the weight u in S_sigma = sigma^v ∩ M."""
    return all(dot(u, ray) >= 0 for ray in c.rays)


def expand_in_chart(d: MonomialDerivation, c: Chart):
    """Nonzero terms (coefficient, exponent, coordinate index) of d on c."""
    terms = []
    for i, m in enumerate(c.dual):
        coeff = dot(m, d.v)
        if coeff:
            exponent = tuple(x + y for x, y in zip(d.u, m))
            terms.append((coeff, exponent, i))
    return tuple(terms)


def is_regular(d: MonomialDerivation, c: Chart) -> bool:
    return all(in_semigroup(c, e) for _, e, _ in expand_in_chart(d, c))


def weight_space_dim(f: Fan, sigma, u) -> int:
    """Dimension of the weight-u piece of the tangent sections on sigma's chart."""
    c = chart_of(f, sigma)
    return sum(1 for m in c.dual if in_semigroup(c, tuple(x + y for x, y in zip(u, m))))


def _pinned_weight(c: Chart, lam) -> Vector:
    # <alpha_i, u> = lambda_{alpha_i} for the rays of the cone has the
    # unique solution u = sum_i lambda_i * m_i
    n = len(c.dual[0])
    u = [0] * n
    for i, ray_index in enumerate(c.cone):
        for k in range(n):
            u[k] += lam[ray_index] * c.dual[i][k]
    return tuple(u)


def _line_of(v) -> Vector:
    return hermite_canonical([v]).basis[0]


def rank_one_exists(f: Fan, lam) -> Vector | None:
    """Direction line of a rank-one sheaf realizing the data, or None.

    Tries each ray line (those carrying a -1 first) and, when no entry
    is -1, a generic line.  A line witnesses the data when on every
    maximal cone the pinned weight makes the derivation regular.
    """
    ok, problems = validate_lambda_vector(f, lam)
    if not ok:
        raise InvalidLambda(problems)
    negative = [i for i, l in enumerate(lam) if l == -1]
    order = negative + [i for i in range(len(f.rays)) if lam[i] != -1]
    lines: list[Vector] = []
    for i in order:
        line = _line_of(f.rays[i])
        if line not in lines:
            lines.append(line)
    if not negative:
        generic = _line_of((1,) * f.dim)
        if generic not in lines:
            lines.append(generic)
    charts = [chart_of(f, sigma) for sigma in f.max_cones]
    for v in lines:
        if all(
            is_regular(MonomialDerivation(_pinned_weight(c, lam), v), c)
            for c in charts
        ):
            return v
    return None


def reexpand(terms, source: Chart, target: Chart):
    """Push a chart expansion into another chart and merge terms.

    Each term c * chi(e) * d/dz_i of the source chart is the monomial
    derivation chi(e - m_i) * d_{c * alpha_i}; expanding those in the
    target chart and collecting by (exponent, index) must reproduce the
    target expansion of the original field.
    """
    merged: dict[tuple, Fraction] = {}
    for coeff, exponent, i in terms:
        u = tuple(x - y for x, y in zip(exponent, source.dual[i]))
        v = tuple(coeff * x for x in source.rays[i])
        for c2, e2, j in expand_in_chart(MonomialDerivation(u, v), target):
            key = (e2, j)
            merged[key] = merged.get(key, 0) + c2
    return tuple(
        (coeff, exponent, j)
        for (exponent, j), coeff in sorted(merged.items())
        if coeff
    )
