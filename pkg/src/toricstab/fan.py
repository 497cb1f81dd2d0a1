"""Fans of smooth complete toric varieties.

A fan is stored combinatorially: the list of primitive ray generators and
the list of maximal cones, each given by ray indices.  ``validate_fan``
checks the full package of invariants exactly:

* rays primitive, distinct, each used by some maximal cone;
* every maximal cone a unimodular basis (smoothness);
* completeness, established by three exact criteria together: every wall
  (codimension-one face) lies in exactly two maximal cones which sit on
  opposite sides of it, the wall-adjacency graph is connected, and any two
  maximal cones intersect exactly in the cone spanned by their common rays.
  For a simplicial fan these force the support to be all of R^n, covered
  once.

Constructors for the standard families (projective spaces, Hirzebruch
surfaces, projectivized split bundles, products) and the ten smooth toric
Fano fourfolds with b_2 <= 2 live here as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import BadDimension, BadIndex, BadTwist, InvalidFan
from .lattice import Vector, _det, dot, dual_basis, integer_kernel, primitive_vector


@dataclass(frozen=True)
class Fan:
    """Rays and maximal cones of a simplicial fan in Z^dim.

    ``max_cones`` holds sorted tuples of ray indices.  ``validated`` is set
    by ``validate_fan`` and never participates in equality.
    """

    dim: int
    rays: tuple[Vector, ...]
    max_cones: tuple[tuple[int, ...], ...]
    validated: bool = field(default=False, compare=False)


def make_fan(dim, rays, max_cones) -> Fan:
    """Build an (unvalidated) Fan, normalizing containers and cone order."""
    return Fan(
        int(dim),
        tuple(tuple(int(x) for x in r) for r in rays),
        tuple(tuple(sorted(int(i) for i in c)) for c in max_cones),
    )


def cone_rays(f: Fan, cone) -> tuple[Vector, ...]:
    return tuple(f.rays[i] for i in cone)


def is_cone(f: Fan, ray_indices) -> bool:
    """Whether the given rays span a cone of the fan.

    For a simplicial fan the cones are exactly the subsets of maximal
    cones.  Raises BadIndex on out-of-range or repeated indices; the empty
    set is the zero cone and always present.
    """
    idxs = [int(i) for i in ray_indices]
    if len(set(idxs)) != len(idxs):
        raise BadIndex(f"repeated ray index in {tuple(ray_indices)}")
    if any(i < 0 or i >= len(f.rays) for i in idxs):
        raise BadIndex(f"ray index out of range in {tuple(ray_indices)}")
    want = set(idxs)
    return any(want <= set(c) for c in f.max_cones)


# ---------------------------------------------------------------------------
# Validation


def validate_fan(f: Fan) -> Fan:
    """Check all fan invariants; return the fan marked validated.

    Raises InvalidFan carrying ``violations``: one ``(code, detail)`` pair
    per broken invariant.  Codes: BadDimension, BadRay, NonPrimitiveRay,
    DuplicateRay, BadIndex, DuplicateCone, UnusedRay, NotSmooth,
    NotComplete, BadIntersection.  Structural problems are reported before
    the geometric stages that depend on them.
    """
    violations: list[tuple[str, str]] = []
    if not isinstance(f.dim, int) or f.dim < 1:
        raise InvalidFan([("BadDimension", f"dim = {f.dim!r}")])
    n = f.dim

    rays = tuple(tuple(r) for r in f.rays)
    if not rays:
        violations.append(("BadRay", "no rays"))
    for i, r in enumerate(rays):
        if len(r) != n or not all(isinstance(x, int) for x in r):
            violations.append(("BadRay", f"ray {i} = {r!r}"))
    if violations:
        raise InvalidFan(violations)

    for i, r in enumerate(rays):
        g = 0
        for x in r:
            g = gcd(g, x)
        if g != 1:
            violations.append(("NonPrimitiveRay", f"ray {i} = {r}"))
    first_seen: dict[Vector, int] = {}
    for i, r in enumerate(rays):
        if r in first_seen:
            violations.append(("DuplicateRay", f"rays {first_seen[r]} and {i} are both {r}"))
        else:
            first_seen[r] = i

    cones = tuple(tuple(sorted(c)) for c in f.max_cones)
    if not cones:
        violations.append(("NotComplete", "no maximal cones"))
    used: set[int] = set()
    cone_seen: dict[frozenset, int] = {}
    bad_cone = False
    for ci, c in enumerate(cones):
        ok = (
            len(c) == n
            and len(set(c)) == n
            and all(isinstance(i, int) and 0 <= i < len(rays) for i in c)
        )
        if not ok:
            violations.append(("BadIndex", f"cone {ci} = {f.max_cones[ci]!r}"))
            bad_cone = True
            continue
        key = frozenset(c)
        if key in cone_seen:
            violations.append(("DuplicateCone", f"cones {cone_seen[key]} and {ci} are both {c}"))
        cone_seen[key] = ci
        used.update(c)
    if violations and (bad_cone or not cones or not rays):
        raise InvalidFan(violations)

    for i in sorted(set(range(len(rays))) - used):
        violations.append(("UnusedRay", f"ray {i} = {rays[i]} is in no maximal cone"))
    if violations:
        raise InvalidFan(violations)

    for c in cones:
        d = _det([rays[i] for i in c])
        if d not in (1, -1):
            violations.append(("NotSmooth", f"cone {c} has |det| = {abs(d)}"))
    if violations:
        raise InvalidFan(violations)

    if n == 1:
        if set(rays) != {(1,), (-1,)} or {c for c in cones} != {(0,), (1,)}:
            violations.append(
                ("NotComplete", "a complete fan on a line consists of the rays (1) and (-1)")
            )
        if violations:
            raise InvalidFan(violations)
        return Fan(n, rays, cones, validated=True)

    # Wall pairing and orientation.
    walls: dict[tuple[int, ...], list[tuple[int, int]]] = {}
    for ci, c in enumerate(cones):
        for omit in c:
            wall = tuple(i for i in c if i != omit)
            walls.setdefault(wall, []).append((ci, omit))
    adjacency: dict[int, set[int]] = {ci: set() for ci in range(len(cones))}
    for wall, members in sorted(walls.items()):
        if len(members) != 2:
            violations.append(
                ("NotComplete", f"wall {wall} lies in {len(members)} maximal cone(s)")
            )
            continue
        (c1, o1), (c2, o2) = members
        normal = integer_kernel([rays[i] for i in wall])[0]
        s1 = dot(normal, rays[o1])
        s2 = dot(normal, rays[o2])
        if s1 * s2 >= 0:
            violations.append(
                ("NotComplete", f"cones {cones[c1]} and {cones[c2]} lie on one side of wall {wall}")
            )
        else:
            adjacency[c1].add(c2)
            adjacency[c2].add(c1)

    reached = {0}
    stack = [0]
    while stack:
        for nb in adjacency[stack.pop()]:
            if nb not in reached:
                reached.add(nb)
                stack.append(nb)
    if len(reached) != len(cones):
        violations.append(("NotComplete", "maximal cones are not connected through walls"))

    duals = [dual_basis([rays[i] for i in c]) for c in cones]
    for a in range(len(cones)):
        for b in range(a + 1, len(cones)):
            detail = _pair_face_violation(rays, cones[a], cones[b], duals[a], duals[b])
            if detail is not None:
                violations.append(("BadIntersection", detail))

    if violations:
        raise InvalidFan(violations)
    return Fan(n, rays, cones, validated=True)


def _pair_face_violation(rays, ca, cb, duals_a, duals_b):
    """Check cone(ca) ∩ cone(cb) == cone(common rays); return detail or None.

    The intersection is computed by slicing cone(ca) with the dual
    halfspaces of cone(cb): a standard double-description pass that keeps a
    generating set at every step (adjacency bookkeeping is unnecessary for
    a containment test, redundant generators are harmless).
    """
    common = set(ca) & set(cb)
    gens = [rays[i] for i in ca]
    for m in duals_b:
        vals = [dot(m, g) for g in gens]
        nxt = [g for g, val in zip(gens, vals) if val >= 0]
        positive = [(g, val) for g, val in zip(gens, vals) if val > 0]
        negative = [(g, val) for g, val in zip(gens, vals) if val < 0]
        for gp, vp in positive:
            for gn, vn in negative:
                w = tuple(-vn * a + vp * b for a, b in zip(gp, gn))
                if any(w):
                    nxt.append(primitive_vector(w))
        gens = []
        seen = set()
        for g in nxt:
            if g not in seen:
                seen.add(g)
                gens.append(g)
        if not gens:
            return None  # intersection is the origin
    for g in gens:
        coords = [dot(m, g) for m in duals_a]
        assert all(c >= 0 for c in coords)  # g was built inside cone(ca)
        for pos, ray_idx in enumerate(ca):
            if ray_idx not in common and coords[pos] != 0:
                return (
                    f"cones {ca} and {cb} intersect outside the face spanned by "
                    f"their common rays {tuple(sorted(common))}"
                )
    return None


# ---------------------------------------------------------------------------
# Constructors


def construct_projective_space(n: int) -> Fan:
    """Fan of projective n-space: rays e_1..e_n and -(e_1+...+e_n)."""
    if not isinstance(n, int) or n < 1:
        raise BadDimension(f"projective space needs n >= 1, got {n!r}")
    rays = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = [tuple(i for i in range(n + 1) if i != omit) for omit in range(n + 1)]
    return validate_fan(make_fan(n, rays, cones))


def construct_hirzebruch(m: int) -> Fan:
    """Fan of the Hirzebruch surface of twist m >= 0.

    Rays (1,0), (0,1), (-1,m), (0,-1) with the four quadrant-like cones.
    Twist 0 is the quadric P1 x P1.
    """
    if not isinstance(m, int) or m < 0:
        raise BadTwist(f"Hirzebruch twist must be an integer >= 0, got {m!r}")
    rays = [(1, 0), (0, 1), (-1, m), (0, -1)]
    cones = [(0, 1), (1, 2), (2, 3), (0, 3)]
    return validate_fan(make_fan(2, rays, cones))


def construct_proj_split(base_dim: int, twists) -> Fan:
    """Fan of P(O(t_1) + ... + O(t_k) + O) over projective base_dim-space.

    Coordinates are fiber-first: fiber rays e_1..e_k and -(e_1+...+e_k),
    then base rays e_{k+1}..e_{k+d} and -(e_{k+1}+...+e_{k+d}) twisted by
    sum_i t_i e_i.  Maximal cones omit one fiber ray and one base ray.
    Twisting by a constant or flipping all signs changes nothing up to
    lattice isomorphism, so any integer twists are accepted.
    """
    if not isinstance(base_dim, int) or base_dim < 1:
        raise BadDimension(f"base dimension must be >= 1, got {base_dim!r}")
    ts = tuple(twists)
    if not ts or not all(isinstance(t, int) for t in ts):
        raise BadTwist(f"twists must be a nonempty tuple of integers, got {twists!r}")
    k = len(ts)
    d = base_dim
    n = d + k

    def unit(i):
        return tuple(1 if j == i else 0 for j in range(n))

    fiber = [unit(i) for i in range(k)]
    fiber.append(tuple(-1 if j < k else 0 for j in range(n)))
    base = [unit(k + j) for j in range(d)]
    last = [ts[j] if j < k else 0 for j in range(n)]
    for j in range(k, n):
        last[j] -= 1
    base.append(tuple(last))
    rays = fiber + base
    cones = []
    for i in range(k + 1):
        for j in range(d + 1):
            cone = [p for p in range(k + 1) if p != i]
            cone += [k + 1 + q for q in range(d + 1) if q != j]
            cones.append(tuple(cone))
    return validate_fan(make_fan(n, rays, cones))


def construct_p1_bundle(dim: int, twist: int) -> Fan:
    """Fan of P(O + O(twist)) over projective (dim-1)-space, fiber last.

    Base-first coordinates: rays e_1..e_dim, then -e_dim, then
    (-1,...,-1,twist).  The fiber line is the last coordinate axis, so the
    two fiber rays are the rays at indices dim-1 and dim.  Isomorphic to
    ``construct_proj_split(dim - 1, (twist,))`` up to relabeling.
    """
    if not isinstance(dim, int) or dim < 2:
        raise BadDimension(f"bundle needs total dimension >= 2, got {dim!r}")
    if not isinstance(twist, int) or twist < 0:
        raise BadTwist(f"twist must be an integer >= 0, got {twist!r}")
    n = dim

    def unit(i):
        return tuple(1 if j == i else 0 for j in range(n))

    rays = [unit(i) for i in range(n)]
    rays.append(tuple(0 if j < n - 1 else -1 for j in range(n)))
    rays.append(tuple(-1 if j < n - 1 else twist for j in range(n)))
    base_idx = list(range(n - 1)) + [n + 1]
    cones = []
    for fiber in (n - 1, n):
        for omit in base_idx:
            cones.append(tuple(sorted([i for i in base_idx if i != omit] + [fiber])))
    return validate_fan(make_fan(n, rays, cones))


def construct_product(f1: Fan, f2: Fan) -> Fan:
    """Product fan: concatenated rays, one cone per pair of cones."""
    n1, n2 = f1.dim, f2.dim
    rays = [tuple(r) + (0,) * n2 for r in f1.rays]
    rays += [(0,) * n1 + tuple(r) for r in f2.rays]
    shift = len(f1.rays)
    cones = [
        tuple(c1) + tuple(i + shift for i in c2)
        for c1 in f1.max_cones
        for c2 in f2.max_cones
    ]
    return validate_fan(make_fan(n1 + n2, rays, cones))


def catalog_fano4() -> tuple[tuple[str, Fan], ...]:
    """The ten smooth toric Fano fourfolds with second Betti number <= 2.

    P4 itself, the five P1-flavored bundles B1..B5, and the four
    projective-plane flavored C1..C4, in the conventional order.
    """
    p1 = construct_projective_space(1)
    p2 = construct_projective_space(2)
    p3 = construct_projective_space(3)
    return (
        ("P4", construct_projective_space(4)),
        ("B1", construct_p1_bundle(4, 3)),
        ("B2", construct_p1_bundle(4, 2)),
        ("B3", construct_p1_bundle(4, 1)),
        ("B4", construct_product(p1, p3)),
        ("B5", construct_proj_split(1, (1, 0, 0))),
        ("C1", construct_proj_split(2, (2, 0))),
        ("C2", construct_proj_split(2, (1, 0))),
        ("C3", construct_proj_split(2, (1, 1))),
        ("C4", construct_product(p2, p2)),
    )
