"""Combinatorial data of equivariant reflexive sheaves on a toric variety.

A sheaf's restriction to the line of each ray decomposes by torus weight;
what survives of that structure after passing to numerical invariants is,
per ray, a multiset of pairs ``(level, multiplicity)``: at which pairing
level the weight filtration jumps, and by how much.  Everything needed for
slopes lives here:

* rank = common per-ray multiplicity sum,
* degree = -(n-1)! * sum over rays and pairs of level*multiplicity*volume,
* the tangent bundle contributes ``(-1, 1)`` and ``(0, n-1)`` on every ray.

Rank-one data is a plain integer vector (one level per ray); general data
flattens to an integer matrix with one sorted column per ray.  Necessary
admissibility conditions for such data to come from an actual subsheaf are
checked by the two validators; they are necessary but not sufficient, and
the chart-level machinery provides the independent existence oracle for
the rank-one case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial

from .errors import (
    BadRank,
    DimMismatch,
    InconsistentRank,
    InvalidJumpData,
    RankMismatch,
)
from .fan import Fan, is_cone
from .polytope import VolumeTable

JumpPairs = tuple[tuple[int, int], ...]
LambdaVector = tuple[int, ...]
LambdaMatrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class JumpData:
    """Per-ray multisets of (level, multiplicity) pairs, sorted by level."""

    per_ray: tuple[JumpPairs, ...]


def jump_data(per_ray) -> JumpData:
    """Normalize raw per-ray pair iterables into JumpData.

    Merges repeated levels, sorts, and enforces the defining constraints:
    integer levels >= -1, positive integer multiplicities, and at most a
    simple jump at level -1.
    """
    rays = []
    for ri, pairs in enumerate(per_ray):
        merged: dict[int, int] = {}
        for lam, e in pairs:
            if not isinstance(lam, int) or not isinstance(e, int):
                raise InvalidJumpData(f"ray {ri}: non-integer pair ({lam!r}, {e!r})")
            if lam < -1:
                raise InvalidJumpData(f"ray {ri}: level {lam} below -1")
            if e < 1:
                raise InvalidJumpData(f"ray {ri}: multiplicity {e} not positive")
            merged[lam] = merged.get(lam, 0) + e
        if merged.get(-1, 0) > 1:
            raise InvalidJumpData(f"ray {ri}: multiplicity {merged[-1]} at level -1")
        rays.append(tuple(sorted(merged.items())))
    return JumpData(tuple(rays))


def tangent_jump_data(f: Fan) -> JumpData:
    """Jump data of the tangent bundle: (-1,1) and (0,n-1) on every ray."""
    n = f.dim
    pairs = ((-1, 1),) if n == 1 else ((-1, 1), (0, n - 1))
    return JumpData(tuple(pairs for _ in f.rays))


def rank_of(j: JumpData) -> int:
    """The common per-ray multiplicity sum."""
    sums = [sum(e for _, e in pairs) for pairs in j.per_ray]
    if len(set(sums)) != 1:
        raise InconsistentRank(f"per-ray multiplicity sums disagree: {sums}")
    return sums[0]


def _volume_values(vols, n: int) -> tuple[Fraction, ...]:
    if isinstance(vols, VolumeTable):
        if vols.dim != n:
            raise DimMismatch(f"volume table for dimension {vols.dim}, expected {n}")
        return vols.values
    return tuple(Fraction(v) for v in vols)


def degree_of(j: JumpData, vols, n: int) -> Fraction:
    """Exact degree -(n-1)! * sum(level * multiplicity * facet volume).

    ``vols`` must come from an ample divisor (facet_volumes enforces that
    upstream); n is the variety's dimension.
    """
    vals = _volume_values(vols, n)
    if len(vals) != len(j.per_ray):
        raise DimMismatch(f"{len(vals)} volumes for {len(j.per_ray)} rays")
    total = Fraction(0)
    for pairs, vol in zip(j.per_ray, vals):
        for lam, e in pairs:
            total += lam * e * vol
    return -factorial(n - 1) * total


def slope_of(j: JumpData, vols, n: int) -> Fraction:
    """degree_of / rank_of, exact."""
    return degree_of(j, vols, n) / rank_of(j)


def slope_upper_bound(r: int, vols, n: int) -> Fraction:
    """((n-1)!/r) * (sum of all facet volumes): the coarse slope bound for
    rank-r subsheaf data with all levels >= -1."""
    if not isinstance(r, int) or not 1 <= r < n:
        raise BadRank(f"rank must satisfy 1 <= r < {n}, got {r!r}")
    vals = _volume_values(vols, n)
    return factorial(n - 1) * sum(vals, Fraction(0)) / r


# ---------------------------------------------------------------------------
# Vector / matrix presentations


def lambda_vector_to_jump(lam) -> JumpData:
    return jump_data(tuple(((int(v), 1),) for v in lam))


def lambda_matrix_to_jump(mat) -> JumpData:
    rows = tuple(tuple(int(x) for x in row) for row in mat)
    if not rows:
        raise InvalidJumpData("empty matrix")
    width = len(rows[0])
    per_ray = []
    for j in range(width):
        per_ray.append([(rows[i][j], 1) for i in range(len(rows))])
    return jump_data(per_ray)


def jump_to_lambda_matrix(j: JumpData) -> LambdaMatrix:
    """Flatten jump data to the r x p matrix with sorted columns."""
    r = rank_of(j)
    cols = []
    for pairs in j.per_ray:
        col = []
        for lam, e in pairs:
            col.extend([lam] * e)
        cols.append(col)
    return tuple(tuple(cols[jdx][i] for jdx in range(len(cols))) for i in range(r))


def jump_to_lambda_vector(j: JumpData) -> LambdaVector:
    if rank_of(j) != 1:
        raise RankMismatch("vector form exists only for rank-one data")
    return tuple(pairs[0][0] for pairs in j.per_ray)


def validate_lambda_vector(f: Fan, lam) -> tuple[bool, tuple[str, ...]]:
    """Admissibility of a rank-one integer vector: one integer >= -1 per
    ray, and no two rays spanning a cone may both carry -1.

    Passing is necessary but not sufficient for an actual rank-one sheaf
    to exist with this data; the chart oracle decides existence.
    """
    problems: list[str] = []
    vec = tuple(lam)
    if len(vec) != len(f.rays):
        problems.append(f"expected one value per ray ({len(f.rays)}), got {len(vec)}")
        return (False, tuple(problems))
    for i, v in enumerate(vec):
        if not isinstance(v, int):
            problems.append(f"ray {i}: non-integer value {v!r}")
        elif v < -1:
            problems.append(f"ray {i}: value {v} below -1")
    if problems:
        return (False, tuple(problems))
    negatives = [i for i, v in enumerate(vec) if v == -1]
    for i, k in combinations(negatives, 2):
        if is_cone(f, (i, k)):
            problems.append(f"rays ({i}, {k}) span a cone but both carry -1")
    return (not problems, tuple(problems))


def validate_lambda_matrix(f: Fan, mat) -> tuple[bool, tuple[str, ...]]:
    """Admissibility of rank-r matrix data, one column per ray.

    Checks: rectangular shape with one column per ray; integer entries
    >= -1; each column sorted ascending; at most one -1 per column; and
    for every row, no r+1 of the rays carrying -1 in that row may span a
    cone of the fan.  Necessary conditions only -- a passing matrix need
    not be realizable by a sheaf.
    """
    problems: list[str] = []
    rows = tuple(tuple(row) for row in mat)
    if not rows:
        return (False, ("matrix needs at least one row",))
    r = len(rows)
    p = len(f.rays)
    for i, row in enumerate(rows):
        if len(row) != p:
            problems.append(f"row {i} has {len(row)} columns, expected {p}")
    if problems:
        return (False, tuple(problems))
    for i, row in enumerate(rows):
        for jdx, v in enumerate(row):
            if not isinstance(v, int):
                problems.append(f"entry ({i}, {jdx}): non-integer {v!r}")
            elif v < -1:
                problems.append(f"entry ({i}, {jdx}): value {v} below -1")
    if problems:
        return (False, tuple(problems))
    for jdx in range(p):
        col = [rows[i][jdx] for i in range(r)]
        if col != sorted(col):
            problems.append(f"column {jdx} is not sorted ascending")
        if col.count(-1) > 1:
            problems.append(f"column {jdx} carries -1 more than once")
    for i in range(r):
        carriers = [jdx for jdx in range(p) if rows[i][jdx] == -1]
        for sub in combinations(carriers, r + 1):
            if is_cone(f, sub):
                problems.append(
                    f"rays {sub} span a cone but all carry -1 in row {i}"
                )
    return (not problems, tuple(problems))


def degree_monotonicity_check(j1: JumpData, j2: JumpData, vols, n: int) -> bool:
    """For same-rank data with j1's levels pointwise >= j2's (per ray,
    after expanding multiplicities in ascending order), degree can only
    drop: returns degree_of(j1) <= degree_of(j2).
    """
    r1, r2 = rank_of(j1), rank_of(j2)
    if r1 != r2:
        raise RankMismatch(f"ranks {r1} and {r2} differ")
    if len(j1.per_ray) != len(j2.per_ray):
        raise DimMismatch("jump data over different ray counts")
    for ri, (p1, p2) in enumerate(zip(j1.per_ray, j2.per_ray)):
        l1 = [lam for lam, e in p1 for _ in range(e)]
        l2 = [lam for lam, e in p2 for _ in range(e)]
        if any(a < b for a, b in zip(l1, l2)):
            raise ValueError(f"ray {ri}: levels are not pointwise comparable")
    return degree_of(j1, vols, n) <= degree_of(j2, vols, n)
