"""Slope stability of the tangent sheaf.

The decision procedure compares mu(TX) against the slopes of the
saturated equivariant subsheaves cut out by proper subspaces of the
ambient vector space that are spanned by rays.  Every such subspace V
determines jump data with a single level -1 on each ray lying in V, so
its degree is (n-1)! times the sum of the facet volumes over those
rays.  Subspaces containing no ray have degree zero and never compete.
All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import factorial

from .errors import BadRank, BadTwist, DimMismatch, NonAmple
from .fan import Fan, is_cone, validate_fan
from .lattice import Subspace, hermite_canonical, subspace_contains
from .polytope import (
    ToricDivisor,
    VolumeTable,
    facet_volumes,
    is_ample,
    polytope_from_divisor,
)
from .sheafdata import (
    JumpData,
    _volume_values,
    jump_data,
    jump_to_lambda_matrix,
)

SCOPE_NOTE = (
    "scope: the verdict maximizes slope over saturated equivariant subsheaves "
    "spanned by rays; a stable verdict asserts maximality within that family, "
    "which the saturation argument treats as exhaustive"
)
GENERIC_NOTE = (
    "generic subspaces containing no ray have degree 0 < mu(TX) and never "
    "attain the maximum"
)


class Stability(Enum):
    STABLE = "stable"
    SEMISTABLE = "semistable"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class SubsheafCandidate:
    """A ray-spanned proper subspace together with its induced jump data."""

    subspace: Subspace
    rank: int
    rays_in: tuple[int, ...]
    jump: JumpData
    slope: Fraction | None = None


@dataclass(frozen=True)
class StabilityVerdict:
    status: Stability
    mu_tx: Fraction
    best: SubsheafCandidate | None
    candidates: tuple[SubsheafCandidate, ...]
    notes: tuple[str, ...]


@dataclass(frozen=True)
class Certificate:
    """Maximizer report: jump data in matrix form plus both slopes."""

    rank: int
    lambda_matrix: tuple[tuple[int, ...], ...]
    subspace_basis: tuple[tuple[int, ...], ...]
    slope: Fraction
    mu_tx: Fraction


def _candidate_jump(n_rays: int, rays_in, rank: int) -> JumpData:
    inside = set(rays_in)
    per_ray = []
    for i in range(n_rays):
        if i in inside:
            per_ray.append(((-1, 1), (0, rank - 1)) if rank > 1 else ((-1, 1),))
        else:
            per_ray.append(((0, rank),))
    return jump_data(per_ray)


def enumerate_candidates(f: Fan, max_rays: int = 24) -> list[SubsheafCandidate]:
    """All distinct proper subspaces spanned by nonempty sets of rays.

    Spans are grown one ray at a time and deduplicated by canonical
    form; anything reaching the ambient dimension is pruned.  Slopes
    are left unfilled.
    """
    if len(f.rays) > max_rays:
        raise ValueError(
            f"fan has {len(f.rays)} rays; candidate enumeration capped at "
            f"{max_rays} (raise max_rays to override)"
        )
    n = f.dim
    seen: set[Subspace] = set()
    frontier: set[Subspace] = set()
    for ray in f.rays:
        s = hermite_canonical([ray])
        if s.dim < n and s not in seen:
            seen.add(s)
            frontier.add(s)
    while frontier:
        grown: set[Subspace] = set()
        for s in frontier:
            for ray in f.rays:
                if subspace_contains(s, ray):
                    continue
                t = hermite_canonical(list(s.basis) + [ray])
                if t.dim < n and t not in seen:
                    seen.add(t)
                    grown.add(t)
        frontier = grown
    out = []
    for s in seen:
        rays_in = tuple(
            i for i, ray in enumerate(f.rays) if subspace_contains(s, ray)
        )
        out.append(
            SubsheafCandidate(
                subspace=s,
                rank=s.dim,
                rays_in=rays_in,
                jump=_candidate_jump(len(f.rays), rays_in, s.dim),
            )
        )
    out.sort(key=lambda c: (c.rank, c.rays_in))
    return out


def candidate_slope(c: SubsheafCandidate, vols, n: int) -> Fraction:
    vals = _volume_values(vols, n)
    if any(v <= 0 for v in vals):
        raise NonAmple("candidate slopes require positive facet volumes")
    total = sum((vals[i] for i in c.rays_in), Fraction(0))
    return Fraction(factorial(n - 1)) * total / c.rank


def _pick_best(cands):
    return min(cands, key=lambda c: (-c.slope, c.rank, c.rays_in)) if cands else None


def _status_against(best, mu: Fraction) -> Stability:
    if best is None or best.slope < mu:
        return Stability.STABLE
    if best.slope == mu:
        return Stability.SEMISTABLE
    return Stability.UNSTABLE


def decide(f: Fan, a: ToricDivisor, max_rays: int = 24) -> StabilityVerdict:
    """Stability of the tangent sheaf with respect to the ample divisor `a`."""
    if not f.validated:
        f = validate_fan(f)
    if a.fan != f:
        raise DimMismatch("divisor was built on a different fan")
    p = polytope_from_divisor(a)
    if not is_ample(p):
        raise NonAmple("stability is defined against an ample divisor")
    vols = facet_volumes(p)
    n = f.dim
    mu = Fraction(factorial(n - 1)) * vols.total / n
    cands = tuple(
        replace(c, slope=candidate_slope(c, vols, n))
        for c in enumerate_candidates(f, max_rays=max_rays)
    )
    best = _pick_best(cands)
    return StabilityVerdict(
        status=_status_against(best, mu),
        mu_tx=mu,
        best=best,
        candidates=cands,
        notes=(SCOPE_NOTE, GENERIC_NOTE),
    )


def certificate(v: StabilityVerdict) -> Certificate | None:
    """Render the maximizing candidate, or None when no candidate exists."""
    if v.best is None:
        return None
    c = v.best
    return Certificate(
        rank=c.rank,
        lambda_matrix=jump_to_lambda_matrix(c.jump),
        subspace_basis=c.subspace.basis,
        slope=c.slope,
        mu_tx=v.mu_tx,
    )


def admissible_slope_bound(f: Fan, r: int, vols) -> Fraction:
    """Largest slope any admissible rank-r data with -1s in one row allows.

    Maximizes (n-1)!*sum(Vol over S)/r over ray sets S in which no
    (r+1)-subset spans a cone.  This bounds every rank-r candidate (its
    rays lie in an r-dimensional space, so r+1 of them are never the
    linearly independent generators of a cone) but is not always
    attained by a realizable subsheaf.
    """
    n = f.dim
    if not 1 <= r < n:
        raise BadRank(f"rank must lie strictly between 0 and {n}, got {r}")
    vals = _volume_values(vols, n)
    if any(v <= 0 for v in vals):
        raise NonAmple("the bound requires positive facet volumes")
    order = sorted(range(len(f.rays)), key=lambda i: (-vals[i], i))
    suffix = [Fraction(0)] * (len(order) + 1)
    for i in range(len(order) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + vals[order[i]]
    best = Fraction(0)
    chosen: list[int] = []

    def grow(pos: int, total: Fraction) -> None:
        nonlocal best
        if total > best:
            best = total
        for i in range(pos, len(order)):
            if total + suffix[i] <= best:
                return
            ray = order[i]
            if len(chosen) >= r and any(
                is_cone(f, tuple(sorted(sub + (ray,))))
                for sub in combinations(chosen, r)
            ):
                continue
            chosen.append(ray)
            grow(i + 1, total + vals[ray])
            chosen.pop()

    grow(0, Fraction(0))
    return Fraction(factorial(n - 1)) * best / r


def hirzebruch_closed_form(m: int, a1: int, a2: int, a3: int, a4: int) -> StabilityVerdict:
    """Closed-form verdict for the twisted surface, independent of decide().

    With a = a1 + a3 - m*a2 and b = a2 + a4 the facet volumes are
    (b, a, b, a + m*b), mu(TX) = a + (m+2)b/2, and the candidates are
    the two or three ray-spanned lines with slopes b, 2a + m*b (and b).
    """
    if m < 0:
        raise BadTwist(f"twist must be nonnegative, got {m}")
    a = a1 + a3 - m * a2
    b = a2 + a4
    if a <= 0 or b <= 0:
        raise NonAmple(f"divisor is not ample: a = {a}, b = {b} must both be positive")
    vols = VolumeTable(
        2, (Fraction(b), Fraction(a), Fraction(b), Fraction(a + m * b))
    )
    mu = Fraction(2 * a + (m + 2) * b, 2)

    def line(direction, rays_in, slope):
        return SubsheafCandidate(
            subspace=hermite_canonical([direction]),
            rank=1,
            rays_in=rays_in,
            jump=_candidate_jump(4, rays_in, 1),
            slope=Fraction(slope),
        )

    if m == 0:
        cands = (
            line((1, 0), (0, 2), 2 * b),
            line((0, 1), (1, 3), 2 * a),
        )
    else:
        cands = (
            line((1, 0), (0,), b),
            line((0, 1), (1, 3), 2 * a + m * b),
            line((-1, m), (2,), b),
        )
    best = _pick_best(cands)
    return StabilityVerdict(
        status=_status_against(best, mu),
        mu_tx=mu,
        best=best,
        candidates=cands,
        notes=(SCOPE_NOTE, GENERIC_NOTE),
    )
