"""Acceptance gate: one test per published acceptance criterion.

Each test prints exactly one ``acceptance <id> (<name>): PASS`` or ``FAIL``
line (visible with ``pytest -s`` and on failure).  Two criteria are split
into a verified part and a part asserting published numbers this
implementation reproducibly contradicts; the contradicting parts are kept
as failing tests rather than weakened, and the analysis lives in the
project decision log.
"""

import functools
from fractions import Fraction
from itertools import combinations, islice
from math import factorial

from toricstab.charts import (
    MonomialDerivation,
    chart_of,
    expand_in_chart,
    is_regular,
    rank_one_exists,
    reexpand,
)
from toricstab.cli import catalog_rows
from toricstab.fan import (
    catalog_fano4,
    construct_hirzebruch,
    construct_p1_bundle,
    construct_proj_split,
    construct_projective_space,
)
from toricstab.lattice import hermite_canonical
from toricstab.polytope import (
    anticanonical,
    divisor,
    facet_volumes,
    is_ample,
    is_reflexive,
    polytope_from_divisor,
)
from toricstab.sheafdata import (
    degree_monotonicity_check,
    degree_of,
    lambda_matrix_to_jump,
    lambda_vector_to_jump,
    rank_of,
    tangent_jump_data,
    validate_lambda_matrix,
)
from toricstab.stability import (
    Stability,
    admissible_slope_bound,
    certificate,
    decide,
)
from toricstab.testkit import fuzz_lambda, fuzz_lambda_matrix, random_polarized


def criterion(num, name):
    def wrap(fn):
        @functools.wraps(fn)
        def inner(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"acceptance {num} ({name}): FAIL")
                raise
            print(f"acceptance {num} ({name}): PASS")

        return inner

    return wrap


B5 = construct_proj_split(1, (1, 0, 0))


@criterion(1, "fourfold bundle reproduction")
def test_criterion_1_b5_reproduction():
    a = anticanonical(B5)
    vols = facet_volumes(polytope_from_divisor(a))
    assert vols.values == (
        Fraction(8), Fraction(56, 3), Fraction(56, 3), Fraction(56, 3),
        Fraction(32, 3), Fraction(32, 3),
    )
    v = decide(B5, a)
    assert v.mu_tx == 128
    assert v.status is Stability.SEMISTABLE
    cert = certificate(v)
    assert cert.rank == 3 and cert.slope == 128
    assert cert.lambda_matrix == (
        (-1, -1, -1, -1, 0, 0),
        (0, 0, 0, 0, 0, 0),
        (0, 0, 0, 0, 0, 0),
    )
    ok, problems = validate_lambda_matrix(B5, cert.lambda_matrix)
    assert ok, problems

    by_rank = {}
    for c in v.candidates:
        by_rank.setdefault(c.rank, []).append(c)
    assert max(c.slope for c in by_rank[1]) == 112 < 128
    assert max(c.slope for c in by_rank[2]) == 112 < 128
    forced = next(c for c in by_rank[2] if c.rays_in == (0, 4, 5))
    assert forced.slope == 88
    assert admissible_slope_bound(B5, 1, vols) == 128
    assert admissible_slope_bound(B5, 2, vols) == 120 < 128
    assert admissible_slope_bound(B5, 3, vols) == 128


@criterion(2, "high-twist Hirzebruch instability")
def test_criterion_2_high_twist_hirzebruch():
    for m in range(2, 11):
        f = construct_hirzebruch(m)
        count = 0
        for a1 in (1, 2):
            for a2 in range(5):
                for a4 in range(1, 6):
                    a3 = 1 + m * a2
                    a = a1 + a3 - m * a2
                    b = a2 + a4
                    d = divisor(f, (a1, a2, a3, a4))
                    assert is_ample(polytope_from_divisor(d))
                    v = decide(f, d)
                    assert v.status is Stability.UNSTABLE
                    assert v.mu_tx == a + Fraction((m + 2) * b, 2)
                    cert = certificate(v)
                    assert cert.slope == 2 * a + m * b
                    assert v.best.rays_in == (1, 3)
                    count += 1
        assert count == 50


@criterion(3, "first Hirzebruch chamber walls")
def test_criterion_3_f1_chambers():
    f = construct_hirzebruch(1)
    seen = set()
    for a1 in range(1, 11):
        for a4 in range(1, 11):
            d = divisor(f, (a1, 0, 0, a4))
            assert is_ample(polytope_from_divisor(d))
            status = decide(f, d).status
            if 2 * a1 < a4:
                assert status is Stability.STABLE
            elif 2 * a1 > a4:
                assert status is Stability.UNSTABLE
            else:
                assert status is Stability.SEMISTABLE
            seen.add((a1, 0, 0, a4))
    assert len(seen) >= 100
    assert (1, 0, 0, 4) in seen and (1, 0, 0, 1) in seen


@criterion(4, "projective spaces are stable")
def test_criterion_4_projective_spaces():
    for n in range(1, 7):
        f = construct_projective_space(n)
        a = anticanonical(f)
        vols = facet_volumes(polytope_from_divisor(a))
        v_n = Fraction((n + 1) ** (n - 1), factorial(n - 1))
        assert all(x == v_n for x in vols.values)
        v = decide(f, a)
        assert v.status is Stability.STABLE
        assert v.mu_tx == Fraction(
            factorial(n - 1) * (n + 1) * v_n, n
        ) == Fraction((n + 1) ** n, n)
        if n == 1:
            assert v.best is None and not v.candidates
        else:
            for c in v.candidates:
                assert c.slope == Fraction(
                    factorial(n - 1) * v_n * len(c.rays_in), c.rank
                )
            assert v.best.slope == (n + 1) ** (n - 1) < v.mu_tx


@criterion(5, "split-bundle family: verdicts and certificates")
def test_criterion_5_family_verdicts_and_certificates():
    for n in range(3, 7):
        for m in range(1, n):
            f = construct_p1_bundle(n, m)
            v = decide(f, anticanonical(f))
            assert v.status is Stability.UNSTABLE
            assert v.mu_tx == Fraction((n + m) ** n - (n - m) ** n, m * n)
            cert = certificate(v)
            assert cert.rank == 1
            assert cert.slope == (n + m) ** (n - 1) + (n - m) ** (n - 1)
            assert v.best.rays_in == (n - 1, n)
            e_n = tuple(0 if i < n - 1 else 1 for i in range(n))
            assert cert.subspace_basis == (e_n,)
            lam = cert.lambda_matrix[0]
            assert lam[n - 1] == lam[n] == -1
            assert all(lam[i] == 0 for i in range(len(f.rays)) if i not in (n - 1, n))


@criterion(5, "split-bundle family: published slope closed form")
def test_criterion_5_family_published_closed_form():
    # The published closed form for mu(TX) treats the side facets of the
    # moment polytope as metric prisms; an exact slice integration (and an
    # independent intersection-number cross-check) gives a smaller value
    # once n >= 4.  The family stays unstable either way, but this equality
    # as published does not hold, so this test is expected to fail.
    for n in range(3, 7):
        for m in range(1, n):
            f = construct_p1_bundle(n, m)
            v = decide(f, anticanonical(f))
            published = Fraction(
                (n + m) ** (n - 1)
                + (n - m) ** (n - 1)
                + n * (n - 1) * ((n + m) ** (n - 2) + (n - m) ** (n - 2)),
                n,
            )
            assert v.mu_tx == published, (
                f"n={n}, m={m}: computed {v.mu_tx}, published form {published}"
            )


@criterion(6, "fourfold catalog verdicts")
def test_criterion_6_catalog_verdicts():
    rows = {r["name"]: r for r in catalog_rows()}
    assert rows["P4"]["verdict"] == "stable" and rows["P4"]["rank"] is None
    for name in ("B1", "B2", "B3"):
        assert rows[name]["verdict"] == "unstable" and rows[name]["rank"] == 1
    assert rows["B5"]["verdict"] == "semistable" and rows["B5"]["rank"] == 3
    for name in ("C1", "C2"):
        assert rows[name]["verdict"] == "unstable" and rows[name]["rank"] == 2
    assert rows["C3"]["verdict"] == "unstable" and rows["C3"]["rank"] == 1


@criterion(6, "fourfold catalog: published product rows")
def test_criterion_6_catalog_published_product_rows():
    # The published table lists the two product fourfolds as stable, citing
    # the existence of a canonical metric.  That argument yields
    # polystability; the factor pullbacks are proper equivariant subsheaves
    # whose slope ties mu(TX) exactly, so the strict-inequality definition
    # used here returns semistable.  Kept failing by design; see the
    # decision log.
    rows = {r["name"]: r for r in catalog_rows()}
    assert rows["B4"]["verdict"] == "stable", (
        f"B4: computed {rows['B4']['verdict']!r}, published table says stable"
    )
    assert rows["C4"]["verdict"] == "stable", (
        f"C4: computed {rows['C4']['verdict']!r}, published table says stable"
    )


@criterion(7, "rank-one oracle agrees with the span criterion")
def test_criterion_7_oracle_agreement():
    fans = [f for _, f in catalog_fano4()]
    fans += [construct_hirzebruch(m) for m in range(6)]
    for fan_idx, f in enumerate(fans):
        for lam in islice(fuzz_lambda(f, 1000 + fan_idx), 100):
            witness = rank_one_exists(f, lam)
            poles = [f.rays[i] for i, x in enumerate(lam) if x == -1]
            span_dim = len(hermite_canonical(poles).basis) if poles else 0
            assert (witness is not None) == (span_dim <= 1), (lam, witness)

    for m in range(4):
        f = construct_hirzebruch(m)
        assert rank_one_exists(f, (0, -1, 0, -1)) == (0, 1)
        if m >= 1:
            assert rank_one_exists(f, (-1, 0, -1, 0)) is None
    assert rank_one_exists(B5, (0, 0, 0, 0, -1, -1)) is None


@criterion(8, "degree bookkeeping is consistent")
def test_criterion_8_degree_bookkeeping():
    # Tangent jump data + per-ray degrees reproduce the direct volume sum.
    for seed in range(20):
        f, d = random_polarized(seed)
        vols = facet_volumes(polytope_from_divisor(d))
        n = f.dim
        tangent = tangent_jump_data(f)
        assert rank_of(tangent) == n
        assert degree_of(tangent, vols, n) == factorial(n - 1) * vols.total

    # Rank consistency on constructed and fuzzed jump data.
    f2 = construct_hirzebruch(2)
    for mat in islice(fuzz_lambda_matrix(B5, 3, 21), 10):
        assert rank_of(lambda_matrix_to_jump(mat)) == 3
    for lam in islice(fuzz_lambda(f2, 22), 20):
        assert rank_of(lambda_vector_to_jump(lam)) == 1

    # Degree monotonicity: raising one jump level never raises the degree.
    vols2 = facet_volumes(polytope_from_divisor(divisor(f2, (1, 1, 3, 1))))
    for lam in islice(fuzz_lambda(f2, 23), 30):
        for i in range(4):
            bumped = tuple(x + (1 if k == i else 0) for k, x in enumerate(lam))
            j_low = lambda_vector_to_jump(lam)
            j_high = lambda_vector_to_jump(bumped)
            assert degree_monotonicity_check(j_high, j_low, vols2, 2)
            assert degree_of(j_high, vols2, 2) <= degree_of(j_low, vols2, 2)

    # Chart independence of globally regular coordinate fields.
    for _, f in catalog_fano4():
        charts = [chart_of(f, s) for s in f.max_cones]
        fields = [
            MonomialDerivation((0,) * f.dim, tuple(1 if k == i else 0 for k in range(f.dim)))
            for i in range(f.dim)
        ]
        for d in fields:
            for ca, cb in combinations(charts, 2):
                assert is_regular(d, ca) and is_regular(d, cb)
                pushed = sorted(reexpand(expand_in_chart(d, ca), ca, cb))
                direct = sorted(expand_in_chart(d, cb))
                assert pushed == direct


@criterion(9, "anticanonical reflexivity checks")
def test_criterion_9_reflexivity():
    fans = [f for _, f in catalog_fano4()]
    fans += [construct_hirzebruch(0), construct_hirzebruch(1)]
    for f in fans:
        p = polytope_from_divisor(anticanonical(f))
        assert is_ample(p)
        assert is_reflexive(p)
    f2 = construct_hirzebruch(2)
    assert not is_ample(polytope_from_divisor(anticanonical(f2)))
