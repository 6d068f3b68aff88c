import json

import numpy as np
import pytest

from hpdet.ffverify import (
    BudgetExceededError,
    FpMatrixPencil,
    _det_mod_p,
    check_duality_DL,
    dimension_estimate,
    dual_pencils,
    hasse_weil_sample,
    jacobian_singular_test,
    projective_point_count,
    rank_locus_report,
    rank_mod_p,
    rank_strata_count,
    sample_pencil,
    smoothness_check,
    springer_sample,
)


def brute_rank(M, p):
    """Rank by Gaussian elimination over plain Python ints."""
    M = [[int(x) % p for x in row] for row in M]
    rank, rows, cols = 0, len(M), len(M[0]) if M else 0
    for col in range(cols):
        piv = next((i for i in range(rank, rows) if M[i][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][col], p - 2, p)
        M[rank] = [x * inv % p for x in M[rank]]
        for i in range(rows):
            if i != rank and M[i][col]:
                f = M[i][col]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def test_rank_mod_p_matches_brute_force():
    rng = np.random.default_rng(1)
    for p in (2, 3, 5, 7, 11):
        A = rng.integers(0, p, size=(40, 3, 5))
        A[:5, 2] = A[:5, 0]
        got = rank_mod_p(A, p)
        assert list(got) == [brute_rank(a, p) for a in A]


def test_det_mod_p():
    rng = np.random.default_rng(2)
    A = rng.integers(0, 7, size=(30, 3, 3))
    got = _det_mod_p(A, 7)
    want = [int(round(np.linalg.det(a))) % 7 for a in A]
    assert list(got) == want


def test_rejects_composite():
    with pytest.raises(ValueError):
        sample_pencil(2, 2, 4, 9, 0)
    with pytest.raises(ValueError):
        FpMatrixPencil(5, 2, 2, 1, np.zeros((2, 2, 2)))


def test_point_count():
    assert projective_point_count(4, 3) == 40
    assert projective_point_count(1, 5) == 1


def test_strata_full_space_quadric():
    for p in (3, 5, 7):
        for seed in range(3):
            pencil = sample_pencil(2, 2, 4, p, seed)
            s = rank_strata_count(pencil)
            assert s.counts[0] == 0
            assert s.at_most(1) == (p + 1) ** 2
            assert s.total == projective_point_count(4, p)


def test_strata_nested_and_deterministic():
    a = rank_strata_count(sample_pencil(3, 4, 5, 5, 11))
    b = rank_strata_count(sample_pencil(3, 4, 5, 5, 11), threads=3)
    assert a.counts == b.counts
    assert a.at_most(0) <= a.at_most(1) <= a.at_most(2) <= a.total


def test_budget():
    with pytest.raises(BudgetExceededError):
        rank_strata_count(sample_pencil(3, 3, 9, 11, 0), budget=1000)
    with pytest.raises(BudgetExceededError):
        rank_strata_count(sample_pencil(3, 3, 9, 11, 0), budget=10**12)  # capped
    with pytest.raises(BudgetExceededError):
        rank_locus_report(3, 3, 1, 6, primes=(5, 7), budget=10)


def test_dual_pencils_are_orthogonal():
    upper, lower, L = dual_pencils(3, 4, 5, 7, 0)
    assert upper.v == 5 and lower.v == 7
    U = upper.coeffs.reshape(12, 5)
    W = lower.coeffs.reshape(12, 7)
    assert not ((U.T @ W) % 7).any()
    upper, lower, _ = dual_pencils(2, 2, 4, 5, 0)
    assert lower is None


def test_dimension_estimate():
    counts = {5: 31, 7: 57, 11: 133}  # ~ p^2 + p + 1
    est = dimension_estimate(counts, 2)
    assert est.value == 2 and est.matches
    assert dimension_estimate({5: 0, 7: 0}, -1).value == "empty"
    assert dimension_estimate({5: 0, 7: 0}, -1).matches
    assert dimension_estimate({5: 3, 7: 0}).value == "inconclusive"
    with pytest.raises(ValueError):
        dimension_estimate({5: 3})


def test_rank_locus_dimensions():
    # plane quartic, elliptic curve, cubic surface, Segre threefold section
    for m, n, r, c, side, d in [(4, 4, 1, 3, "Y", 1), (3, 3, 1, 3, "Y", 1), (3, 3, 1, 4, "Y", 2), (2, 3, 1, 1, "X", 2)]:
        rep = rank_locus_report(m, n, r, c, side, primes=(5, 7, 11), seed=0)
        assert rep.expected_dim == d
        assert rep.dimension_estimate == d, (m, n, r, c, side)


def test_rank_locus_empty():
    rep = rank_locus_report(3, 3, 1, 1, "Y", primes=(5, 7), seed=0)
    assert rep.expected_dim == -1
    assert rep.dimension_estimate == "empty"


def test_report_serialization():
    rep = rank_locus_report(2, 2, 1, 4, "Y", primes=(3, 5), seed=4)
    d = json.loads(rep.to_json())
    assert d["counts"]["3"]["1"] == 16
    assert d["label"] == "experimental evidence"
    lines = rep.strata_csv().splitlines()
    assert lines[0] == "p,rank,count"
    assert "5,1,36" in lines
    with pytest.raises(ValueError):
        rank_locus_report(3, 3, 1, 9, "X")


def test_jacobian_smooth_quadric():
    for p in (3, 5, 7):
        rep = jacobian_singular_test(sample_pencil(2, 2, 4, p, 0), 1)
        assert rep.locus_points == (p + 1) ** 2
        assert rep.smooth


def test_jacobian_finds_cone_vertex():
    # det [[x, y], [z, 0]] = -yz, a pair of planes in P^2 meeting at (1:0:0)
    coeffs = np.zeros((2, 2, 3), dtype=np.int64)
    coeffs[0, 0, 0] = coeffs[0, 1, 1] = coeffs[1, 0, 2] = 1
    rep = jacobian_singular_test(FpMatrixPencil(5, 2, 2, 3, coeffs), 1)
    assert rep.locus_points == 2 * 5 + 1
    assert rep.singular_points == 1
    assert not rep.smooth


def test_hasse_weil_quartics():
    for p in (5, 7, 11):
        rep = hasse_weil_sample(4, 4, 3, p, 0)
        assert rep.genus == 3
        assert rep.bound_ok


def test_duality():
    for m in (2, 3):
        for p in (3, 5):
            for seed in range(3):
                rep = check_duality_DL(m, m, p, seed)
                assert rep.passed, (m, p, seed)


def test_duality_degenerate_L():
    L = np.array([[1, 0, 0, 0], [0, 0, 1, 0]])
    rep = check_duality_DL(2, 2, 5, 0, L=L)
    assert rep.degenerate and not rep.passed


def test_springer():
    for m, n, r, c in [(2, 3, 1, 2), (3, 3, 1, 4), (3, 4, 2, 5), (3, 3, 3, 0)]:
        rep = springer_sample(m, n, r, c, 5, 1, trials=10)
        assert rep.produced == 10
        assert rep.success_ratio == 1.0


def test_smoothness_statuses():
    assert smoothness_check(2, 2, 3, 5, 0).status == "smooth: pass"
    rep = smoothness_check(3, 3, 6, 3, 0)
    assert not rep.expected_smooth
    assert rep.status in ("expected-singular: pass", "expected-singular: not observed")
