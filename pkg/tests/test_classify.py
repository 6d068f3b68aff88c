from math import comb

import pytest

from hpdet.classify import classify, residual_counts, segre_row, sweep
from hpdet.invariants import DivisorClass, InvalidParamsError


def test_self_dual_cy_threefolds():
    rep = classify(4, 4, 2, 8)
    assert rep.functor_direction == "equivalence"
    assert rep.dim_xl == rep.dim_yl == 3
    assert rep.cy_x and rep.cy_y
    assert rep.complement_count == 0


def test_noniso_pair():
    rep = classify(5, 7, 3, 21)
    assert rep.functor_direction == "equivalence"
    assert (rep.dim_xl, rep.dim_yl) == (5, 5)
    assert rep.canonical_x == DivisorClass(0, 2)
    assert not rep.cy_x
    assert rep.nef_canonical_x and rep.nef_canonical_y


def test_plane_curves():
    for d in (4, 5, 6):
        rep = classify(d, d, 1, 3)
        assert rep.functor_direction == "Y_to_X"
        assert rep.complement_count == (d - 3) * d
        assert rep.complement_side == "X"
        assert rep.weakly_fano_visitor_y
        assert not rep.weakly_fano_visitor_x
        assert rep.dim_yl == 1


def test_invalid():
    for args in [(2, 1, 1, 1), (3, 3, 0, 2), (3, 3, 3, 2), (3, 3, 1, 0), (3, 3, 1, 10)]:
        with pytest.raises(InvalidParamsError):
            classify(*args)


def test_empty_sections_are_flags():
    rep = classify(3, 3, 1, 8)
    assert rep.empty_x and not rep.empty_y


def test_report_invariants_over_box():
    for m in range(2, 6):
        for n in range(m, 7):
            for r in range(1, m):
                for c in range(1, m * n + 1):
                    rep = classify(m, n, r, c)
                    nr = n * r
                    assert rep.dim_xl - rep.dim_yl == 2 * (nr - c)
                    assert rep.complement_count == abs(c - nr) * comb(m, r)
                    assert (rep.complement_count == 0) == (rep.functor_direction == "equivalence")
                    assert rep.cy_x == rep.cy_y == (m == n and c == nr)
                    assert rep.rational_x == (nr > c)
                    assert rep.rational_y == (c > nr)
                    assert rep.tower_budget_x == nr * comb(m, r)
                    assert rep.tower_budget_y == n * (m - r) * comb(m, r)
                    # L <-> L^perp with r <-> m - r swaps the two sides
                    if c < m * n:
                        dual = classify(m, n, m - r, m * n - c)
                        assert (dual.dim_xl, dual.dim_yl) == (rep.dim_yl, rep.dim_xl)
                        assert dual.canonical_x == rep.canonical_y
                        assert dual.canonical_y == rep.canonical_x


def test_segre_rows():
    row = segre_row(5, 6, 4)
    assert row.regime == "c<m"
    assert row.fano_X and row.rational_X and row.fano_visitor_Y
    row = segre_row(3, 3, 3)
    assert row.regime == "c=n" and row.cy and row.birational_pair
    row = segre_row(4, 4, 5)
    assert row.regime == "n<c"
    assert row.fano_visitor_X and row.fano_Y and row.rational_Y
    assert segre_row(4, 6, 5).regime == "m<=c<n"


def test_segre_row_agrees_with_classify():
    for m in range(2, 6):
        for n in range(m, 7):
            for c in range(1, m * n + 1):
                rep = classify(m, n, 1, c)
                row = segre_row(m, n, c)
                assert rep.segre == row
                assert row.functor_direction == rep.functor_direction
                assert row.rational_X == rep.rational_x
                assert row.rational_Y == rep.rational_y
                assert row.cy == rep.cy_x
                assert row.fano_X == rep.fano_candidate_x
                assert row.fano_Y == rep.fano_candidate_y


def test_sweep_filters():
    cy = sweep((2, 4), (2, 4), filter="cy")
    assert cy
    for rep in cy:
        assert rep.m == rep.n and rep.c == rep.n * rep.r
    assert [r.params for r in cy] == sorted(r.params for r in cy)
    curves = sweep((3, 5), (3, 7), r_range=1, filter="curve")
    assert (5, 6, 1, 4) in [r.params for r in curves]
    assert (5, 7, 3, 21) in [r.params for r in sweep(5, 7, 3, filter="equivalence")]
    assert sweep((4, 3), (2, 4)) == []
    assert sweep([], [3]) == []
    with pytest.raises(ValueError):
        sweep(3, 3, filter="nope")


def test_residual_counts():
    assert residual_counts(3, 4).residual_exceptional == 4
    assert residual_counts(3, 5).residual_exceptional == 6
    rep = residual_counts(4, 5)
    assert (rep.total_exceptional, rep.residual_exceptional) == (8, 6)
    assert residual_counts(3, 4).x_side_empty and residual_counts(3, 5).x_side_empty
    assert residual_counts(4, 4).boundary
    for d in range(3, 11):
        for k in range(d + 1, min(11, d * d)):
            rep = residual_counts(d, k)
            assert rep.total_exceptional - rep.residual_exceptional == k - d + 1
            cl = classify(d, d, 1, k + 1)
            assert cl.complement_count == rep.total_exceptional
            assert cl.complement_side == "Y"
    cone = residual_counts(3, 10)
    assert cone.dual_section_params is None and cone.residual_exceptional == 16
    with pytest.raises(InvalidParamsError):
        residual_counts(2, 4)
    with pytest.raises(InvalidParamsError):
        residual_counts(5, 4)
