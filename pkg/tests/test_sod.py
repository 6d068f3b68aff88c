import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hpdet.classify import classify
from hpdet.invariants import HPDParams, InvalidParamsError
from hpdet.sod import (
    GramMatrix,
    MutationError,
    gram_matrix,
    hh_additivity_check,
    hpd_section_ledger,
    lefschetz_ledger,
    mutate,
    replay_residual_mutations,
)


def test_lefschetz_ledgers():
    led = lefschetz_ledger(2, 2, 1, "X")
    assert len(led.blocks) == 2 and led.total == 4
    led = lefschetz_ledger(5, 7, 3, "X")
    assert len(led.blocks) == 21 and {b.generator_count for b in led.blocks} == {10}
    assert led.total == 210
    led = lefschetz_ledger(5, 7, 3, "Y")
    assert len(led.blocks) == 14 and led.total == 140
    assert led.blocks[-1].twist.h == 0


def test_ledger_totals_box():
    for m in range(2, 6):
        for n in range(m, 6):
            for r in range(1, m):
                assert lefschetz_ledger(m, n, r, "X").total == n * r * comb(m, r)
                assert lefschetz_ledger(m, n, r, "Y").total == n * (m - r) * comb(m, r)
                for c in range(1, m * n + 1):
                    lx, ly = hpd_section_ledger(m, n, r, c)
                    assert abs(lx.total - ly.total) == classify(m, n, r, c).complement_count
                    assert any(b.label == "C_L" for b in lx.blocks)
                    assert any(b.label == "C_L" for b in ly.blocks)


def test_section_ledger_cases():
    lx, ly = hpd_section_ledger(5, 7, 3, 21)
    assert [b.label for b in lx.blocks] == ["C_L"] == [b.label for b in ly.blocks]
    d, k = 4, 6
    lx, ly = hpd_section_ledger(d, d, 1, k + 1)
    assert len(ly.exceptional_blocks) == k + 1 - d
    assert {b.generator_count for b in ly.exceptional_blocks} == {d}
    assert lx.total == 0


def test_gram_p1xp1():
    # O, O(1,0), O(0,1), O(1,1) on P^1 x P^1 in (H, P) coordinates
    twists = [(0, 0), (1, -1), (0, 1), (1, 0)]
    g = gram_matrix(HPDParams(2, 2, 1, 0, "X"), twists)
    prod = [(0, 0), (1, 0), (0, 1), (1, 1)]
    for i, (a1, b1) in enumerate(prod):
        for j, (a2, b2) in enumerate(prod):
            assert g.entries[i][j] == (a2 - a1 + 1) * (b2 - b1 + 1)
    assert g.is_unitriangular()
    assert gram_matrix(HPDParams(2, 2, 1, 0, "X"), [(0, 0)]).entries == [[1]]


def test_gram_of_the_space_curve():
    g = gram_matrix(HPDParams(5, 6, 1, 4, "Y"), [(0, 0)])
    assert g.entries == [[-25]]


def test_gram_rejects_empty():
    with pytest.raises(ValueError):
        gram_matrix(HPDParams(2, 2, 1, 0, "X"), [])


def test_fano_chain_unitriangular():
    # O(kH) chains on sections with -K = t H + (...) and t > 0 kept below the index
    for m, n, r, c, side, t in [(3, 3, 1, 2, "X", 0), (4, 4, 1, 2, "X", 1), (3, 3, 1, 5, "Y", 1), (4, 4, 1, 6, "Y", 1)]:
        params = HPDParams(m, n, r, c, side)
        g = gram_matrix(params, [(k, 0) for k in range(t + 1)])
        assert g.is_unitriangular(), (m, n, r, c, side)


def random_unitriangular(size, rng):
    entries = [[0] * size for _ in range(size)]
    for i in range(size):
        entries[i][i] = 1
        for j in range(i + 1, size):
            entries[i][j] = rng.randint(-4, 4)
    return GramMatrix([(i, 0) for i in range(size)], entries)


def test_mutation_involution_random():
    rng = random.Random(7)
    for _ in range(100):
        size = rng.randint(2, 7)
        g = random_unitriangular(size, rng)
        i = rng.randrange(size - 1)
        back = mutate(mutate(g, i, "left"), i, "right")
        assert back.entries == g.entries
        back = mutate(mutate(g, i, "right"), i, "left")
        assert back.entries == g.entries
        assert abs(mutate(g, i, "left").determinant()) == abs(g.determinant()) == 1


def test_orthogonal_pair_swaps():
    g = GramMatrix(["A", "B"], [[1, 0], [0, 1]])
    h = mutate(g, 0, "left")
    assert h.entries == [[1, 0], [0, 1]]
    assert h.labels[1] == "A"


def test_mutation_errors():
    g = GramMatrix(["A", "B"], [[1, 2], [0, 1]])
    with pytest.raises(MutationError):
        mutate(g, 1, "left")
    with pytest.raises(MutationError):
        mutate(g, 0, "up")
    with pytest.raises(MutationError):
        mutate(GramMatrix(["A", "B"], [[1, 0], [3, 1]]), 0, "left")


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 6), st.integers(0, 10**6), st.data())
def test_mutations_preserve_unitriangularity(size, seed, data):
    g = random_unitriangular(size, random.Random(seed))
    for _ in range(data.draw(st.integers(1, 5))):
        i = data.draw(st.integers(0, size - 2))
        g = mutate(g, i, data.draw(st.sampled_from(["left", "right"])))
        assert g.is_unitriangular()


def test_replay_cubic_threefold():
    rep = replay_residual_mutations(3, 4)
    assert rep.initial_unitriangular
    assert rep.first_block == [(-1, 0), (0, 0)]
    assert rep.residual_count == 4
    assert rep.ok


def test_replay_other_cases():
    for d, k in [(3, 5), (4, 5)]:
        rep = replay_residual_mutations(d, k)
        assert rep.ok
        assert rep.residual_count == (d - 1) * (k - d + 1)


def test_hh_additivity():
    assert hh_additivity_check(4, 4, 2, 8).lhs == 0
    rep = hh_additivity_check(3, 3, 1, 2)
    assert rep.chi_top_x - rep.chi_top_y == 3 and rep.passed
    rep = hh_additivity_check(5, 6, 1, 4)
    assert rep.lhs == -10 and rep.passed
    assert rep.to_dict()["pass"] is True
    with pytest.raises(InvalidParamsError):
        hh_additivity_check(3, 3, 1, 8)
