import itertools
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hpdet.chow import (
    RingMismatchError,
    SchubertElement,
    TowerElement,
    box_partitions,
    chern,
    conjugate,
    grass_ring,
    integrate_grass,
    integrate_tower,
    multiply,
    reduce,
    tower_ring,
)


# --- oracle: Schur polynomials in r variables from semistandard tableaux ----


def _ssyt(shape, nvars):
    """All semistandard fillings of shape with entries 0..nvars-1, as exponent vectors."""
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    out = []

    def rec(k, fill):
        if k == len(cells):
            e = [0] * nvars
            for v in fill.values():
                e[v] += 1
            out.append(tuple(e))
            return
        i, j = cells[k]
        lo = 0
        if j > 0:
            lo = max(lo, fill[(i, j - 1)])
        if i > 0:
            lo = max(lo, fill[(i - 1, j)] + 1)
        for v in range(lo, nvars):
            fill[(i, j)] = v
            rec(k + 1, fill)
            del fill[(i, j)]

    rec(0, {})
    return out


def schur_poly(shape, nvars):
    poly = {}
    for e in _ssyt(shape, nvars):
        poly[e] = poly.get(e, 0) + 1
    return poly


def poly_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def schur_expand(poly, nvars):
    """Peel off leading dominant monomials to write a symmetric polynomial in Schur functions."""
    poly = dict(poly)
    out = {}
    while poly:
        lead = max(poly)
        coeff = poly[lead]
        lam = tuple(x for x in lead if x)
        out[lam] = coeff
        for e, c in schur_poly(lam, nvars).items():
            poly[e] = poly.get(e, 0) - coeff * c
            if not poly[e]:
                del poly[e]
    return out


def oracle_product(lam, mu, m, r):
    prod = poly_mul(schur_poly(lam, r), schur_poly(mu, r))
    return {nu: c for nu, c in schur_expand(prod, r).items() if not nu or nu[0] <= m - r}


# --- Grassmannian ------------------------------------------------------------


def test_grass_ring_basis():
    assert set(grass_ring(2, 1).basis) == {(), (1,)}
    assert len(grass_ring(4, 2).basis) == 6
    assert len(grass_ring(5, 3).basis) == 10
    for m in range(2, 8):
        for r in range(1, m):
            assert len(grass_ring(m, r).basis) == comb(m, r)


@pytest.mark.parametrize("m,r", [(3, 0), (3, 3), (2, 5), (1, 1)])
def test_grass_ring_rejects(m, r):
    with pytest.raises(ValueError):
        grass_ring(m, r)


def test_pieri_examples():
    g = grass_ring(4, 2)
    s1 = g.sigma(1)
    assert s1 * s1 == g.sigma(2) + g.sigma(1, 1)
    assert (s1**4).integrate() == 2
    x = g.sigma(2, 1) * 3 - g.sigma(1)
    assert g.one() * x == x


def test_products_match_schur_oracle():
    for m, r in [(4, 2), (5, 2), (5, 3), (6, 3), (6, 2)]:
        g = grass_ring(m, r)
        for lam, mu in itertools.combinations_with_replacement(g.basis, 2):
            got = multiply(g.sigma(lam), g.sigma(mu))
            assert got.coeffs == oracle_product(lam, mu, m, r), (m, r, lam, mu)


def test_conjugate_and_box():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate(()) == ()
    assert box_partitions(1, 2) == [(), (1,), (2,)]


def test_integrate_grass():
    g = grass_ring(5, 2)
    assert integrate_grass(g.point()) == 1
    assert integrate_grass(g.sigma(2, 1)) == 0
    for lam in g.basis:
        for mu in g.basis:
            if sum(lam) + sum(mu) != g.dim:
                continue
            val = integrate_grass(g.sigma(lam) * g.sigma(mu))
            assert val == (1 if mu == g.complement(lam) else 0)


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        grass_ring(4, 2).sigma(1) * grass_ring(4, 1).sigma(1)
    with pytest.raises(ValueError):
        SchubertElement(4, 2, {(3,): 1})


def test_chern_classes():
    for m in range(2, 8):
        for r in range(1, m):
            g = grass_ring(m, r)
            cq = chern("Q", m, r).total()
            cu = chern("U", m, r).total()
            assert cq * cu == g.one()
            cqd = chern("Qdual", m, r).total()
            cud = chern("Udual", m, r).total()
            assert cqd * cud == g.one()
            # c_1(U^dual) = c_1(Q) = sigma_1
            assert chern("Udual", m, r)[1] == g.sigma(1)
            assert chern("Q", m, r)[1] == g.sigma(1)
    assert chern("Q", 5, 1)[1] == grass_ring(5, 1).sigma(1)


def test_tangent_euler_characteristic():
    assert chern("tangentG", 4, 2).top().integrate() == 6
    for m in range(2, 7):
        for r in range(1, m):
            assert chern("tangentG", m, r).top().integrate() == comb(m, r)


def test_unknown_bundle():
    with pytest.raises(ValueError):
        chern("E", 4, 2)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(4, 2), (5, 2), (5, 3), (6, 3)]), st.data())
def test_commutative_associative(mr, data):
    m, r = mr
    g = grass_ring(m, r)
    pick = st.dictionaries(st.sampled_from(g.basis), st.integers(-3, 3), max_size=3)
    a, b, c = (SchubertElement(m, r, data.draw(pick)) for _ in range(3))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(4, 2), (5, 2), (6, 3), (7, 3)]), st.data())
def test_grading(mr, data):
    m, r = mr
    g = grass_ring(m, r)
    lam = data.draw(st.sampled_from(g.basis))
    mu = data.draw(st.sampled_from(g.basis))
    prod = g.sigma(lam) * g.sigma(mu)
    assert prod.degrees() <= {sum(lam) + sum(mu)}


# --- towers ------------------------------------------------------------------


def test_tower_dims():
    assert tower_ring(2, 2, 1, "X").dim == 2
    assert tower_ring(5, 7, 3, "X").dim == 26
    assert tower_ring(5, 7, 3, "Y").dim == 19
    with pytest.raises(ValueError):
        tower_ring(5, 4, 2, "X")
    with pytest.raises(ValueError):
        tower_ring(4, 4, 2, "Z")


def test_reduce_examples():
    T = tower_ring(2, 2, 1, "X")
    g = T.grass
    h2 = reduce(TowerElement(T, [g.zero(), g.zero(), g.one()]))
    assert h2 == T.H() * T.P() * 2
    assert reduce(TowerElement(T, [g.zero(), g.one()])).coeffs == T.H().coeffs
    assert integrate_tower(T.H() ** 2) == 2
    assert integrate_tower(T.H() * T.P()) == 1
    assert integrate_tower(T.P() ** 2) == 0


def test_pushforward_normalization():
    for m, n, r, side in [(2, 2, 1, "X"), (3, 4, 1, "Y"), (4, 4, 2, "X"), (4, 5, 2, "Y")]:
        T = tower_ring(m, n, r, side)
        g = T.grass
        pt = T.from_base(g.point())
        for k in range(T.e - 1):
            assert integrate_tower(T.H(k) * pt) == 0
        assert integrate_tower(T.H(T.e - 1) * pt) == 1


def test_unreduced_integration_agrees_with_reduced():
    # pushforward of raw H-powers against integration after reduction
    T = tower_ring(3, 4, 1, "X")
    g = T.grass
    for k in range(T.e - 1, T.e + T.grass.dim):
        for lam in g.basis:
            if k - (T.e - 1) + sum(lam) != g.dim:
                continue
            raw_lam = TowerElement(T, [g.zero()] * k + [g.sigma(lam)])
            assert integrate_tower(raw_lam) == integrate_tower(reduce(raw_lam))


def test_segre_degree():
    for m in range(2, 6):
        for n in range(m, 7):
            T = tower_ring(m, n, 1, "X")
            assert integrate_tower(T.H() ** T.dim) == comb(m + n - 2, m - 1)


def _det_degree(m, n, s):
    out = Fraction(1)
    for i in range(m - s):
        out *= Fraction(comb(n + i, s), comb(s + i, s))
    return int(out)


def test_degrees_match_closed_form():
    assert integrate_tower(tower_ring(5, 7, 3, "X").H() ** 26) == 490
    assert integrate_tower(tower_ring(5, 7, 3, "Y").H() ** 19) == 1176
    for m in range(2, 6):
        for n in range(m, 6):
            for r in range(1, m):
                X = tower_ring(m, n, r, "X")
                Y = tower_ring(m, n, r, "Y")
                assert integrate_tower(X.H() ** X.dim) == _det_degree(m, n, r)
                assert integrate_tower(Y.H() ** Y.dim) == _det_degree(m, n, m - r)


def test_tower_euler_characteristic():
    for m in range(2, 5):
        for n in range(m, 5):
            for r in range(1, m):
                for side in "XY":
                    T = tower_ring(m, n, r, side)
                    top = T.tangent_chern_parts()[T.dim]
                    assert integrate_tower(top) == T.e * comb(m, r)


def test_todd_gives_chi_of_structure_sheaf():
    for m, n, r, side in [(2, 2, 1, "X"), (3, 3, 1, "Y"), (4, 4, 2, "X")]:
        T = tower_ring(m, n, r, side)
        assert T.chi(T.zero()) == 1
    # P^1 x P^1: chi(O(a, b)) = (a + 1)(b + 1), O(a, b) = aH + (b - a)P
    T = tower_ring(2, 2, 1, "X")
    for a in range(-2, 3):
        for b in range(-2, 3):
            assert T.chi(T.divisor(a, b - a)) == (a + 1) * (b + 1)


def test_dump_format():
    T = tower_ring(2, 2, 1, "X")
    x = T.H() * 3 + T.P() * 2
    assert x.dump() == "2 * s[1] * H^0\n3 * s[] * H^1"
