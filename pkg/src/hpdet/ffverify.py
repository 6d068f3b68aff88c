"""Finite-field experiments on determinantal linear sections.

Everything is exhaustive enumeration over P^{v-1}(F_p) with exact rank
computations mod p. Results are experimental evidence for statements about
generic L in characteristic zero, nothing more.

Matrices are m x n with rows indexed by U and columns by V; an element of
W = U x V is such a matrix and the pairing W x W^dual -> F_p is the trace
form sum_ij A_ij B_ij.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .invariants import HPDParams, curve_genus

__all__ = [
    "BudgetExceededError",
    "DimensionEstimate",
    "DualityReport",
    "FpMatrixPencil",
    "HasseWeilReport",
    "SampleReport",
    "SingularReport",
    "SmoothnessReport",
    "SpringerReport",
    "StratumCount",
    "check_duality_DL",
    "dimension_estimate",
    "dual_pencils",
    "hasse_weil_sample",
    "jacobian_singular_test",
    "projective_point_count",
    "rank_locus_report",
    "rank_mod_p",
    "rank_strata_count",
    "sample_pencil",
    "smoothness_check",
    "springer_sample",
]

HARD_BUDGET = 10**8
CHUNK = 1 << 15


class BudgetExceededError(RuntimeError):
    pass


def _is_prime(p: int) -> bool:
    if not isinstance(p, (int, np.integer)) or p < 2:
        return False
    return all(p % q for q in range(2, math.isqrt(p) + 1))


def _check_prime(p):
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > 46337:
        # products of two residues must fit comfortably in int64 sums
        raise ValueError(f"prime {p} too large for int64 elimination")


def _inverses(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


def _threads() -> int:
    env = os.environ.get("HPDET_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


# --- linear algebra mod p ----------------------------------------------------


def _batched_eliminate(A: np.ndarray, p: int):
    """Row-reduce a batch of matrices mod p in place; return (ranks, A)."""
    A = np.array(A, dtype=np.int64) % p
    batch, rows, cols = A.shape
    inv = _inverses(p)
    rank = np.zeros(batch, dtype=np.int64)
    ar = np.arange(batch)
    row_idx = np.arange(rows)
    for col in range(cols):
        cand = (A[:, :, col] != 0) & (row_idx[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = ar[has]
        piv = np.argmax(cand[has], axis=1)
        tgt = rank[has]
        # swap pivot row into position rank
        prow = A[b, piv].copy()
        A[b, piv] = A[b, tgt]
        prow = (prow * inv[prow[:, col]][:, None]) % p
        A[b, tgt] = prow
        below = row_idx[None, :] > tgt[:, None]
        factors = A[b, :, col] * below
        A[b] = (A[b] - factors[:, :, None] * prow[:, None, :]) % p
        rank[has] += 1
        if (rank >= rows).all():
            break
    return rank, A


def rank_mod_p(A, p: int):
    """Rank mod p of a matrix (2-d) or of a batch of matrices (3-d)."""
    A = np.asarray(A)
    if A.ndim == 2:
        return int(_batched_eliminate(A[None], p)[0][0])
    if A.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    return _batched_eliminate(A, p)[0]


def _det_mod_p(A: np.ndarray, p: int) -> np.ndarray:
    """Determinants mod p of a batch of square matrices."""
    A = np.array(A, dtype=np.int64) % p
    batch, size, _ = A.shape
    if size == 0:
        return np.ones(batch, dtype=np.int64)
    inv = _inverses(p)
    det = np.ones(batch, dtype=np.int64)
    ar = np.arange(batch)
    for col in range(size):
        sub = A[:, col:, col]
        nz = sub != 0
        has = nz.any(axis=1)
        det[~has] = 0
        piv = col + np.argmax(nz, axis=1)
        swap = has & (piv != col)
        det[swap] = (-det[swap]) % p
        rows_piv = A[ar, piv].copy()
        A[ar, piv] = A[:, col]
        A[:, col] = rows_piv
        pv = A[:, col, col]
        det = (det * pv) % p
        scale = inv[pv]
        f = (A[:, col + 1:, col] * scale[:, None]) % p
        A[:, col + 1:] = (A[:, col + 1:] - f[:, :, None] * A[:, col][:, None, :]) % p
    return det


def _rref(A, p):
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    inv = _inverses(p)
    pivots = []
    r = 0
    for col in range(cols):
        nz = np.nonzero(A[r:, col])[0]
        if len(nz) == 0:
            continue
        piv = r + nz[0]
        A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * inv[A[r, col]]) % p
        for i in range(rows):
            if i != r and A[i, col]:
                A[i] = (A[i] - A[i, col] * A[r]) % p
        pivots.append(col)
        r += 1
        if r == rows:
            break
    return A, pivots


def _nullspace_mod_p(A, p) -> np.ndarray:
    """Basis of {x : A x = 0} mod p, as the rows of the returned array."""
    A = np.asarray(A, dtype=np.int64)
    cols = A.shape[1]
    R, pivots = _rref(A, p)
    free = [j for j in range(cols) if j not in pivots]
    basis = []
    for f in free:
        x = np.zeros(cols, dtype=np.int64)
        x[f] = 1
        for i, pc in enumerate(pivots):
            x[pc] = (-R[i, f]) % p
        basis.append(x)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)


def _solve_mod_p(A, b, p) -> Optional[np.ndarray]:
    """One solution of A x = b mod p, or None."""
    A = np.asarray(A, dtype=np.int64)
    aug = np.concatenate([A, np.asarray(b, dtype=np.int64).reshape(-1, 1)], axis=1)
    R, pivots = _rref(aug, p)
    if A.shape[1] in pivots:
        return None
    x = np.zeros(A.shape[1], dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, -1]
    return x


# --- pencils -----------------------------------------------------------------


@dataclass
class FpMatrixPencil:
    """m x n matrix of linear forms in v variables over F_p: entry (i, j) = sum_k coeffs[i, j, k] x_k."""

    p: int
    m: int
    n: int
    v: int
    coeffs: np.ndarray

    def __post_init__(self):
        _check_prime(self.p)
        self.coeffs = np.asarray(self.coeffs, dtype=np.int64)
        if self.coeffs.shape != (self.m, self.n, self.v):
            raise ValueError(f"coeffs shape {self.coeffs.shape} != {(self.m, self.n, self.v)}")
        if self.coeffs.min(initial=0) < 0 or self.coeffs.max(initial=0) >= self.p:
            raise ValueError("coefficients must lie in [0, p)")

    def evaluate(self, points) -> np.ndarray:
        """Matrices at a batch of points (shape (B, v)) -> shape (B, m, n)."""
        pts = np.asarray(points, dtype=np.int64)
        single = pts.ndim == 1
        pts = np.atleast_2d(pts)
        out = np.einsum("ijk,bk->bij", self.coeffs, pts) % self.p
        return out[0] if single else out

    @property
    def n_points(self) -> int:
        return projective_point_count(self.v, self.p)


def sample_pencil(m: int, n: int, v: int, p: int, seed: int) -> FpMatrixPencil:
    _check_prime(p)
    if v < 1 or m < 1 or n < 1:
        raise ValueError("need m, n, v >= 1")
    rng = np.random.default_rng(seed)
    # generic means the coefficient map F_p^v -> W has maximal rank
    target = min(v, m * n)
    for _ in range(100):
        coeffs = rng.integers(0, p, size=(m, n, v))
        if rank_mod_p(coeffs.reshape(m * n, v), p) == target:
            break
    return FpMatrixPencil(p, m, n, v, coeffs)


def _random_subspace(dim: int, ambient: int, p: int, rng) -> np.ndarray:
    for _ in range(100):
        B = rng.integers(0, p, size=(dim, ambient))
        if rank_mod_p(B, p) == dim:
            return B
    raise RuntimeError("could not draw a full-rank basis")


def dual_pencils(m: int, n: int, c: int, p: int, seed: int):
    """Pencils of Z^L (v = c) and Z_L (v = mn - c) from one random L in W of dimension c.

    Returns (upper, lower, L_basis): upper parametrises P(L), lower parametrises
    P(L^perp) (None when L = W), both as m x n matrices.
    """
    _check_prime(p)
    if not 0 < c <= m * n:
        raise ValueError(f"need 0 < c <= mn, got c={c}")
    rng = np.random.default_rng(seed)
    B = _random_subspace(c, m * n, p, rng)
    N = _nullspace_mod_p(B, p)
    upper = FpMatrixPencil(p, m, n, c, B.T.reshape(m, n, c))
    # L = W leaves nothing to parametrise on the other side
    lower = FpMatrixPencil(p, m, n, m * n - c, N.T.reshape(m, n, m * n - c)) if c < m * n else None
    return upper, lower, B


# --- point enumeration -------------------------------------------------------


def projective_point_count(v: int, p: int) -> int:
    return (p**v - 1) // (p - 1)


def _point_block(v: int, p: int, start: int, stop: int) -> np.ndarray:
    """Points with global indices [start, stop) of P^{v-1}(F_p).

    Points are grouped by the position t of their first nonzero coordinate,
    which is normalised to 1; the remaining v - t - 1 coordinates are free.
    """
    out = []
    offset = 0
    for t in range(v):
        free = v - t - 1
        size = p**free
        lo, hi = max(start, offset), min(stop, offset + size)
        if lo < hi:
            idx = np.arange(lo - offset, hi - offset, dtype=np.int64)
            pts = np.zeros((hi - lo, v), dtype=np.int64)
            pts[:, t] = 1
            for j in range(free):
                pts[:, v - 1 - j] = idx % p
                idx //= p
            out.append(pts)
        offset += size
        if offset >= stop:
            break
    if not out:
        return np.zeros((0, v), dtype=np.int64)
    return np.concatenate(out)


def _iter_chunks(total: int, chunk: int = CHUNK):
    for start in range(0, total, chunk):
        yield start, min(total, start + chunk)


def _check_budget(n_points: int, budget: int):
    budget = min(budget, HARD_BUDGET)
    if n_points > budget:
        raise BudgetExceededError(f"{n_points} points exceed the enumeration budget {budget}")


@dataclass
class StratumCount:
    p: int
    v: int
    counts: dict  # exact rank -> number of points

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def at_most(self, rank: int) -> int:
        return sum(c for k, c in self.counts.items() if k <= rank)

    def to_rows(self):
        return [(self.p, k, self.counts[k]) for k in sorted(self.counts)]


def rank_strata_count(pencil: FpMatrixPencil, budget: int = HARD_BUDGET, threads: Optional[int] = None) -> StratumCount:
    """Exact number of points of P^{v-1}(F_p) at which the pencil has each rank."""
    total = pencil.n_points
    _check_budget(total, budget)
    size = min(pencil.m, pencil.n)

    def work(span):
        pts = _point_block(pencil.v, pencil.p, *span)
        ranks = rank_mod_p(pencil.evaluate(pts), pencil.p)
        return np.bincount(ranks, minlength=size + 1)

    threads = threads or _threads()
    spans = list(_iter_chunks(total))
    if threads > 1 and len(spans) > 1:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(work, spans))
    else:
        parts = [work(s) for s in spans]
    acc = np.sum(parts, axis=0) if parts else np.zeros(size + 1, dtype=np.int64)
    return StratumCount(pencil.p, pencil.v, {k: int(acc[k]) for k in range(size + 1)})


def _locus_points(pencil: FpMatrixPencil, rank_bound: int, budget: int) -> np.ndarray:
    total = pencil.n_points
    _check_budget(total, budget)
    keep = []
    for span in _iter_chunks(total):
        pts = _point_block(pencil.v, pencil.p, *span)
        ranks = rank_mod_p(pencil.evaluate(pts), pencil.p)
        keep.append(pts[ranks <= rank_bound])
    return np.concatenate(keep) if keep else np.zeros((0, pencil.v), dtype=np.int64)


# --- dimension estimate ------------------------------------------------------


@dataclass
class DimensionEstimate:
    value: object  # int, "empty" or "inconclusive"
    fit: Optional[float]
    expected: Optional[int] = None

    @property
    def matches(self) -> Optional[bool]:
        if self.expected is None:
            return None
        if self.value == "empty":
            return self.expected < 0
        return self.value == self.expected


def dimension_estimate(counts: dict, expected_dim: Optional[int] = None, tol: float = 0.45) -> DimensionEstimate:
    """Fit #Z(F_p) ~ p^d through the origin in log-log coordinates.

    Lang-Weil puts the leading coefficient at the number of top-dimensional
    components, which is 1 for the irreducible loci tested here, so there is
    no intercept.
    """
    if len(counts) < 2:
        raise ValueError("need counts for at least two primes")
    vals = {int(p): int(c) for p, c in counts.items()}
    if all(c == 0 for c in vals.values()):
        return DimensionEstimate("empty", None, expected_dim)
    if any(c == 0 for c in vals.values()):
        return DimensionEstimate("inconclusive", None, expected_dim)
    num = sum(math.log(p) * math.log(c) for p, c in vals.items())
    den = sum(math.log(p) ** 2 for p in vals)
    fit = num / den
    d = round(fit)
    if abs(fit - d) > tol:
        return DimensionEstimate("inconclusive", fit, expected_dim)
    return DimensionEstimate(int(d), fit, expected_dim)


# --- Jacobian criterion ------------------------------------------------------


@dataclass
class SingularReport:
    p: int
    rank_bound: int
    locus_points: int
    singular_points: int
    expected_codim: int
    codim_estimate: Optional[int]

    @property
    def smooth(self) -> bool:
        return self.singular_points == 0


def jacobian_singular_test(pencil: FpMatrixPencil, r: int, budget: int = HARD_BUDGET) -> SingularReport:
    """Jacobian criterion for the rank <= r locus of the pencil, at every F_p-point.

    The derivative of an (r+1)-minor det(M_IJ) in direction x_k is
    sum_{a in I, b in J} cofactor_ab * coeffs[a, b, k] (Jacobi's formula).
    A point is singular when the Jacobian of all (r+1)-minors has rank
    below (m - r)(n - r).
    """
    p, m, n = pencil.p, pencil.m, pencil.n
    expected = (m - r) * (n - r)
    pts = _locus_points(pencil, r, budget)
    if r >= min(m, n) or len(pts) == 0:
        return SingularReport(p, r, len(pts), 0, expected, None if len(pts) == 0 else 0)
    mats = pencil.evaluate(pts)
    B = len(pts)
    # r x r minors, keyed by (rows, cols)
    small = {}
    for I in itertools.combinations(range(m), r):
        for J in itertools.combinations(range(n), r):
            sub = mats[:, list(I)][:, :, list(J)]
            small[(I, J)] = _det_mod_p(sub, p)
    rows = []
    for I in itertools.combinations(range(m), r + 1):
        for J in itertools.combinations(range(n), r + 1):
            grad = np.zeros((B, pencil.v), dtype=np.int64)
            for ai, a in enumerate(I):
                Ia = tuple(x for x in I if x != a)
                for bj, b in enumerate(J):
                    Jb = tuple(y for y in J if y != b)
                    sign = -1 if (ai + bj) % 2 else 1
                    cof = small[(Ia, Jb)] * sign
                    grad = (grad + cof[:, None] * pencil.coeffs[a, b][None, :]) % p
            rows.append(grad)
    jac = np.stack(rows, axis=1)
    ranks = rank_mod_p(jac, p)
    singular = int((ranks < expected).sum())
    return SingularReport(p, r, B, singular, expected, int(ranks.min()))


# --- Springer resolution sampling --------------------------------------------


@dataclass
class SpringerReport:
    m: int
    n: int
    r: int
    c: int
    p: int
    seed: int
    trials: int
    produced: int
    rank_ok: int
    in_section: int
    in_stratum: int
    redraws: int

    @property
    def success_ratio(self) -> float:
        if self.produced == 0:
            return 0.0
        return min(self.rank_ok, self.in_section, self.in_stratum) / self.produced


def springer_sample(m: int, n: int, r: int, c: int, p: int, seed: int, trials: int = 20, max_redraws: int = 50) -> SpringerReport:
    """Sample points of the Springer fibres over random quotients U -> Q_lambda.

    With Lambda an r x m matrix of rank r, a matrix M factors through Q_lambda
    iff M = Lambda^t N. Imposing <A_l, M> = 0 for a basis A_l of L gives linear
    equations <Lambda A_l, N> = 0 in N, so every solution is a point of the
    rank <= r locus in P(L^perp). Each produced M is checked for rank, for
    the equations and, via its coordinates in a basis of L^perp, against the
    enumerated rank stratum. r = m is allowed.
    """
    _check_prime(p)
    if not (0 < r <= m <= n) or not 0 <= c < m * n:
        raise ValueError(f"invalid (m,n,r,c)=({m},{n},{r},{c})")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    L = _random_subspace(c, m * n, p, rng) if c else np.zeros((0, m * n), dtype=np.int64)
    perp = _nullspace_mod_p(L, p) if c else np.eye(m * n, dtype=np.int64)
    lower = FpMatrixPencil(p, m, n, m * n - c, perp.T.reshape(m, n, m * n - c))
    A = L.reshape(c, m, n)
    produced = rank_ok = in_section = in_stratum = redraws = 0
    for _ in range(trials):
        for _attempt in range(max_redraws):
            Lam = rng.integers(0, p, size=(r, m))
            if rank_mod_p(Lam, p) < r:
                redraws += 1
                continue
            # equations in the r*n entries of N
            eqs = np.einsum("im,lmn->lin", Lam, A).reshape(c, r * n) % p
            sol = _nullspace_mod_p(eqs, p) if c else np.eye(r * n, dtype=np.int64)
            if len(sol) == 0:
                redraws += 1
                continue
            coeff = rng.integers(0, p, size=len(sol))
            Nvec = (coeff @ sol) % p
            if not Nvec.any():
                redraws += 1
                continue
            break
        else:
            continue
        M = (Lam.T @ Nvec.reshape(r, n)) % p
        produced += 1
        if rank_mod_p(M, p) <= r:
            rank_ok += 1
        if c == 0 or not ((L @ M.reshape(-1)) % p).any():
            in_section += 1
        y = _solve_mod_p(perp.T, M.reshape(-1), p)
        if y is not None and (lower.evaluate(y) == M).all() and rank_mod_p(lower.evaluate(y), p) <= r:
            in_stratum += 1
    return SpringerReport(m, n, r, c, p, seed, trials, produced, rank_ok, in_section, in_stratum, redraws)


# --- D_L = D^L for r = 1, c = n ----------------------------------------------


def _poly_mul(a: dict, b: dict, p: int) -> dict:
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = (out.get(e, 0) + ca * cb) % p
    return {e: c for e, c in out.items() if c}


def _det_polynomial(forms, p: int, nvars: int) -> dict:
    """Determinant of a square matrix of linear forms (forms[i][j] = coefficient vector), mod p."""
    size = len(forms)
    total = {}
    for perm in itertools.permutations(range(size)):
        sign = 1
        for i in range(size):
            for j in range(i + 1, size):
                if perm[i] > perm[j]:
                    sign = -sign
        term = {(0,) * nvars: sign % p}
        for i in range(size):
            lin = {}
            for k, coef in enumerate(forms[i][perm[i]]):
                if coef % p:
                    e = [0] * nvars
                    e[k] = 1
                    lin[tuple(e)] = int(coef) % p
            term = _poly_mul(term, lin, p)
            if not term:
                break
        for e, c in term.items():
            total[e] = (total.get(e, 0) + c) % p
    return {e: c for e, c in total.items() if c}


def _poly_eval_points(poly: dict, pts: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros(len(pts), dtype=np.int64)
    for e, c in poly.items():
        term = np.full(len(pts), c, dtype=np.int64)
        for k, power in enumerate(e):
            for _ in range(power):
                term = (term * pts[:, k]) % p
        out = (out + term) % p
    return out


@dataclass
class DualityReport:
    m: int
    n: int
    p: int
    seed: int
    agree: bool
    degree_check: bool
    degenerate: bool
    resamples: int
    points: int
    locus_size: int
    det_degree: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.agree and self.degree_check and not self.degenerate


def _duality_once(m, n, p, L):
    # D_L: det of the n x n matrix whose l-th row is xi^t A_l
    A = L.reshape(n, m, n)
    forms = [[A[l, :, j] for j in range(n)] for l in range(n)]
    poly = _det_polynomial(forms, p, m)
    pts = _point_block(m, p, 0, projective_point_count(m, p))
    if not poly:
        return None, pts, poly
    d_lower = _poly_eval_points(poly, pts, p) == 0
    # D^L: the square map L^perp -> (F^m / xi) x F^n drops rank
    perp = _nullspace_mod_p(L, p).reshape(-1, m, n)
    mats = []
    for xi in pts:
        proj = _nullspace_mod_p(xi[None, :], p)  # (m-1) x m, rows annihilate xi
        imgs = np.einsum("am,kmn->kan", proj, perp) % p
        mats.append(imgs.reshape(len(perp), -1))
    ranks = rank_mod_p(np.array(mats), p)
    d_upper = ranks < n * (m - 1)
    return (d_lower, d_upper), pts, poly


def check_duality_DL(m: int, n: int, p: int, seed: int, L=None, max_resamples: int = 5) -> DualityReport:
    """Check D_L = D^L pointwise on P^{m-1}(F_p) for r = 1 and c = n.

    D_L is the zero locus of the degree-n form det(xi^t A_l) built from a
    basis A_1..A_n of L; D^L is computed independently from a basis of L^perp
    as the locus where L^perp -> (U^dual / xi) x V^dual is not an isomorphism.
    An L with identically vanishing determinant is degenerate and, unless L
    was supplied, redrawn.
    """
    _check_prime(p)
    if not 2 <= m <= n:
        raise ValueError(f"need 2 <= m <= n, got m={m}, n={n}")
    rng = np.random.default_rng(seed)
    fixed = L is not None
    resamples = 0
    while True:
        basis = np.asarray(L, dtype=np.int64) % p if fixed else _random_subspace(n, m * n, p, rng)
        if rank_mod_p(basis, p) < n:
            raise ValueError("L must have dimension n")
        loci, pts, poly = _duality_once(m, n, p, basis)
        if loci is not None:
            d_lower, d_upper = loci
            degrees = {sum(e) for e in poly}
            return DualityReport(
                m, n, p, seed,
                agree=bool((d_lower == d_upper).all()),
                degree_check=degrees == {n},
                degenerate=False,
                resamples=resamples,
                points=len(pts),
                locus_size=int(d_lower.sum()),
                det_degree=max(degrees),
            )
        if fixed or resamples >= max_resamples:
            return DualityReport(m, n, p, seed, False, False, True, resamples, len(pts), 0, None)
        resamples += 1


# --- Hasse-Weil --------------------------------------------------------------


@dataclass
class HasseWeilReport:
    m: int
    n: int
    c: int
    p: int
    seed: int
    genus: int
    points: int
    smooth: bool
    bound_ok: bool


def hasse_weil_sample(m: int, n: int, c: int, p: int, seed: int, budget: int = HARD_BUDGET) -> HasseWeilReport:
    """Point count of the curve Z^L (r = 1, rank <= m - 1 in P^{c-1}) against |N - (p+1)| <= 2g sqrt(p)."""
    g = curve_genus(HPDParams(m, n, 1, c, "Y"))
    upper, _, _ = dual_pencils(m, n, c, p, seed)
    strata = rank_strata_count(upper, budget)
    count = strata.at_most(m - 1)
    sing = jacobian_singular_test(upper, m - 1, budget)
    ok = (count - p - 1) ** 2 <= 4 * g * g * p
    return HasseWeilReport(m, n, c, p, seed, g, count, sing.smooth, ok)


# --- smoothness of Z^L for r = 1 ----------------------------------------------


@dataclass
class SmoothnessReport:
    m: int
    n: int
    c: int
    p: int
    seeds: list
    singular_points: list  # one count per seed tried
    expected_smooth: bool
    status: str

    @property
    def found_singular(self) -> bool:
        return any(self.singular_points)

    def to_dict(self):
        return asdict(self)


def smoothness_check(m: int, n: int, c: int, p: int, seed: int, max_reseeds: int = 5, budget: int = HARD_BUDGET) -> SmoothnessReport:
    """Jacobian test on Z^L (rank <= m - 1 in P^{c-1}) against the threshold c < 2n - 2m + 5.

    Below the threshold a generic L is smooth, so singular draws are redrawn
    (they occur with probability about 1/p). At or above it a generic L is
    singular, so draws without F_p-rational singular points are redrawn.
    """
    HPDParams(m, n, 1, c, "Y")
    expected = c < 2 * n - 2 * m + 5
    seeds, sing = [], []
    for attempt in range(max_reseeds + 1):
        s = seed + attempt
        upper, _, _ = dual_pencils(m, n, c, p, s)
        rep = jacobian_singular_test(upper, m - 1, budget)
        seeds.append(s)
        sing.append(rep.singular_points)
        if (rep.singular_points == 0) == expected:
            break
    found = sing[-1] > 0
    if expected:
        status = "smooth: pass" if not found else "unexpected-singular: fail"
    else:
        status = "expected-singular: pass" if found else "expected-singular: not observed"
    return SmoothnessReport(m, n, c, p, seeds, sing, expected, status)


# --- reports -----------------------------------------------------------------


@dataclass
class SampleReport:
    params: dict
    primes: list
    counts: dict  # p -> {rank: count}
    locus_counts: dict  # p -> points of the locus
    dimension_estimate: object
    expected_dim: int
    seed: int
    smooth_sample_result: Optional[dict] = None
    reseeds: int = 0
    seeds_tried: list = field(default_factory=list)
    label: str = "experimental evidence"

    def to_dict(self):
        d = asdict(self)
        d["counts"] = {str(p): {str(k): v for k, v in c.items()} for p, c in self.counts.items()}
        d["locus_counts"] = {str(p): v for p, v in self.locus_counts.items()}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def strata_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "rank", "count"])
        for p in self.primes:
            for k in sorted(self.counts[p]):
                w.writerow([p, k, self.counts[p][k]])
        return buf.getvalue()


def rank_locus_report(
    m: int,
    n: int,
    r: int,
    c: int,
    side: str = "Y",
    primes=(3, 5, 7, 11),
    seed: int = 0,
    budget: int = 10**7,
    smoothness: bool = False,
    max_reseeds: int = 5,
) -> SampleReport:
    """Count the rank locus of a random section at several primes and estimate its dimension.

    side "Y": Z^L in P(L), v = c, rank <= m - r. side "X": Z_L in P(L^perp),
    v = mn - c, rank <= r. A dimension mismatch is treated as a genericity
    failure and the section is redrawn, up to max_reseeds times.
    """
    params = HPDParams(m, n, r, c, side)
    bound = m - r if side == "Y" else r
    expected = params.dim_section
    v = c if side == "Y" else m * n - c
    if v < 1:
        raise ValueError(f"the {side} side has no projective space to enumerate for c={c}")
    for p in primes:
        _check_budget(projective_point_count(v, p), budget)
    tried = []
    for attempt in range(max_reseeds + 1):
        s = seed + attempt
        tried.append(s)
        counts, locus, pencils = {}, {}, {}
        for p in primes:
            upper, lower, _ = dual_pencils(m, n, c, p, s)
            pencil = upper if side == "Y" else lower
            strata = rank_strata_count(pencil, budget)
            counts[p] = strata.counts
            locus[p] = strata.at_most(bound)
            pencils[p] = pencil
        if len(primes) < 2:
            # one prime gives no slope, so there is nothing to reseed on
            est = DimensionEstimate("inconclusive", None, expected)
            break
        est = dimension_estimate(locus, expected)
        if est.matches:
            break
    smooth = None
    if smoothness:
        smooth = {}
        for p in primes:
            rep = jacobian_singular_test(pencils[p], bound, budget)
            smooth[str(p)] = {"singular_points": rep.singular_points, "locus_points": rep.locus_points}
    return SampleReport(
        params={"m": m, "n": n, "r": r, "c": c, "side": side},
        primes=list(primes),
        counts=counts,
        locus_counts=locus,
        dimension_estimate=est.value,
        expected_dim=expected,
        seed=seed,
        smooth_sample_result=smooth,
        reseeds=len(tried) - 1,
        seeds_tried=tried,
    )
