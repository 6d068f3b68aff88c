"""Exact Chow-ring arithmetic for Grassmannians and the projective-bundle towers over them.

Conventions
-----------
``G(m, r)`` is the Grassmannian of r-dimensional quotients of an m-dimensional
space U, with tautological sequence ``0 -> U -> U x O -> Q -> 0`` (Q of rank r).
Schubert classes are indexed by partitions in the r x (m - r) box and are the
Schur classes of the Chern roots of Q, so that

    c_i(Q)     = sigma_{1^i}      (column partitions)
    c_j(U^dual) = sigma_{(j)}     (row partitions)

The towers are ``X = P(V x Q)`` and ``Y = P(V^dual x U^dual)`` with
``dim V = n``, projectivised in Grothendieck's convention (rank-1 quotients).
With ``E`` the bundle and ``e = rank E`` the Chow ring of the tower is
``Chow(G)[H] / (H^e - c_1(E) H^{e-1} + c_2(E) H^{e-2} - ...)`` and the
pushforward of ``H^{e-1+k}`` is the k-th complete homogeneous class of E.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Iterator, Mapping, Sequence, Union

Coeff = Union[int, Fraction]
Partition = tuple  # weakly decreasing tuple of positive ints; () is the empty partition

__all__ = [
    "BundleChern",
    "GrassRing",
    "RingMismatchError",
    "SchubertElement",
    "TowerElement",
    "TowerRing",
    "box_partitions",
    "ch_to_chern",
    "chern",
    "chern_to_ch",
    "grass_ring",
    "integrate_grass",
    "integrate_tower",
    "multiply",
    "reduce",
    "todd_from_ch",
    "tower_ring",
]


class RingMismatchError(ValueError):
    pass


def _normalize(q: Coeff) -> Coeff:
    if isinstance(q, Fraction) and q.denominator == 1:
        return q.numerator
    return q


def normalize_partition(parts: Iterable[int]) -> Partition:
    parts = tuple(int(p) for p in parts)
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {parts}")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"{parts} is not weakly decreasing")
    return tuple(p for p in parts if p > 0)


def fits_box(lam: Partition, rows: int, cols: int) -> bool:
    return len(lam) <= rows and (not lam or lam[0] <= cols)


def box_partitions(rows: int, cols: int) -> list[Partition]:
    """All partitions in the rows x cols box, ordered by size then reverse-lex."""
    out = []

    def rec(prefix, max_part, slots):
        out.append(tuple(prefix))
        if slots == 0:
            return
        for part in range(1, max_part + 1):
            rec(prefix + [part], part, slots - 1)

    rec([], cols, rows)
    return sorted(out, key=lambda lam: (sum(lam), [-p for p in lam]))


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


# --- Pieri rules -------------------------------------------------------------


def _horizontal_strips(lam: Partition, k: int, rows: int, cols: int) -> Iterator[Partition]:
    # mu/lam is a horizontal strip of size k: lam_i <= mu_i <= lam_{i-1}
    length = min(len(lam) + 1, rows)
    padded = list(lam) + [0] * (length - len(lam))

    def rec(i, remaining, acc):
        if i == length:
            if remaining == 0:
                yield tuple(p for p in acc if p > 0)
            return
        upper = cols if i == 0 else padded[i - 1]
        for add in range(min(remaining, upper - padded[i]) + 1):
            yield from rec(i + 1, remaining - add, acc + [padded[i] + add])

    if length == 0:
        if k == 0:
            yield ()
        return
    yield from rec(0, k, [])


@lru_cache(maxsize=None)
def _pieri_h(rows: int, cols: int, lam: Partition, k: int) -> tuple:
    """sigma_(k) * sigma_lam as a tuple of partitions (all coefficients 1)."""
    return tuple(_horizontal_strips(lam, k, rows, cols))


@lru_cache(maxsize=None)
def _pieri_e(rows: int, cols: int, lam: Partition, k: int) -> tuple:
    """sigma_(1^k) * sigma_lam, computed on conjugates."""
    conj = _pieri_h(cols, rows, conjugate(lam), k)
    return tuple(conjugate(mu) for mu in conj)


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, cycle = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            cycle += 1
        if cycle % 2 == 0:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def _basis_product(rows: int, cols: int, lam: Partition, mu: Partition) -> tuple:
    """sigma_lam * sigma_mu by iterated Pieri over a Jacobi-Trudi expansion of mu.

    Returns a tuple of (partition, coefficient) pairs.
    """
    if len(mu) > len(lam) or (len(mu) == len(lam) and mu > lam):
        lam, mu = mu, lam
    if not mu:
        return ((lam, 1),)
    conj = conjugate(mu)
    # expand along whichever Jacobi-Trudi determinant is smaller
    if len(mu) <= len(conj):
        parts, pieri = mu, _pieri_h
    else:
        parts, pieri = conj, _pieri_e
    size = len(parts)
    acc: dict = {}
    for perm in itertools.permutations(range(size)):
        degrees = [parts[i] - i + perm[i] for i in range(size)]
        if any(d < 0 for d in degrees):
            continue
        sign = _perm_sign(perm)
        current = {lam: 1}
        for d in degrees:
            if d == 0 or not current:
                continue
            nxt: dict = {}
            for nu, coeff in current.items():
                for rho in pieri(rows, cols, nu, d):
                    nxt[rho] = nxt.get(rho, 0) + coeff
            current = nxt
        for nu, coeff in current.items():
            acc[nu] = acc.get(nu, 0) + sign * coeff
    return tuple((nu, c) for nu, c in sorted(acc.items()) if c)


# --- Grassmannian ring -------------------------------------------------------


class SchubertElement:
    """Immutable linear combination of Schubert classes on G(m, r)."""

    __slots__ = ("m", "r", "_coeffs")

    def __init__(self, m: int, r: int, coeffs: Mapping[Partition, Coeff] | None = None):
        self.m = m
        self.r = r
        clean = {}
        for lam, q in (coeffs or {}).items():
            lam = normalize_partition(lam)
            if not fits_box(lam, r, m - r):
                raise ValueError(f"partition {lam} does not fit the {r}x{m - r} box")
            q = _normalize(q)
            if q:
                clean[lam] = _normalize(clean.get(lam, 0) + q)
                if not clean[lam]:
                    del clean[lam]
        self._coeffs = clean

    @classmethod
    def _raw(cls, m, r, coeffs):
        obj = cls.__new__(cls)
        obj.m, obj.r, obj._coeffs = m, r, coeffs
        return obj

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def __getitem__(self, lam) -> Coeff:
        return self._coeffs.get(normalize_partition(lam), 0)

    def __bool__(self):
        return bool(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def _check(self, other):
        if (self.m, self.r) != (other.m, other.r):
            raise RingMismatchError(f"G({self.m},{self.r}) vs G({other.m},{other.r})")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = grass_ring(self.m, self.r).one() * other
        self._check(other)
        out = dict(self._coeffs)
        for lam, q in other._coeffs.items():
            v = _normalize(out.get(lam, 0) + q)
            if v:
                out[lam] = v
            else:
                out.pop(lam, None)
        return SchubertElement._raw(self.m, self.r, out)

    __radd__ = __add__

    def __neg__(self):
        return SchubertElement._raw(self.m, self.r, {lam: -q for lam, q in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return SchubertElement._raw(self.m, self.r, {})
            return SchubertElement._raw(
                self.m, self.r, {lam: _normalize(q * other) for lam, q in self._coeffs.items()}
            )
        if isinstance(other, TowerElement):
            return NotImplemented
        self._check(other)
        rows, cols = self.r, self.m - self.r
        out: dict = {}
        for lam, a in self._coeffs.items():
            for mu, b in other._coeffs.items():
                for nu, c in _basis_product(rows, cols, lam, mu):
                    out[nu] = out.get(nu, 0) + a * b * c
        return SchubertElement._raw(
            self.m, self.r, {nu: _normalize(q) for nu, q in out.items() if q}
        )

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = grass_ring(self.m, self.r).one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = grass_ring(self.m, self.r).one() * other
        if not isinstance(other, SchubertElement):
            return NotImplemented
        return (self.m, self.r) == (other.m, other.r) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.m, self.r, frozenset(self._coeffs.items())))

    def graded(self, k: int) -> "SchubertElement":
        return SchubertElement._raw(
            self.m, self.r, {lam: q for lam, q in self._coeffs.items() if sum(lam) == k}
        )

    def degrees(self) -> set:
        return {sum(lam) for lam in self._coeffs}

    def constant(self) -> Coeff:
        return self._coeffs.get((), 0)

    def integrate(self) -> Coeff:
        return integrate_grass(self)

    def __repr__(self):
        if not self._coeffs:
            return f"SchubertElement(G({self.m},{self.r}), 0)"
        terms = " + ".join(f"{q}*s{list(lam)}" for lam, q in sorted(self._coeffs.items()))
        return f"SchubertElement(G({self.m},{self.r}), {terms})"


class GrassRing:
    """Handle on Chow(G(m, r)) with its Schubert basis."""

    def __init__(self, m: int, r: int):
        if not (isinstance(m, int) and isinstance(r, int)) or not 0 < r < m:
            raise ValueError(f"need 0 < r < m, got m={m}, r={r}")
        self.m = m
        self.r = r
        self.dim = r * (m - r)
        self.top = tuple([m - r] * r)
        self._basis = box_partitions(r, m - r)

    def __repr__(self):
        return f"GrassRing(m={self.m}, r={self.r})"

    @property
    def basis(self) -> list[Partition]:
        return list(self._basis)

    def sigma(self, *parts) -> SchubertElement:
        if len(parts) == 1 and isinstance(parts[0], (tuple, list)):
            parts = tuple(parts[0])
        return SchubertElement(self.m, self.r, {normalize_partition(parts): 1})

    def zero(self) -> SchubertElement:
        return SchubertElement._raw(self.m, self.r, {})

    def one(self) -> SchubertElement:
        return SchubertElement._raw(self.m, self.r, {(): 1})

    def point(self) -> SchubertElement:
        return self.sigma(self.top)

    def complement(self, lam: Partition) -> Partition:
        lam = normalize_partition(lam)
        padded = list(lam) + [0] * (self.r - len(lam))
        return normalize_partition(self.m - self.r - p for p in reversed(padded))


@lru_cache(maxsize=None)
def grass_ring(m: int, r: int) -> GrassRing:
    return GrassRing(m, r)


def multiply(a: SchubertElement, b: SchubertElement) -> SchubertElement:
    return a * b


def integrate_grass(x: SchubertElement) -> Coeff:
    """Coefficient of the point class (the full r x (m-r) rectangle)."""
    return x[tuple([x.m - x.r] * x.r)]


# --- graded power-series plumbing -------------------------------------------


def _graded_parts(x, dim: int) -> list:
    return [x.graded(k) for k in range(dim + 1)]


def _series_coefficients_log_todd(n: int) -> list[Fraction]:
    """Coefficients b_k of log(x / (1 - e^{-x})) up to x^n."""
    # x/(1-e^{-x}) = 1 / (sum_{j>=0} (-1)^j x^j / (j+1)!)
    denom = [Fraction((-1) ** j, factorial(j + 1)) for j in range(n + 1)]
    f = [Fraction(0)] * (n + 1)
    f[0] = Fraction(1)
    for k in range(1, n + 1):
        f[k] = -sum(denom[j] * f[k - j] for j in range(1, k + 1))
    # log f via f' = f * (log f)'
    logf = [Fraction(0)] * (n + 1)
    for k in range(1, n + 1):
        s = k * f[k] - sum(j * logf[j] * f[k - j] for j in range(1, k))
        logf[k] = s / k
    return logf


def chern_to_ch(c_parts: Sequence, rank: int, one) -> list:
    """Chern character components ch_0..ch_d from Chern classes c_0..c_d (Newton identities)."""
    d = len(c_parts) - 1
    zero = one * 0
    p = [one * rank]
    for k in range(1, d + 1):
        acc = c_parts[k] * ((-1) ** (k - 1) * k) if k < len(c_parts) else zero
        for i in range(1, k):
            acc = acc + (c_parts[i] * p[k - i]) * ((-1) ** (i - 1))
        p.append(acc)
    return [p[0]] + [p[k] * Fraction(1, factorial(k)) for k in range(1, d + 1)]


def ch_to_chern(ch_parts: Sequence, one) -> list:
    """Chern classes c_0..c_d from Chern character components (inverse Newton identities)."""
    d = len(ch_parts) - 1
    power = [None] + [ch_parts[k] * factorial(k) for k in range(1, d + 1)]
    e = [one]
    for k in range(1, d + 1):
        acc = one * 0
        for i in range(1, k + 1):
            acc = acc + (e[k - i] * power[i]) * ((-1) ** (i - 1))
        e.append(acc * Fraction(1, k))
    return e


def graded_exp(x, one, max_terms: int):
    """exp(x) for nilpotent x with zero constant term."""
    out = one
    term = one
    for k in range(1, max_terms + 1):
        term = (term * x) * Fraction(1, k)
        if term.is_zero():
            break
        out = out + term
    return out


def todd_from_ch(ch_parts: Sequence, one):
    """Todd class as exp(sum_k b_k k! ch_k)."""
    d = len(ch_parts) - 1
    b = _series_coefficients_log_todd(d)
    log_td = one * 0
    for k in range(1, d + 1):
        if b[k]:
            log_td = log_td + ch_parts[k] * (b[k] * factorial(k))
    return graded_exp(log_td, one, d)


def graded_inverse(parts: Sequence, one, dim: int) -> list:
    """Homogeneous parts of 1/x for x = sum(parts) with parts[0] == 1."""
    inv = [one]
    for k in range(1, dim + 1):
        acc = one * 0
        for i in range(1, min(k, len(parts) - 1) + 1):
            acc = acc - parts[i] * inv[k - i]
        inv.append(acc)
    return inv


def _dual_parts(parts: Sequence) -> list:
    return [x * ((-1) ** k) for k, x in enumerate(parts)]


def _power_parts(parts: Sequence, n: int, one, dim: int) -> list:
    """Homogeneous parts of (sum parts)^n, truncated at dim."""
    out = [one] + [one * 0] * dim
    for _ in range(n):
        nxt = [one * 0] * (dim + 1)
        for i, a in enumerate(out):
            if a.is_zero():
                continue
            for j, b in enumerate(parts):
                if i + j > dim:
                    break
                if not b.is_zero():
                    nxt[i + j] = nxt[i + j] + a * b
        out = nxt
    return out


class BundleChern:
    """Total Chern class of a bundle as graded parts c_0, c_1, ... plus its rank."""

    def __init__(self, parts: Sequence[SchubertElement], rank: int):
        parts = list(parts)
        while len(parts) > 1 and parts[-1].is_zero():
            parts.pop()
        if not parts or parts[0] != grass_ring(parts[0].m, parts[0].r).one():
            raise ValueError("degree-0 part of a total Chern class must be 1")
        self.parts = tuple(parts)
        self.rank = rank

    def __getitem__(self, k: int) -> SchubertElement:
        if k < len(self.parts):
            return self.parts[k]
        return self.parts[0] * 0

    def total(self) -> SchubertElement:
        out = self.parts[0] * 0
        for x in self.parts:
            out = out + x
        return out

    def top(self) -> SchubertElement:
        return self[self.rank]

    def ch(self) -> list:
        ring = grass_ring(self.parts[0].m, self.parts[0].r)
        padded = [self[k] for k in range(ring.dim + 1)]
        return chern_to_ch(padded, self.rank, ring.one())

    def __repr__(self):
        return f"BundleChern(rank={self.rank}, parts={list(self.parts)!r})"


@lru_cache(maxsize=None)
def chern(tag: str, m: int, r: int) -> BundleChern:
    """Total Chern class of a tautological bundle on G(m, r).

    Tags: ``Q``, ``U``, ``Qdual``, ``Udual``, ``tangentG``.
    """
    ring = grass_ring(m, r)
    one = ring.one()
    c_q = [ring.sigma([1] * i) for i in range(r + 1)]
    if tag == "Q":
        return BundleChern(c_q, r)
    if tag == "Qdual":
        return BundleChern(_dual_parts(c_q), r)
    if tag in ("U", "Udual"):
        c_u = graded_inverse(c_q, one, ring.dim)
        return BundleChern(c_u if tag == "U" else _dual_parts(c_u), m - r)
    if tag == "tangentG":
        ch_q = chern("Q", m, r).ch()
        ch_udual = [x * -1 for x in _dual_parts(ch_q)]
        ch_udual[0] = ch_udual[0] + one * m
        ch_t = [one * 0] * (ring.dim + 1)
        for i, a in enumerate(ch_udual):
            for j, b in enumerate(ch_q):
                if i + j <= ring.dim:
                    ch_t[i + j] = ch_t[i + j] + a * b
        return BundleChern(ch_to_chern(ch_t, one), ring.dim)
    raise ValueError(f"unknown bundle tag {tag!r}")


# --- towers ------------------------------------------------------------------


class TowerElement:
    """Element of Chow(X) or Chow(Y): coefficients over Chow(G) of H^0, H^1, ...

    Elements produced by ring arithmetic are reduced (exactly ``e`` entries);
    longer coefficient tuples are allowed as input to :func:`reduce` and
    :func:`integrate_tower`.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: "TowerRing", coeffs: Sequence[SchubertElement]):
        coeffs = tuple(coeffs)
        g = ring.grass
        for x in coeffs:
            if (x.m, x.r) != (g.m, g.r):
                raise RingMismatchError("tower coefficient lives on the wrong Grassmannian")
        if len(coeffs) < ring.e:
            coeffs = coeffs + (g.zero(),) * (ring.e - len(coeffs))
        self.ring = ring
        self.coeffs = coeffs

    @property
    def is_reduced(self) -> bool:
        return len(self.coeffs) == self.ring.e

    def _check(self, other):
        if self.ring is not other.ring and self.ring.key != other.ring.key:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def _lift(self, other):
        if isinstance(other, (int, Fraction)):
            return self.ring.one() * other
        if isinstance(other, SchubertElement):
            return self.ring.from_base(other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        zero = self.ring.grass.zero()
        a = self.coeffs + (zero,) * (n - len(self.coeffs))
        b = other.coeffs + (zero,) * (n - len(other.coeffs))
        return TowerElement(self.ring, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return TowerElement(self.ring, [-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TowerElement(self.ring, [x * other for x in self.coeffs])
        other = self._lift(other)
        self._check(other)
        zero = self.ring.grass.zero()
        prod = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    prod[i + j] = prod[i + j] + a * b
        return reduce(TowerElement(self.ring, prod))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, TowerElement):
            return NotImplemented
        a, b = reduce(self), reduce(other)
        return a.ring.key == b.ring.key and a.coeffs == b.coeffs

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.coeffs)

    def graded(self, k: int) -> "TowerElement":
        return TowerElement(
            self.ring, [x.graded(k - j) if k >= j else x * 0 for j, x in enumerate(self.coeffs)]
        )

    def integrate(self) -> Coeff:
        return integrate_tower(self)

    def dump(self) -> str:
        """Text dump: one ``coeff * s[lam] * H^k`` line per term, sorted by (k, lam)."""
        lines = []
        for k, x in enumerate(self.coeffs):
            for lam, q in sorted(x.items()):
                lines.append(f"{q} * s{list(lam)} * H^{k}")
        return "\n".join(lines)

    def __repr__(self):
        return f"TowerElement({self.ring}, {list(self.coeffs)!r})"


class TowerRing:
    """Chow ring of X = P(V x Q) (side ``"X"``) or Y = P(V^dual x U^dual) (side ``"Y"``)."""

    def __init__(self, m: int, n: int, r: int, side: str):
        if side not in ("X", "Y"):
            raise ValueError(f"side must be 'X' or 'Y', got {side!r}")
        if not isinstance(n, int) or n < m:
            raise ValueError(f"need n >= m, got m={m}, n={n}")
        self.grass = grass_ring(m, r)
        self.m, self.n, self.r, self.side = m, n, r, side
        self.key = (m, n, r, side)
        self.e = n * r if side == "X" else n * (m - r)
        self.dim = self.grass.dim + self.e - 1
        g = self.grass
        base = chern("Q" if side == "X" else "Udual", m, r)
        # c(E) = c(Q)^n resp. c(U^dual)^n
        self.chern_E = _power_parts(list(base.parts), n, g.one(), g.dim)
        # pushforward pi_*(H^{e-1+k}) = k-th complete homogeneous class of E
        self.segre_E = graded_inverse(_dual_parts(self.chern_E), g.one(), g.dim)
        self._cache: dict = {}

    def __repr__(self):
        return f"TowerRing(m={self.m}, n={self.n}, r={self.r}, side={self.side!r})"

    def zero(self) -> TowerElement:
        return TowerElement(self, [])

    def one(self) -> TowerElement:
        return TowerElement(self, [self.grass.one()])

    def from_base(self, x: SchubertElement) -> TowerElement:
        return TowerElement(self, [x])

    def H(self, k: int = 1) -> TowerElement:
        g = self.grass
        return reduce(TowerElement(self, [g.zero()] * k + [g.one()]))

    def P(self) -> TowerElement:
        """Pullback of c_1(Q) (equal to c_1(U^dual)); written P on X and Q on Y."""
        return self.from_base(self.grass.sigma(1))

    def divisor(self, h: int, p: int) -> TowerElement:
        return self.H() * h + self.P() * p

    @property
    def chern_E_dual(self) -> list:
        return _dual_parts(self.chern_E)

    def basis_size(self) -> int:
        return self.e * len(self.grass.basis)

    def tangent_chern(self) -> TowerElement:
        """Total Chern class of T_tower = T_G + (E^dual(H) - O)."""
        if "c_T" not in self._cache:
            H1 = self.H() + 1
            rel = self.zero()
            # c(E^dual (x) O(H)) = sum_i c_i(E^dual) (1+H)^(e-i)
            pow_cache = {}

            def one_plus_h(k):
                if k not in pow_cache:
                    pow_cache[k] = H1 ** k
                return pow_cache[k]

            for i, ci in enumerate(self.chern_E_dual):
                if ci.is_zero():
                    continue
                rel = rel + one_plus_h(self.e - i) * self.from_base(ci)
            tg = self.from_base(chern("tangentG", self.m, self.r).total())
            self._cache["c_T"] = tg * rel
        return self._cache["c_T"]

    def tangent_chern_parts(self) -> list:
        if "c_T_parts" not in self._cache:
            total = self.tangent_chern()
            self._cache["c_T_parts"] = [total.graded(k) for k in range(self.dim + 1)]
        return self._cache["c_T_parts"]

    def todd(self) -> TowerElement:
        """Todd class of the tower's tangent bundle."""
        if "td" not in self._cache:
            one = self.one()
            g = self.grass
            ch_q = chern("Q", self.m, self.r).ch()
            if self.side == "X":
                ch_base = [self.from_base(x) * self.n for x in _dual_parts(ch_q)]
            else:
                ch_u = [x * -1 for x in ch_q]
                ch_u[0] = ch_u[0] + g.one() * self.m
                ch_base = [self.from_base(x) * self.n for x in ch_u]
            ch_edual = sum_tower(ch_base, self)
            exp_h = graded_exp(self.H(), one, self.dim)
            ch_rel = ch_edual * exp_h - 1
            ch_tg = sum_tower([self.from_base(x) for x in chern("tangentG", self.m, self.r).ch()], self)
            ch_t = ch_rel + ch_tg
            parts = [ch_t.graded(k) for k in range(self.dim + 1)]
            self._cache["td"] = todd_from_ch(parts, one)
        return self._cache["td"]

    def chi(self, divisor: TowerElement, section_codim: int = 0) -> Coeff:
        """Euler characteristic of O(divisor) restricted to a codim-k H-section, by Koszul."""
        td = self.todd()
        one = self.one()
        total = 0
        base = graded_exp(divisor, one, self.dim)
        exp_minus_h = graded_exp(self.H() * -1, one, self.dim)
        twist = base
        for j in range(section_codim + 1):
            val = integrate_tower(twist * td)
            total += (-1) ** j * comb(section_codim, j) * val
            twist = twist * exp_minus_h
        return _normalize(Fraction(total))


def sum_tower(items, ring: TowerRing) -> TowerElement:
    out = ring.zero()
    for x in items:
        out = out + x
    return out


@lru_cache(maxsize=None)
def tower_ring(m: int, n: int, r: int, side: str) -> TowerRing:
    return TowerRing(m, n, r, side)


def reduce(t: TowerElement) -> TowerElement:
    """Rewrite H^k, k >= e, using H^e = c_1(E) H^{e-1} - c_2(E) H^{e-2} + ..."""
    ring = t.ring
    e = ring.e
    if len(t.coeffs) <= e:
        return t if len(t.coeffs) == e else TowerElement(ring, t.coeffs)
    coeffs = list(t.coeffs)
    c = ring.chern_E
    for k in range(len(coeffs) - 1, e - 1, -1):
        top = coeffs[k]
        if top.is_zero():
            continue
        for i in range(1, min(e, len(c) - 1) + 1):
            if c[i].is_zero():
                continue
            coeffs[k - i] = coeffs[k - i] + (c[i] * top) * ((-1) ** (i + 1))
    return TowerElement(ring, coeffs[:e])


def integrate_tower(t: TowerElement) -> Coeff:
    """Degree of the top-dimensional part via pushforward to G then integration there."""
    ring = t.ring
    total = 0
    for k, x in enumerate(t.coeffs):
        j = k - (ring.e - 1)
        if j < 0 or x.is_zero() or j >= len(ring.segre_E):
            continue
        total += integrate_grass(x * ring.segre_E[j])
    return _normalize(Fraction(total))
