"""Numerical invariants of the linear sections X_L and Y_L.

A section is modelled only through its class on the smooth tower: X_L has
class H^c on X, Y_L has class H^(mn-c) on Y. Euler characteristics of line
bundles are restricted to the section by the Koszul alternating sum.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .chow import TowerRing, integrate_tower, tower_ring

__all__ = [
    "DivisorClass",
    "HPDParams",
    "InvalidParamsError",
    "NonIntegralError",
    "NonIsoReport",
    "canonical_class",
    "curve_genus",
    "degree_section",
    "euler_char_top",
    "euler_pairing",
    "nonisomorphism_scan",
    "segre_twist",
]


class InvalidParamsError(ValueError):
    pass


class NonIntegralError(ArithmeticError):
    """Riemann-Roch returned a non-integer: some convention is broken."""


@dataclass(frozen=True)
class DivisorClass:
    h: int
    p: int

    def __add__(self, other):
        return DivisorClass(self.h + other.h, self.p + other.p)

    def __neg__(self):
        return DivisorClass(-self.h, -self.p)

    def to_dict(self):
        return {"h": self.h, "p": self.p}


@dataclass(frozen=True)
class HPDParams:
    """(m, n, r, c) plus a side. c = 0 (X) or c = mn (Y) means the whole tower."""

    m: int
    n: int
    r: int
    c: int = 0
    side: str = "X"

    def __post_init__(self):
        for name in ("m", "n", "r", "c"):
            if not isinstance(getattr(self, name), int) or isinstance(getattr(self, name), bool):
                raise InvalidParamsError(f"{name} must be an integer")
        if self.m < 1 or self.n < self.m:
            raise InvalidParamsError(f"need 1 <= m <= n, got m={self.m}, n={self.n}")
        if not 0 < self.r < self.m:
            raise InvalidParamsError(f"need 0 < r < m, got r={self.r}, m={self.m}")
        if not 0 <= self.c <= self.m * self.n:
            raise InvalidParamsError(f"need 0 <= c <= mn, got c={self.c}")
        if self.side not in ("X", "Y"):
            raise InvalidParamsError(f"side must be X or Y, got {self.side!r}")

    def with_side(self, side: str) -> "HPDParams":
        return HPDParams(self.m, self.n, self.r, self.c, side)

    @property
    def codim(self) -> int:
        return self.c if self.side == "X" else self.m * self.n - self.c

    @property
    def dim_xl(self) -> int:
        return self.r * (self.n + self.m - self.r) - self.c - 1

    @property
    def dim_yl(self) -> int:
        return self.r * (self.m - self.n - self.r) + self.c - 1

    @property
    def dim_section(self) -> int:
        return self.dim_xl if self.side == "X" else self.dim_yl

    def tower(self) -> TowerRing:
        return tower_ring(self.m, self.n, self.r, self.side)


def _require_section(params: HPDParams):
    if params.dim_section < 0:
        raise InvalidParamsError(
            f"expected dimension {params.dim_section} < 0 for {params}: the section is empty"
        )


def degree_section(params: HPDParams) -> int:
    """Degree of X_L (or Y_L) in its projective space: H^dim on the whole tower."""
    _require_section(params)
    T = params.tower()
    return int(integrate_tower(T.H() ** T.dim))


def canonical_class(params: HPDParams) -> DivisorClass:
    m, n, r, c = params.m, params.n, params.r, params.c
    if params.side == "X":
        return DivisorClass(c - n * r, n - m)
    return DivisorClass(n * r - c, n - m)


def segre_twist(x: int, y: int) -> DivisorClass:
    """O(x, y) on P^{n-1} x P^{m-1} written in (H, P) coordinates (r = 1, side X)."""
    return DivisorClass(x, y - x)


def _exact_int(value, what: str) -> int:
    value = Fraction(value)
    if value.denominator != 1:
        raise NonIntegralError(f"{what} evaluated to non-integer {value}")
    return int(value)


def euler_pairing(params: HPDParams, a1: int, b1: int, a2: int, b2: int) -> int:
    """chi(O(a1 H + b1 P), O(a2 H + b2 P)) on the section."""
    T = params.tower()
    div = T.divisor(a2 - a1, b2 - b1)
    return _exact_int(T.chi(div, params.codim), f"chi on {params}")


@lru_cache(maxsize=None)
def _top_chern_terms(m, n, r, side, codim):
    T = tower_ring(m, n, r, side)
    d = T.dim - codim
    parts = T.tangent_chern_parts()
    total = Fraction(0)
    hc = T.H() ** codim
    h = T.H()
    for j in range(d + 1):
        # c(N)^{-1} = (1 + H)^{-codim} = sum_j (-1)^j binom(codim + j - 1, j) H^j
        coeff = comb(codim + j - 1, j) if codim else int(j == 0)
        if coeff:
            total += (-1) ** j * coeff * Fraction(integrate_tower(hc * parts[d - j]))
        hc = hc * h
    return total


def euler_char_top(params: HPDParams) -> int:
    """Topological Euler characteristic of a smooth section of expected dimension."""
    _require_section(params)
    val = _top_chern_terms(params.m, params.n, params.r, params.side, params.codim)
    return _exact_int(val, f"chi_top on {params}")


def curve_genus(params: HPDParams) -> int:
    """g = 1 - chi(O), cross-checked against the degree of the canonical class."""
    if params.dim_section != 1:
        raise InvalidParamsError(f"section has dimension {params.dim_section}, not 1")
    g = 1 - euler_pairing(params, 0, 0, 0, 0)
    K = canonical_class(params)
    T = params.tower()
    deg_k = integrate_tower(T.H() ** params.codim * T.divisor(K.h, K.p))
    if deg_k != 2 * g - 2:
        raise NonIntegralError(f"genus {g} but deg K = {deg_k} on {params}")
    return g


@dataclass
class NonIsoReport:
    m: int
    n: int
    r: int
    c: int
    dim: int
    deg_X_poly_in_a: list  # coefficient of a^k at index k
    deg_Y: int
    a_range: tuple
    integer_solutions: list
    cauchy_bound: int
    solutions_outside_range: list = field(default_factory=list)
    complete: bool = True
    identically_equal: bool = False

    def to_dict(self):
        d = asdict(self)
        d["a_range"] = list(self.a_range)
        return d


def _poly_eval(coeffs, a):
    out = 0
    for q in reversed(coeffs):
        out = out * a + q
    return out


def nonisomorphism_scan(m: int, n: int, r: int, c: int, a_range=(-10, 10)) -> NonIsoReport:
    """Search for integers a with deg_{X_L}(H + aP) = deg Y_L.

    f(a) - deg Y_L is an integer polynomial, so every integer root is bounded
    by the Cauchy bound; the scan covers that bound and the report says so.
    """
    px = HPDParams(m, n, r, c, "X")
    py = px.with_side("Y")
    D = px.dim_xl
    if D != py.dim_yl:
        raise InvalidParamsError(f"dim X_L = {D} but dim Y_L = {py.dim_yl}")
    _require_section(px)
    T = px.tower()
    H, P = T.H(), T.P()
    base = H ** c
    coeffs = []
    for k in range(D + 1):
        coeffs.append(comb(D, k) * int(integrate_tower(base * H ** (D - k) * P ** k)))
    deg_y = degree_section(py)
    g = list(coeffs)
    g[0] -= deg_y
    while len(g) > 1 and g[-1] == 0:
        g.pop()
    lo, hi = a_range
    if lo > hi:
        raise InvalidParamsError("empty a_range")
    if len(g) == 1:
        identically = g[0] == 0
        sols = list(range(lo, hi + 1)) if identically else []
        return NonIsoReport(m, n, r, c, D, coeffs, deg_y, (lo, hi), sols, 0, [], not identically, identically)
    lead = abs(g[-1])
    # integer roots satisfy |a| <= 1 + max |g_i / g_lead|
    bound = 1 + max(-(-abs(q) // lead) for q in g[:-1])
    roots = [a for a in range(-bound, bound + 1) if _poly_eval(g, a) == 0]
    inside = [a for a in roots if lo <= a <= hi]
    outside = [a for a in roots if not lo <= a <= hi]
    return NonIsoReport(m, n, r, c, D, coeffs, deg_y, (lo, hi), inside, bound, outside, True, False)
