"""The HPD decision surface for linear sections of determinantal towers.

Everything here is read off the numbers (m, n, r, c): dimensions, canonical
classes, the direction of the HPD functor, how many copies of D^b(G) sit in
the orthogonal complement, and the Calabi-Yau / Fano / rationality flags.
Flags are only ever the stated numeric criteria, never certified geometry.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from math import comb
from typing import Optional

from .invariants import (
    DivisorClass,
    HPDParams,
    InvalidParamsError,
    canonical_class,
    degree_section,
)

__all__ = [
    "FILTERS",
    "ResidualReport",
    "SectionReport",
    "SegreFlags",
    "classify",
    "residual_counts",
    "segre_row",
    "sweep",
]


@dataclass
class SegreFlags:
    """The r = 1 row of the Segre-determinantal table."""

    regime: str  # one of "c<m", "m<=c<n", "c=n", "n<c"
    functor_direction: str
    fano_X: bool
    rational_X: bool
    fano_visitor_X: bool
    fano_Y: bool
    rational_Y: bool
    fano_visitor_Y: bool
    cy: bool
    birational_pair: bool
    # generic smoothness of the determinantal locus Z^L in P^L
    smooth_ZL_generic: bool

    def to_dict(self):
        return asdict(self)


@dataclass
class SectionReport:
    m: int
    n: int
    r: int
    c: int
    dim_xl: int
    dim_yl: int
    canonical_x: DivisorClass
    canonical_y: DivisorClass
    functor_direction: str
    complement_blocks: int
    complement_count: int
    complement_side: Optional[str]
    cy_x: bool
    cy_y: bool
    rational_x: bool
    rational_y: bool
    empty_x: bool
    empty_y: bool
    tower_budget_x: int
    tower_budget_y: int
    nef_canonical_x: bool
    nef_canonical_y: bool
    phi_k_birational_x: bool
    phi_k_birational_y: bool
    phi_minus_k_birational_x: bool
    phi_minus_k_birational_y: bool
    fano_candidate_x: bool
    fano_candidate_y: bool
    # Fano needs X_L^{r-1} (resp. Y_L^{r-1}) empty; never checked unless r = 1
    fano_precondition_unverified_x: bool
    fano_precondition_unverified_y: bool
    weakly_fano_visitor_x: bool
    weakly_fano_visitor_y: bool
    segre: Optional[SegreFlags] = None
    degrees: Optional[dict] = None

    @property
    def params(self):
        return (self.m, self.n, self.r, self.c)

    @property
    def cy(self) -> bool:
        return self.cy_x

    def to_dict(self):
        d = asdict(self)
        d["canonical_x"] = self.canonical_x.to_dict()
        d["canonical_y"] = self.canonical_y.to_dict()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SectionReport":
        d = dict(d)
        d.pop("schema_version", None)
        d["canonical_x"] = DivisorClass(**d["canonical_x"])
        d["canonical_y"] = DivisorClass(**d["canonical_y"])
        if d.get("segre") is not None:
            d["segre"] = SegreFlags(**d["segre"])
        return cls(**d)


def _direction(c: int, nr: int) -> str:
    if c < nr:
        return "Y_to_X"
    if c == nr:
        return "equivalence"
    return "X_to_Y"


def _check(m, n, r, c):
    # HPDParams does the range checks; here c = 0 and c = mn are still fine
    HPDParams(m, n, r, c)
    if c < 1:
        raise InvalidParamsError(f"need 1 <= c <= mn, got c={c}")


def segre_row(m: int, n: int, c: int) -> SegreFlags:
    _check(m, n, 1, c)
    if c < m:
        regime = "c<m"
    elif c < n:
        regime = "m<=c<n"
    elif c == n:
        regime = "c=n"
    else:
        regime = "n<c"
    return SegreFlags(
        regime=regime,
        functor_direction=_direction(c, n),
        fano_X=c < m,
        rational_X=c < n,
        fano_visitor_X=c > n and n == m,
        fano_Y=c > n and n == m,
        rational_Y=c > n,
        fano_visitor_Y=c < m,
        cy=c == n == m,
        birational_pair=c == n,
        smooth_ZL_generic=c < 2 * n - 2 * m + 5,
    )


def classify(m: int, n: int, r: int, c: int, with_degrees: bool = False) -> SectionReport:
    _check(m, n, r, c)
    nr = n * r
    px = HPDParams(m, n, r, c, "X")
    py = px.with_side("Y")
    square = m == n
    blocks = abs(c - nr)
    direction = _direction(c, nr)
    degrees = None
    if with_degrees:
        degrees = {
            "x": degree_section(px) if px.dim_xl >= 0 else None,
            "y": degree_section(py) if py.dim_yl >= 0 else None,
        }
    return SectionReport(
        m=m,
        n=n,
        r=r,
        c=c,
        dim_xl=px.dim_xl,
        dim_yl=py.dim_yl,
        canonical_x=canonical_class(px),
        canonical_y=canonical_class(py),
        functor_direction=direction,
        complement_blocks=blocks,
        complement_count=blocks * comb(m, r),
        complement_side={"Y_to_X": "X", "X_to_Y": "Y"}.get(direction),
        cy_x=square and c == nr,
        cy_y=square and c == nr,
        rational_x=nr > c,
        rational_y=c > nr,
        empty_x=px.dim_xl < 0,
        empty_y=py.dim_yl < 0,
        tower_budget_x=nr * comb(m, r),
        tower_budget_y=n * (m - r) * comb(m, r),
        nef_canonical_x=c > nr or (c == nr and not square),
        nef_canonical_y=c < nr or (c == nr and not square),
        phi_k_birational_x=c > nr or (c == nr and n > m),
        phi_k_birational_y=c < nr or (c == nr and n > m),
        phi_minus_k_birational_x=c < nr and square,
        phi_minus_k_birational_y=c > nr and square,
        fano_candidate_x=(c < m) if r == 1 else (c < nr and square),
        fano_candidate_y=c > nr and square,
        fano_precondition_unverified_x=r > 1 and c < nr and square,
        fano_precondition_unverified_y=r > 1 and c > nr and square,
        weakly_fano_visitor_x=square and c > nr,
        weakly_fano_visitor_y=square and c < nr,
        segre=segre_row(m, n, c) if r == 1 else None,
        degrees=degrees,
    )


def _is_curve(rep: SectionReport) -> bool:
    return rep.dim_xl == 1 or rep.dim_yl == 1


FILTERS = {
    "all": lambda rep: True,
    "cy": lambda rep: rep.cy_x and not (rep.empty_x or rep.empty_y),
    "equivalence": lambda rep: rep.functor_direction == "equivalence",
    "fano_candidate": lambda rep: (rep.fano_candidate_x and not rep.empty_x)
    or (rep.fano_candidate_y and not rep.empty_y),
    "curve": _is_curve,
}


def _as_range(spec) -> list:
    if spec is None:
        return []
    if isinstance(spec, int):
        return [spec]
    if isinstance(spec, tuple) and len(spec) == 2 and all(isinstance(x, int) for x in spec):
        lo, hi = spec
        return list(range(lo, hi + 1))
    return sorted(set(spec))


def sweep(
    m_range,
    n_range,
    r_range=None,
    c_range=None,
    filter: str = "all",
    with_degrees: bool = False,
) -> list:
    """Classify every admissible (m, n, r, c) in the given ranges, in lexicographic order.

    Ranges are ints, inclusive (lo, hi) pairs or iterables. r and c default to
    everything admissible. Inadmissible combinations are skipped, so an empty
    range yields an empty list.
    """
    if filter not in FILTERS:
        raise ValueError(f"unknown filter {filter!r}; choose from {sorted(FILTERS)}")
    pred = FILTERS[filter]
    out = []
    for m in _as_range(m_range):
        for n in _as_range(n_range):
            if m < 2 or n < m:
                continue
            rs = range(1, m) if r_range is None else _as_range(r_range)
            for r in rs:
                if not 0 < r < m:
                    continue
                cs = range(1, m * n + 1) if c_range is None else _as_range(c_range)
                for c in cs:
                    if not 1 <= c <= m * n:
                        continue
                    rep = classify(m, n, r, c, with_degrees=with_degrees)
                    if pred(rep):
                        out.append(rep)
    return out


@dataclass
class ResidualReport:
    d: int
    k: int
    index: int
    total_exceptional: int
    residual_exceptional: int
    dual_section_params: Optional[HPDParams]  # None when k + 1 > d^2
    boundary: bool  # d == k: Fano of index 1, outside the strict inequality d < k
    x_side_empty: bool
    notes: list = field(default_factory=list)

    def to_dict(self):
        d = asdict(self)
        if self.dual_section_params is not None:
            d["dual_section_params"] = asdict(self.dual_section_params)
        return d


def residual_counts(d: int, k: int) -> ResidualReport:
    """Exceptional-object counts for a determinantal hypersurface of degree d in P^k.

    Z = Z^L with m = n = d and c = k + 1; its Springer resolution Y_L carries
    k - d + 1 copies of D^b(P^{d-1}), and the diagonal twists O(-t) for
    t = 0..k-d are pulled back from Z, leaving (d-1)(k-d+1) residual objects.
    """
    if d < 3 or d > k:
        raise InvalidParamsError(f"need 3 <= d <= k for a Fano determinantal hypersurface, got d={d}, k={k}")
    index = k + 1 - d
    notes = []
    if k + 1 > d * d:
        # the k + 1 linear forms are dependent in the d^2 matrix entries, so Z is a cone
        params = None
        x_empty = True
        notes.append("k + 1 > d^2: Z is a cone, counts are formal")
    else:
        params = HPDParams(d, d, 1, k + 1, "Y")
        x_empty = params.dim_xl < 0
        if x_empty:
            notes.append("dual Segre section X_L is empty")
    if d == k:
        notes.append("boundary case d = k")
    return ResidualReport(
        d=d,
        k=k,
        index=index,
        total_exceptional=d * index,
        residual_exceptional=(d - 1) * index,
        dual_section_params=params,
        boundary=d == k,
        x_side_empty=x_empty,
        notes=notes,
    )
