"""Bookkeeping for semiorthogonal decompositions at the level of numbers.

Nothing here builds a category. Ledgers count blocks of Lefschetz and HPD
decompositions; Gram matrices hold Euler pairings chi(E_i, E_j) of
line-bundle collections; mutations act on those matrices K-theoretically.
Exceptionality is only ever checked as unitriangularity of the Gram matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Optional

from .invariants import (
    DivisorClass,
    HPDParams,
    InvalidParamsError,
    euler_char_top,
    euler_pairing,
)

__all__ = [
    "AdditivityReport",
    "Block",
    "GramMatrix",
    "Ledger",
    "MutationError",
    "ReplayReport",
    "gram_matrix",
    "hh_additivity_check",
    "hpd_section_ledger",
    "lefschetz_ledger",
    "mutate",
    "replay_residual_mutations",
]


class MutationError(ValueError):
    pass


@dataclass
class Block:
    label: str
    generator_count: Optional[int]  # None for C_L, which need not be generated by exceptionals
    twist: Optional[DivisorClass] = None

    def to_dict(self):
        return {
            "label": self.label,
            "generator_count": self.generator_count,
            "twist": None if self.twist is None else self.twist.to_dict(),
        }


@dataclass
class Ledger:
    name: str
    blocks: list = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(b.generator_count for b in self.blocks if b.generator_count is not None)

    @property
    def exceptional_blocks(self) -> list:
        return [b for b in self.blocks if b.generator_count is not None]

    def to_dict(self):
        return {"name": self.name, "total": self.total, "blocks": [b.to_dict() for b in self.blocks]}

    def to_text(self) -> str:
        width = max([len(b.label) for b in self.blocks] + [5])
        lines = [f"{self.name}  (total exceptional objects: {self.total})"]
        for b in self.blocks:
            count = "-" if b.generator_count is None else str(b.generator_count)
            lines.append(f"  {b.label:<{width}}  {count:>4}")
        return "\n".join(lines)


def lefschetz_ledger(m: int, n: int, r: int, side: str) -> Ledger:
    """Rectangular Lefschetz decomposition of the full tower, each block of size binom(m, r)."""
    HPDParams(m, n, r, 0, side)
    size = comb(m, r)
    if side == "X":
        twists = range(0, n * r)
        name, letter = f"X(m={m},n={n},r={r})", "A"
    else:
        twists = range((r - m) * n + 1, 1)
        name, letter = f"Y(m={m},n={n},r={r})", "B"
    blocks = [Block(f"{letter}({k}H)" if k else letter, size, DivisorClass(k, 0)) for k in twists]
    return Ledger(name, blocks)


def hpd_section_ledger(m: int, n: int, r: int, c: int):
    """Ledgers of D^b(X_L) and D^b(Y_L): a shared block C_L plus |c - nr| copies of D^b(G).

    The complement sits on X_L when c < nr and on Y_L when c > nr. Twist
    labels of the complement blocks follow the count only.
    """
    HPDParams(m, n, r, c)
    size = comb(m, r)
    nr = n * r
    cl = Block("C_L", None)
    x_blocks, y_blocks = [cl], [cl]
    if c < nr:
        x_blocks = [cl] + [Block(f"A({j}H)", size, DivisorClass(j, 0)) for j in range(1, nr - c + 1)]
    elif c > nr:
        y_blocks = [Block(f"B({j}H)", size, DivisorClass(j, 0)) for j in range(nr - c, 0)] + [cl]
    return (
        Ledger(f"X_L(m={m},n={n},r={r},c={c})", x_blocks),
        Ledger(f"Y_L(m={m},n={n},r={r},c={c})", y_blocks),
    )


# --- Gram matrices -----------------------------------------------------------


def _det(rows) -> Fraction:
    a = [[Fraction(x) for x in row] for row in rows]
    size = len(a)
    det = Fraction(1)
    for col in range(size):
        pivot = next((i for i in range(col, size) if a[i][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for i in range(col + 1, size):
            f = a[i][col] / a[col][col]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return det


@dataclass
class GramMatrix:
    labels: list
    entries: list  # entries[i][j] = chi(E_i, E_j)

    def __post_init__(self):
        size = len(self.labels)
        if len(self.entries) != size or any(len(row) != size for row in self.entries):
            raise ValueError("Gram matrix must be square and match its labels")

    @property
    def size(self) -> int:
        return len(self.labels)

    def is_unitriangular(self) -> bool:
        for i, row in enumerate(self.entries):
            if row[i] != 1:
                return False
            if any(row[j] for j in range(i)):
                return False
        return True

    def determinant(self) -> int:
        return int(_det(self.entries))

    def submatrix(self, idx) -> "GramMatrix":
        idx = list(idx)
        return GramMatrix([self.labels[i] for i in idx], [[self.entries[i][j] for j in idx] for i in idx])

    def to_dict(self):
        return {"labels": [_label_json(x) for x in self.labels], "entries": [list(r) for r in self.entries]}

    def to_text(self) -> str:
        names = [_label_text(x) for x in self.labels]
        width = max(len(s) for s in names)
        cell = max(len(str(x)) for row in self.entries for x in row)
        lines = []
        for name, row in zip(names, self.entries):
            lines.append(f"{name:<{width}} | " + " ".join(f"{x:>{cell}}" for x in row))
        return "\n".join(lines)

    def __eq__(self, other):
        if not isinstance(other, GramMatrix):
            return NotImplemented
        return self.labels == other.labels and self.entries == other.entries


def _label_text(label) -> str:
    if isinstance(label, tuple):
        return f"O({label[0]},{label[1]})"
    return str(label)


def _label_json(label):
    return list(label) if isinstance(label, tuple) else label


def gram_matrix(params: HPDParams, collection) -> GramMatrix:
    """chi(O(a_i H + b_i P), O(a_j H + b_j P)) on the section, one value per twist difference."""
    collection = [tuple(x) for x in collection]
    if not collection:
        raise ValueError("collection must be nonempty")
    cache = {}
    entries = []
    for a1, b1 in collection:
        row = []
        for a2, b2 in collection:
            key = (a2 - a1, b2 - b1)
            if key not in cache:
                cache[key] = euler_pairing(params, 0, 0, *key)
            row.append(cache[key])
        entries.append(row)
    return GramMatrix(collection, entries)


def mutate(g: GramMatrix, i: int, direction: str) -> GramMatrix:
    """Mutate the exceptional pair (E_i, E_{i+1}).

    left:  (E_i, E_{i+1}) -> (L, E_i)     with [L] = chi(E_i, E_{i+1}) [E_i] - [E_{i+1}]
    right: (E_i, E_{i+1}) -> (E_{i+1}, R) with [R] = chi(E_i, E_{i+1}) [E_{i+1}] - [E_i]
    """
    if direction not in ("left", "right"):
        raise MutationError(f"direction must be 'left' or 'right', got {direction!r}")
    if not 0 <= i < g.size - 1:
        raise MutationError(f"index {i} out of range for a collection of size {g.size}")
    if not g.is_unitriangular():
        raise MutationError("input Gram matrix is not unitriangular")
    G = g.entries
    chi = G[i][i + 1]
    size = g.size
    # rows of T express the new objects in the old ones; new Gram = T G T^t
    T = {k: {k: 1} for k in range(size)}
    a, b = g.labels[i], g.labels[i + 1]
    labels = list(g.labels)
    if direction == "left":
        T[i] = {i: chi, i + 1: -1}
        T[i + 1] = {i: 1}
        labels[i], labels[i + 1] = f"L_{_label_text(a)}({_label_text(b)})", a
    else:
        T[i] = {i + 1: 1}
        T[i + 1] = {i + 1: chi, i: -1}
        labels[i], labels[i + 1] = b, f"R_{_label_text(b)}({_label_text(a)})"

    def pair(row, col):
        return sum(x * y * G[p][q] for p, x in T[row].items() for q, y in T[col].items())

    entries = [list(r) for r in G]
    for k in range(size):
        for j in (i, i + 1):
            entries[k][j] = pair(k, j)
            entries[j][k] = pair(j, k)
    out = GramMatrix(labels, entries)
    if not out.is_unitriangular():
        raise MutationError("mutation broke unitriangularity")
    return out


# --- residual categories of determinantal hypersurfaces ---------------------


def _chi_hypersurface(a: int, d: int, k: int) -> int:
    """chi(O_Z(a)) for a degree-d hypersurface Z in P^k."""

    def chi_pk(t):
        num = 1
        for i in range(1, k + 1):
            num *= t + i
        return num // factorial(k)

    return chi_pk(a) - chi_pk(a - d)


@dataclass
class ReplayReport:
    d: int
    k: int
    initial: GramMatrix
    final: GramMatrix
    steps: int
    first_block: list
    residual_count: int
    initial_unitriangular: bool
    normal_form_reached: bool
    first_block_matches_direct: bool
    first_block_matches_hypersurface: bool

    @property
    def ok(self) -> bool:
        return (
            self.initial_unitriangular
            and self.normal_form_reached
            and self.first_block_matches_direct
            and self.first_block_matches_hypersurface
        )


def replay_residual_mutations(d: int, k: int) -> ReplayReport:
    """Replay the rightward mutations that isolate the pulled-back twists O(-t).

    On Y_L for (m, n, r, c) = (d, d, 1, k + 1) the collection is the
    concatenation over j = -(k-d)..0 of the blocks (jH, jH + Q, ..., jH + (d-1)Q).
    Labels are (a, b) meaning aH + bQ; the diagonal twists are (j, 0),
    pulled back from O_Z(j). Every other object is mutated to the right
    past the later diagonal ones.
    """
    if d < 2 or d > k:
        raise InvalidParamsError(f"need 2 <= d <= k, got d={d}, k={k}")
    params = HPDParams(d, d, 1, k + 1, "Y")
    collection = [(j, s) for j in range(d - k, 1) for s in range(d)]
    g0 = gram_matrix(params, collection)
    initial_ok = g0.is_unitriangular()
    is_diag = [s == 0 for _, s in collection]
    g = g0
    steps = 0
    moved = True
    while moved:
        moved = False
        for i in range(g.size - 1):
            if not is_diag[i] and is_diag[i + 1]:
                g = mutate(g, i, "right")
                is_diag[i], is_diag[i + 1] = True, False
                steps += 1
                moved = True
    nd = k - d + 1
    first = list(g.labels[:nd])
    target = [(t, 0) for t in range(d - k, 1)]
    normal = first == target and all(is_diag[:nd]) and not any(is_diag[nd:])
    direct = gram_matrix(params, target)
    first_block = g.submatrix(range(nd))
    hyper = [[_chi_hypersurface(b[0] - a[0], d, k) for b in target] for a in target]
    return ReplayReport(
        d=d,
        k=k,
        initial=g0,
        final=g,
        steps=steps,
        first_block=first,
        residual_count=g.size - nd,
        initial_unitriangular=initial_ok,
        normal_form_reached=normal,
        first_block_matches_direct=first_block.entries == direct.entries,
        first_block_matches_hypersurface=first_block.entries == hyper,
    )


# --- Hochschild Euler characteristic additivity -----------------------------


@dataclass
class AdditivityReport:
    m: int
    n: int
    r: int
    c: int
    chi_top_x: int
    chi_top_y: int
    lhs: int
    rhs: int
    passed: bool

    def to_dict(self):
        return {
            "m": self.m,
            "n": self.n,
            "r": self.r,
            "c": self.c,
            "chi_top_x": self.chi_top_x,
            "chi_top_y": self.chi_top_y,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "pass": self.passed,
        }


def hh_additivity_check(m: int, n: int, r: int, c: int) -> AdditivityReport:
    """chi_top(Y_L) - chi_top(X_L) against (c - nr) binom(m, r).

    Assumes both sections are smooth of expected dimension (generic L).
    """
    px = HPDParams(m, n, r, c, "X")
    py = px.with_side("Y")
    if px.dim_xl < 0 or py.dim_yl < 0:
        raise InvalidParamsError(f"empty section for (m,n,r,c)=({m},{n},{r},{c})")
    x = euler_char_top(px)
    y = euler_char_top(py)
    lhs = y - x
    rhs = (c - n * r) * comb(m, r)
    return AdditivityReport(m, n, r, c, x, y, lhs, rhs, lhs == rhs)
