"""Exact and finite-field bookkeeping for homological projective duality of determinantal varieties."""

__version__ = "0.1.0"

from .chow import SchubertElement, TowerElement, grass_ring, tower_ring  # noqa: E402
from .classify import classify, residual_counts, segre_row, sweep  # noqa: E402
from .invariants import (  # noqa: E402
    DivisorClass,
    HPDParams,
    canonical_class,
    curve_genus,
    degree_section,
    euler_char_top,
    euler_pairing,
    nonisomorphism_scan,
)

__all__ = [
    "DivisorClass",
    "HPDParams",
    "SchubertElement",
    "TowerElement",
    "canonical_class",
    "classify",
    "curve_genus",
    "degree_section",
    "euler_char_top",
    "euler_pairing",
    "grass_ring",
    "nonisomorphism_scan",
    "residual_counts",
    "segre_row",
    "sweep",
    "tower_ring",
]
