#!/usr/bin/env python3
"""Degrees and the non-isomorphism certificate for a pair of equal-dimension sections."""

import argparse

from hpdet.classify import classify
from hpdet.invariants import HPDParams, degree_section, nonisomorphism_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("m", type=int, nargs="?", default=5)
    ap.add_argument("n", type=int, nargs="?", default=7)
    ap.add_argument("r", type=int, nargs="?", default=3)
    ap.add_argument("c", type=int, nargs="?", default=21)
    args = ap.parse_args()

    rep = classify(args.m, args.n, args.r, args.c)
    print(f"(m,n,r,c) = {rep.params}: {rep.functor_direction}, dims {rep.dim_xl}/{rep.dim_yl}")
    print(f"K_X = {rep.canonical_x.to_dict()}  K_Y = {rep.canonical_y.to_dict()}")
    for side in "XY":
        print(f"deg {side}_L = {degree_section(HPDParams(args.m, args.n, args.r, args.c, side))}")

    scan = nonisomorphism_scan(args.m, args.n, args.r, args.c)
    terms = " + ".join(f"{q}a^{k}" for k, q in enumerate(scan.deg_X_poly_in_a) if q)
    print(f"(H + aP)^{scan.dim} on X_L = {terms}")
    print(f"target deg Y_L = {scan.deg_Y}, Cauchy bound {scan.cauchy_bound}")
    if scan.identically_equal:
        print("degrees agree identically in a")
    elif scan.integer_solutions:
        print(f"integer solutions: {scan.integer_solutions}")
    else:
        print("no integer a makes the two top self-intersections equal")


if __name__ == "__main__":
    main()
