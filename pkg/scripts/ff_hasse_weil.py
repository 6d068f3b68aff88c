#!/usr/bin/env python3
"""Point counts of random determinantal curves against the Hasse-Weil bound."""

import argparse
import math
import sys

from hpdet.ffverify import hasse_weil_sample


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=4)
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--c", type=int, default=3)
    ap.add_argument("--primes", default="5,7,11")
    ap.add_argument("--seeds", type=int, default=5)
    args = ap.parse_args()

    fails = 0
    print("p,seed,genus,points,deviation,bound,smooth,ok")
    for p in (int(x) for x in args.primes.split(",")):
        for seed in range(args.seeds):
            rep = hasse_weil_sample(args.m, args.n, args.c, p, seed)
            bound = 2 * rep.genus * math.sqrt(p)
            print(f"{p},{seed},{rep.genus},{rep.points},{rep.points - p - 1},{bound:.2f},{rep.smooth},{rep.bound_ok}")
            fails += not rep.bound_ok
    return 1 if fails else 0


if __name__ == "__main__":
    sys.exit(main())
