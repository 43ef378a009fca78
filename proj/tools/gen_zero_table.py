#!/usr/bin/env python3
"""Write a table of Riemann zeta zero ordinates, one per line.

Offline helper used to produce the files under data/. The build never runs it.
Zeros come from Arb (python-flint); each ordinate is then checked with an
independent mpmath evaluation of |zeta(1/2 + i*tau)|.

    python3 tools/gen_zero_table.py --count 10000 --out data/zeta_zeros_10000.txt
"""
import argparse
import sys

import flint
import mpmath


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--check-every", type=int, default=1,
                    help="validate every k-th ordinate with mpmath")
    args = ap.parse_args()

    flint.ctx.prec = 80
    mpmath.mp.dps = 30
    zeros = flint.acb.zeta_zeros(1, args.count)
    ordinates = []
    for idx, z in enumerate(zeros):
        tau = z.imag.mid()
        text = tau.str(18, radius=False)
        ordinates.append(text)
        if idx % args.check_every == 0:
            val = abs(mpmath.zeta(mpmath.mpc(0.5, mpmath.mpf(text))))
            if val > 1e-6:
                sys.exit(f"zero {idx + 1}: |zeta| = {val}")
    prev = 0.0
    for text in ordinates:
        v = float(text)
        if not v > prev:
            sys.exit("ordinates not strictly increasing")
        prev = v
    with open(args.out, "w") as fh:
        fh.write(f"# first {args.count} ordinates of nontrivial Riemann zeta zeros\n")
        every = "each ordinate" if args.check_every == 1 else f"every {args.check_every}th ordinate"
        fh.write(f"# checked ({every}): |zeta(1/2 + i*tau)| < 1e-6 (mpmath)\n")
        for text in ordinates:
            fh.write(text + "\n")


if __name__ == "__main__":
    main()
