#!/usr/bin/env python3
"""Monte-Carlo convergence of half-space barycenters to the closed form.

For a standard Gaussian and a fan of half-spaces, estimates the
barycenter from growing sample sizes and prints the observed error next
to the 4 sigma / sqrt(kept) prediction. The error should shrink like
1/sqrt(N) and stay inside the band essentially always.

Usage: python scripts/barycenter_convergence.py --seed 3
"""

import argparse
import math

import numpy as np

from liftzonoid import Direction, GaussianMeasure, HalfSpace, task_stream


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=3)
    ap.add_argument("--offsets", default="-1.0,0.0,1.0")
    ap.add_argument("--sizes", default="1000,10000,100000,1000000")
    args = ap.parse_args()

    mu = GaussianMeasure.standard(2)
    u = Direction.of([0.6, 0.8])
    print(f"{'offset':>7} {'N':>8} {'kept':>8} {'error':>12} {'4s/sqrt(k)':>12} inside")
    for off in (float(t) for t in args.offsets.split(",")):
        hs = HalfSpace(u, off)
        exact = mu.halfspace_barycenter(hs)
        for task, n in enumerate(int(t) for t in args.sizes.split(",")):
            z = task_stream(args.seed, 17 * task + int(10 * off) + 50).standard_normal((n, 2))
            kept = z[z @ u.vec >= off]
            est = kept.mean(axis=0)
            err = float(np.linalg.norm(est - exact))
            band = 4.0 * float(kept.std(axis=0, ddof=1).max()) / math.sqrt(len(kept))
            print(
                f"{off:7.2f} {n:8d} {len(kept):8d} {err:12.3e} {band:12.3e} "
                f"{'yes' if err <= 2 * band else 'NO'}"
            )


if __name__ == "__main__":
    main()
