#!/usr/bin/env python3
"""Tabulate empirical lattice-count remainders against their conjectured scales.

For a box and a lambda grid, prints T(lambda) minus the ellipsoid volume term
and the plane count minus the ellipse area term, each normalised by
lambda^(exponent/2) with the best known remainder exponents.  The suprema of
these columns are the empirical analogues of the unknown constants in the
remainder bounds; they are descriptive only.

    python3 scripts/estimate_remainders.py --a1 1 --a2 1 --lam-max 20000 --points 60
"""

import argparse
import math
import sys

import numpy as np

from eigenbox.lattice import RemainderExponents, count_full, count_plane
from eigenbox.spectrum import PI_SQUARED, Cuboid


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--a1", type=float, default=1.0)
    parser.add_argument("--a2", type=float, default=1.0)
    parser.add_argument("--lam-max", type=float, default=2.0e4)
    parser.add_argument("--points", type=int, default=50)
    args = parser.parse_args()

    cuboid = Cuboid.from_sides(args.a1, args.a2)
    exps = RemainderExponents()
    print("lambda,T,volume_term,sphere_ratio,T_x1,area_term,circle_ratio")
    c_hat = d_hat = 0.0
    for lam in np.linspace(args.lam_max / args.points, args.lam_max, args.points):
        lam = float(lam)
        t = count_full(cuboid, lam)
        vol = 4.0 / (3.0 * PI_SQUARED) * lam**1.5
        sphere_ratio = abs(t - vol) / lam ** (exps.beta / 2.0)
        t1 = count_plane(cuboid, lam, 1)
        area = cuboid.a2 * cuboid.a3 / math.pi * lam
        circle_ratio = abs(t1 - area) / lam ** (exps.theta / 2.0)
        c_hat = max(c_hat, sphere_ratio)
        d_hat = max(d_hat, circle_ratio)
        print(
            f"{lam:.6g},{t},{vol:.6g},{sphere_ratio:.6g},{t1},{area:.6g},{circle_ratio:.6g}"
        )
    print(
        f"empirical C ~ {c_hat:.6g} (beta = {exps.beta:.6g}), "
        f"D ~ {d_hat:.6g} (theta = {exps.theta:.6g})",
        file=sys.stderr,
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
