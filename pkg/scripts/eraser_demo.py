"""Double slit with a half-wave plate on one slit, before and after a polarizer."""

import argparse

import numpy as np

from whichpath import doubleslit as ds
from whichpath.jones import JonesVector


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--w", type=float, default=10.0)
    ap.add_argument("--d", type=float, default=50.0)
    ap.add_argument("--lambda0", type=float, default=0.5)
    ap.add_argument("--L", type=float, default=1e5)
    args = ap.parse_args()

    geom = ds.SlitGeometry(args.w, args.d, args.lambda0, args.L)
    diag = JonesVector.linear(np.pi / 4)
    plain = ds.screen_profile(geom, ds.SlitInsert.NONE, diag)
    marked = ds.screen_profile(geom, ds.SlitInsert.BIREFRINGENT_HWP, diag)
    print(f"fringe period  {geom.fringe_period:.3f} um")
    print(f"no insert      V = {ds.visibility(plain):.6f}")
    print(f"hwp insert     V = {ds.visibility(marked):.2e}")
    for deg in (0, 30, 45, 90):
        erased = ds.apply_eraser(marked, np.deg2rad(deg))
        centre = erased.intensity[len(erased.xs) // 2] / erased.intensity.max()
        print(f"polarizer {deg:3d}  V = {ds.visibility(erased):.6f}  I(0)/Imax = {centre:.3f}")


if __name__ == "__main__":
    main()
