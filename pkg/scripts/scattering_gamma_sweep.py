"""Two-particle scattering: fringe visibility as the marker overlap is varied."""

import argparse

import numpy as np

from whichpath import scattering as sc


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d", type=float, default=5.0)
    ap.add_argument("--lambda0", type=float, default=0.5)
    ap.add_argument("--r0", type=float, default=1e4)
    args = ap.parse_args()

    geom = sc.ScatterGeometry(args.d, args.lambda0, args.r0)
    print(f"fringe period {geom.fringe_period:.1f} um")
    print("gamma   V(LCP)   V(RCP)")
    for gamma in np.linspace(0, 1, 6):
        ov = sc.WhichPathOverlap(gamma)
        v_minus = sc.pattern_visibility(sc.screen_pattern(geom, sc.ScatterChannel.MINUS, ov))
        plus_ov = sc.channel_overlap(sc.ScatterChannel.PLUS, ov)
        v_plus = sc.pattern_visibility(sc.screen_pattern(geom, sc.ScatterChannel.PLUS, plus_ov))
        print(f"{gamma:5.2f}  {v_minus:7.4f}  {v_plus:7.4f}")


if __name__ == "__main__":
    main()
