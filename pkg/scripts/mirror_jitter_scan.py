"""Mach-Zehnder visibility against retroreflector position spread."""

import argparse

import numpy as np

from whichpath import interferometer as mz


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lambda0", type=float, default=0.5)
    ap.add_argument("--n-mc", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--points", type=int, default=9)
    args = ap.parse_args()

    k = 2 * np.pi / args.lambda0
    print("sigma/(lambda/4pi)   V_mc      stderr    exp(-2k^2 s^2)")
    for m in np.linspace(0, 3, args.points):
        sigma = m * args.lambda0 / (4 * np.pi)
        v, se = mz.mirror_jitter_visibility(sigma, args.lambda0, args.n_mc, args.seed, return_stderr=True)
        print(f"{m:18.3f}  {v:8.5f}  {se:8.5f}  {np.exp(-2 * k**2 * sigma**2):8.5f}")

    print("\nqwp angle spread (rad)   V_mc")
    for dphi in (0.0, 0.05, 0.2, 0.5, 1.0, 3.0):
        print(f"{dphi:22.2f}  {mz.qwp_jitter_visibility(dphi, args.n_mc, args.seed):8.5f}")


if __name__ == "__main__":
    main()
