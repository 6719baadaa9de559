"""Random checks of the commutator uncertainty bound and the energy-time relation."""

import argparse

import numpy as np

from whichpath import uncertainty as unc


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    res = unc.random_suite(args.n, args.seed)
    slack = np.array([r.lhs - r.rhs for r in res])
    print(f"{args.n} random cases, all hold: {all(r.holds for r in res)}, min slack {slack.min():.3e}")

    x, p = unc.oscillator_xp(40)
    for k in range(4):
        psi = unc.fock_state(40, k)
        print(f"fock |{k}>  dx dp = {unc.std_dev(x, psi) * unc.std_dev(p, psi):.10f}")

    rng = np.random.default_rng(args.seed)
    worst = np.inf
    for _ in range(args.n // 2):
        n = int(rng.integers(2, 9))
        A, H = unc.random_hermitian(n, rng), unc.random_hermitian(n, rng)
        r = unc.energy_time_check(A, H, unc.random_state(n, rng))
        worst = min(worst, r.delta_E * r.delta_t)
    print(f"energy-time: smallest dE dt = {worst:.6f} (bound 0.5)")


if __name__ == "__main__":
    main()
