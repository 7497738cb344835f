"""How close simplicial depth comes to tau * C(n-1, d) across families."""
import argparse
import math

from depthkit.datagen import FAMILIES, GenSpec, gen
from depthkit.exact import brute_force, sweep_2d, tukey_depth


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=40)
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--trials", type=int, default=10)
    args = ap.parse_args()

    n, d = args.n, args.d
    print(f"{'family':>22} {'min':>7} {'mean':>7} {'max':>7}")
    for fam in FAMILIES:
        if fam == "figure1" and d != 2:
            continue
        ratios = []
        for s in range(args.trials):
            m = max(1, n // (d + 1)) if "cluster" in fam else None
            size = max(1, n // (d + 1)) if "cluster" in fam else n
            inst = gen(GenSpec(fam, size, d=d, m=m, seed=s))
            N = inst.points.n
            sigma = (sweep_2d if d == 2 else brute_force)(inst.points, inst.q).value
            tau = tukey_depth(inst.points, inst.q).value
            if tau:
                ratios.append(sigma / (tau * math.comb(N - 1, d)))
        if ratios:
            print(f"{fam:>22} {min(ratios):>7.3f} {sum(ratios) / len(ratios):>7.3f} "
                  f"{max(ratios):>7.3f}")


if __name__ == "__main__":
    main()
