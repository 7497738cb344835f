"""Observed parity of simplicial depth against the closed-form rule."""
import argparse
from collections import Counter

from depthkit.datagen import GenSpec, gen
from depthkit.exact import brute_force, parity_forced, parity_of, parity_predicted


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 5, 6, 7, 8, 9, 10, 11, 12])
    ap.add_argument("--trials", type=int, default=20)
    args = ap.parse_args()

    print(f"{'d':>2} {'n':>3} {'rule':>5} {'forced':>6} {'even':>5} {'odd':>5}")
    for d in args.d:
        for n in args.sizes:
            if n < d + 1:
                continue
            insts = [gen(GenSpec("uniform_ball", n, d=d, seed=s)) for s in range(args.trials)]
            seen = Counter(parity_of(brute_force(i.points, i.q).value) for i in insts)
            print(f"{d:>2} {n:>3} {parity_predicted(n, d):>5} {parity_forced(n, d) or '-':>6} "
                  f"{seen['even']:>5} {seen['odd']:>5}")


if __name__ == "__main__":
    main()
