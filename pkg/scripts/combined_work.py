"""Work of the combined estimator as n grows, with the n^(d/2+1) reference."""
import argparse
import math

from depthkit.approx import combined, node_threshold
from depthkit.datagen import GenSpec, gen


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--eps", type=float, default=0.25)
    ap.add_argument("--seeds", type=int, default=3)
    args = ap.parse_args()

    d = args.d
    print(f"{'n':>6} {'threshold':>10} {'mean_work':>12} {'work/ref':>9} {'method':>12}")
    for n in args.sizes:
        works, methods = [], set()
        for s in range(args.seeds):
            inst = gen(GenSpec("uniform_ball", n, d=d, seed=s))
            r = combined(inst.points, inst.q, args.eps, seed=s)
            works.append(r.work)
            methods.add(r.method.value)
        mean = sum(works) / len(works)
        ref = n ** (d / 2 + 1) * math.log(n)
        print(f"{n:>6} {node_threshold(n, d):>10} {mean:>12.0f} {mean / ref:>9.3f} "
              f"{','.join(sorted(methods)):>12}")


if __name__ == "__main__":
    main()
