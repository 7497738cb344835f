"""Share of half-sampling runs within a relative error band on figure1.

Sweeps the heavy-point constant C for the heavy-aware estimator and reports the
naive estimator alongside, both against the exact sweep.
"""
import argparse

from depthkit.approx import half_sample_estimator
from depthkit.datagen import GenSpec, gen
from depthkit.exact import sweep_2d


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--eps", type=float, default=0.25)
    ap.add_argument("--runs", type=int, default=100)
    ap.add_argument("--band", type=float, default=0.15)
    ap.add_argument("--C", type=float, nargs="+", default=[1, 2, 3, 4, 6])
    args = ap.parse_args()

    inst = gen(GenSpec("figure1", args.n, seed=args.seed))
    exact = sweep_2d(inst.points, inst.q).value
    print(f"figure1 n={args.n} seed={args.seed} sigma={exact}")
    print(f"{'variant':>12} {'within':>7} {'mean_rel_err':>13}")

    def share(**kw):
        errs = [abs(half_sample_estimator(inst.points, inst.q, args.eps, seed=s, **kw).value
                    - exact) / exact for s in range(args.runs)]
        return sum(e <= args.band for e in errs), sum(errs) / len(errs)

    for C in args.C:
        k, m = share(C=C)
        print(f"{'C=' + format(C, 'g'):>12} {k:>4}/{args.runs} {m:>13.4f}")
    k, m = share(naive=True)
    print(f"{'naive':>12} {k:>4}/{args.runs} {m:>13.4f}")


if __name__ == "__main__":
    main()
