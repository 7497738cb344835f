"""depthkit command line: generate, depth, verify, bench."""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import approx, bfs, exact
from .datagen import FAMILIES, GenSpec, gen
from .geom import DegeneracyError, InputError, RefusalError
from .io import ResultRecord, format_points, read_points, records_to_csv
from .verify import Tally, check_instance

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_DEGENERATE, EXIT_REFUSED = 0, 2, 3, 4, 5

METHODS = ("brute", "sweep2d", "projected", "bfs", "mc", "combined", "halfsample",
           "halfsample-naive", "approx3d", "tukey")

# method -> allowed dimensions (None means any)
_DIMS = {"sweep2d": {2}, "halfsample": {2}, "halfsample-naive": {2},
         "approx3d": {3}, "tukey": {2, 3, 4}, "projected": None}


class MethodMismatch(Exception):
    pass


def run_method(method, P, q, *, eps=0.25, delta=1.0, m=None, seed=0, C=1.0,
               node_limit=None, workers=1):
    """Dispatch one method; returns (value, eps, work)."""
    dims = _DIMS.get(method)
    if dims is not None and P.dim not in dims:
        raise MethodMismatch(f"method {method} does not support d={P.dim}")
    if method == "projected" and P.dim < 2:
        raise MethodMismatch("projected needs d >= 2")
    if method == "brute":
        r = exact.brute_force(P, q, workers=workers)
    elif method == "sweep2d":
        r = exact.sweep_2d(P, q)
    elif method == "projected":
        r = exact.exact_projected(P, q)
    elif method == "bfs":
        out = bfs.count_via_bfs(P, q, node_limit=node_limit)
        return out.count, None, out.frontier_work
    elif method == "mc":
        mm = m if m is not None else approx.node_threshold(P.n, P.dim)
        r = approx.monte_carlo(P, q, approx.MonteCarloParams(eps, mm, delta, seed), workers)
    elif method == "combined":
        r = approx.combined(P, q, eps, delta, seed, workers)
    elif method in ("halfsample", "halfsample-naive"):
        r = approx.half_sample_estimator(P, q, eps, C, seed, naive=method.endswith("naive"))
    elif method == "approx3d":
        r = approx.approx_3d(P, q, eps, seed)
    elif method == "tukey":
        t = exact.tukey_depth(P, q)
        return t.value, None, P.n
    else:
        raise MethodMismatch(f"unknown method {method}")
    return r.value, r.eps, r.work


def _record(method, value, eps, seed, P, work, wall_ms, instance_id):
    return ResultRecord(method, value, eps, seed, P.n, P.dim, int(work), wall_ms, instance_id)


def _emit(records, as_csv, out=None):
    text = records_to_csv(records) if as_csv else "\n".join(r.to_json() for r in records) + "\n"
    if out:
        with open(out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _spec_from(args) -> GenSpec:
    return GenSpec(family=args.family, n=args.n, d=args.d, m=args.m, seed=args.seed,
                   perturb_scale=args.perturb)


def cmd_generate(args) -> int:
    inst = gen(_spec_from(args))
    text = format_points(inst.points, inst.q)
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.meta:
        with open(args.meta, "w", encoding="ascii", newline="\n") as fh:
            json.dump(inst.meta, fh, sort_keys=True, indent=1)
            fh.write("\n")
    return EXIT_OK


def cmd_depth(args) -> int:
    P, q = read_points(args.file)
    iid = args.instance_id or os.path.basename(args.file)
    t0 = time.perf_counter()
    value, eps, work = run_method(args.method, P, q, eps=args.eps, delta=args.delta, m=args.m,
                                  seed=args.seed, C=args.C, node_limit=args.node_limit,
                                  workers=args.workers)
    wall = round((time.perf_counter() - t0) * 1e3, 3) if args.timing else None
    _emit([_record(args.method, value, eps, args.seed, P, work, wall, iid)], args.csv)
    return EXIT_OK


def cmd_verify(args) -> int:
    tally = Tally()
    if args.file:
        P, q = read_points(args.file)
        check_instance(P, q, tally)
    else:
        if not args.family or not args.n:
            raise InputError("verify needs a FILE or --family and --n")
        for t in range(args.trials):
            spec = GenSpec(args.family, args.n, args.d, args.m, args.seed + t, args.perturb)
            try:
                inst = gen(spec)
            except RuntimeError:
                tally.instances += 1
                tally.degenerate += 1
                continue
            check_instance(inst.points, inst.q, tally)
    print(tally.table(args.strict_parity))
    return 1 if tally.failed(args.strict_parity) else EXIT_OK


def cmd_bench(args) -> int:
    methods = [m for m in (args.methods or "").split(",") if m]
    if not methods:
        print("bench: --methods must name at least one method", file=sys.stderr)
        return EXIT_USAGE
    for m in methods:
        if m not in METHODS:
            print(f"bench: unknown method {m}", file=sys.stderr)
            return EXIT_USAGE
    sizes = [int(s) for s in args.sizes.split(",") if s]
    jobs = []
    for n in sizes:
        inst = gen(GenSpec(args.family, n, args.d, args.m, args.seed, args.perturb))
        iid = f"{args.family}-n{n}-d{args.d}-s{args.seed}"
        for m in methods:
            for t in range(args.trials):
                jobs.append((iid, inst, m, args.seed + t))

    def run(job):
        iid, inst, m, s = job
        t0 = time.perf_counter()
        value, eps, work = run_method(m, inst.points, inst.q, eps=args.eps, delta=args.delta,
                                      m=None, seed=s, C=args.C)
        wall = round((time.perf_counter() - t0) * 1e3, 3) if args.timing else None
        return _record(m, value, eps, s, inst.points, work, wall, iid)

    if args.workers > 1:
        with ThreadPoolExecutor(max_workers=args.workers) as ex:
            records = list(ex.map(run, jobs))
    else:
        records = [run(j) for j in jobs]
    records.sort(key=lambda r: (r.instance_id, r.method, r.seed))
    _emit(records, True, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="depthkit", description="Simplicial depth tools.")
    sub = p.add_subparsers(dest="command", required=True)

    def gen_flags(sp, required=True):
        sp.add_argument("--family", choices=FAMILIES, required=required)
        sp.add_argument("--n", type=int, required=required)
        sp.add_argument("--d", type=int, default=2)
        sp.add_argument("--m", type=int, default=None)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--perturb", type=float, default=1e-3)

    g = sub.add_parser("generate", help="write a generated instance")
    gen_flags(g)
    g.add_argument("--out")
    g.add_argument("--meta", help="path for the metadata JSON sidecar")
    g.set_defaults(func=cmd_generate)

    d = sub.add_parser("depth", help="compute depth of q in a point file")
    d.add_argument("file")
    d.add_argument("--method", choices=METHODS, default="brute")
    d.add_argument("--eps", type=float, default=0.25)
    d.add_argument("--delta", type=float, default=1.0)
    d.add_argument("--m", type=int, default=None)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--C", type=float, default=1.0)
    d.add_argument("--node-limit", type=int, default=None)
    d.add_argument("--workers", type=int, default=1)
    d.add_argument("--csv", action="store_true")
    d.add_argument("--instance-id")
    d.add_argument("--timing", action="store_true", help="fill wall_ms")
    d.set_defaults(func=cmd_depth)

    v = sub.add_parser("verify", help="cross-check methods and identities")
    v.add_argument("file", nargs="?")
    gen_flags(v, required=False)
    v.add_argument("--trials", type=int, default=10)
    v.add_argument("--strict-parity", action="store_true",
                   help="let the stated parity rule decide the exit status")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="run methods over generated sizes, CSV out")
    gen_flags(b, required=False)
    b.add_argument("--sizes", required=True)
    b.add_argument("--methods", default="")
    b.add_argument("--trials", type=int, default=1)
    b.add_argument("--eps", type=float, default=0.25)
    b.add_argument("--delta", type=float, default=1.0)
    b.add_argument("--C", type=float, default=1.0)
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--timing", action="store_true")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "bench" and not args.family:
        parser.error("bench needs --family")
    try:
        return args.func(args)
    except MethodMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except DegeneracyError as exc:
        print(f"degenerate input: {exc}; indices {list(exc.indices)}", file=sys.stderr)
        return EXIT_DEGENERATE
    except RefusalError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
