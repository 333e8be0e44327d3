#!/usr/bin/env python3
"""Benchmark the compiled kernels against their pure-python twins.

Two loops dominate the package's runtime: the exhaustive embedding oracle
(negative instances force full exploration) and the 4-cycle scan.  Both
exist twice with identical semantics; this script toggles the backend and
times the public entry points on the same instances, so marshalling and
caching costs are included in what is measured.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import oritree as ot
from oritree import _native


def with_backend(pure, fn):
    old = _native.FORCE_PURE
    _native.FORCE_PURE = pure
    try:
        return fn()
    finally:
        _native.FORCE_PURE = old


def bench(label, pure, fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = with_backend(pure, fn)
        best = min(best, time.perf_counter() - t0)
    print(f"  {label:<22} {best * 1000:9.2f} ms")
    return best, result


def compare(name, fn, repeat):
    print(name)
    t_py, r_py = bench("pure-python", True, fn, repeat)
    t_cy, r_cy = bench("cython", False, fn, repeat)
    assert r_py == r_cy, "backends disagree"
    print(f"  speedup x{t_py / t_cy:.1f}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if not _native.HAVE_NATIVE:
        print("compiled fast path not built; nothing to compare")
        return

    for k in (8, 10):
        T = ot.gen_random_tree(k, "spider", 0)
        D = ot.gen_two_clique_host(k)
        compare(f"== oracle, exhaustive negative: spider k={k} vs "
                f"two-clique host (n={D.n})",
                lambda T=T, D=D: ot.oracle_embed(T, D).nodes_expanded,
                args.repeat)

    host = ot.gen_girth6_digon_host(3)
    trees = []
    for k in range(1, 6):
        trees.extend(ot.enumerate_oriented_trees(k).trees)
    compare(f"== oracle, catalog sweep: {len(trees)} trees (k<=5) vs one "
            f"26-vertex host",
            lambda: [ot.oracle_embed(T, host).decision for T in trees],
            args.repeat)

    mixed = [(ot.gen_random_tree(5, "any", i),
              ot.gen_random_digraph(12, 40, "none", i)) for i in range(300)]
    compare("== oracle, 300 mixed random instances (fresh host each)",
            lambda: [ot.oracle_embed(T, D).decision for T, D in mixed],
            args.repeat)

    hosts = [ot.gen_girth6_digon_host(4)]
    hosts += [ot.gen_random_digraph(60, 400, "none", i) for i in range(20)]

    def scans():
        return [(ot.is_c4_free(D), ot.is_c4_star_free(D)) for D in hosts]

    def reset_and_scan():
        for D in hosts:
            D._kernel_cache.clear()
        return scans()

    compare("== 4-cycle scan, cold cache (marshalling included)",
            reset_and_scan, args.repeat)
    compare("== 4-cycle scan, warm cache", scans, args.repeat)


if __name__ == "__main__":
    main()
