"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--json]

Each workload runs the real library entry point with the kernel module
swapped in, so the numbers include the Python glue around each kernel.
"""
from __future__ import annotations

import argparse
import json
import random
import statistics
import time

from semwidth import cover, kernels
from semwidth.cq import parse_query
from semwidth.decomposition import fhw_exact, ghw_exact
from semwidth.functions import table_function, validate_function
from semwidth.generators import gen_inflation, gen_parity_grid, gen_random_cq
from semwidth.homomorphism import compute_core, find_homomorphism
from semwidth.hypergraph import Hypergraph, hypergraph_of


def _cycle(n, prefix):
    atoms = []
    for i in range(n):
        a, b = f"{prefix}{i}", f"{prefix}{(i + 1) % n}"
        atoms += [f"R({a},{b})", f"R({b},{a})"]
    return parse_query(f"ans() <- {', '.join(atoms)}.")


ODD_11, ODD_13 = _cycle(11, "x"), _cycle(13, "y")


def _no_homomorphism():
    # an odd cycle has no homomorphism into a longer odd cycle: full search
    assert find_homomorphism(ODD_11, ODD_13) is None


def _cores():
    for q in (gen_parity_grid(4, 4), gen_parity_grid(3, 5)):
        compute_core(q)
    for seed in range(20):
        compute_core(gen_inflation(gen_random_cq(seed, 6, 6, 3, 2), 6, seed))


def _elimination():
    rng = random.Random(5)
    n = 14
    adj = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < 0.3:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    bags = kernels.elimination_bags(n, adj)
    rank = [bin(m).count("1") for m in range(1 << n)]
    kernels.elimination_dp(n, bags, rank)


def _pair_checks():
    rng = random.Random(1)
    verts = [f"v{i}" for i in range(10)]
    h = Hypergraph.from_edges([frozenset([v]) for v in verts])
    for _ in range(3):
        w = {v: rng.randint(0, 3) for v in verts}
        validate_function(table_function(verts, lambda xs: min(4, sum(w[v] for v in xs))), h)


def _widths():
    h = hypergraph_of(gen_parity_grid(3, 4))
    cover._rho_star.cache_clear()
    cover._rho_integral.cache_clear()
    ghw_exact(h)
    fhw_exact(h)


WORKLOADS = {
    "odd cycle 11 -> 13, no solution (hom_search)": _no_homomorphism,
    "cores of grids and inflations (hom_search)": _cores,
    "elimination bags + DP, n=14": _elimination,
    "set-function checks, n=10 (pair_checks)": _pair_checks,
    "exact ghw+fhw, 3x4 grid (end to end, LP-bound)": _widths,
}


def measure(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    backends = kernels.backends()
    saved = kernels._impl
    rows = []
    try:
        for label, fn in WORKLOADS.items():
            row = {"workload": label}
            for name, mod in backends.items():
                kernels._impl = mod
                fn()  # warm caches that are not kernel work
                row[name] = measure(fn, args.repeat)
            rows.append(row)
    finally:
        kernels._impl = saved

    if args.json:
        print(json.dumps(rows, indent=2))
        return
    names = list(backends)
    print(f"{'workload':46s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for row in rows:
        line = f"{row['workload']:46s}" + "".join(f"{row[n]:11.3f}s" for n in names)
        if "compiled" in row:
            line += f"{row['pure'] / row['compiled']:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
