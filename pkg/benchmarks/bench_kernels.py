"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Micro-benchmarks call both kernel modules directly on identical inputs;
the end-to-end rows run a verification suite in a subprocess with the
backend forced through ``FACTORSPACE_PURE_PYTHON``.
"""

import argparse
import itertools
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from factorspace import _kernels_py

try:
    from factorspace import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def _workloads(rng):
    fams = [sorted(set(rng.integers(0, 1 << 10, size=40).tolist())) for _ in range(50)]
    pairs = list(zip(fams[::2], fams[1::2]))
    graphs = []
    for bits in range(0, 1 << 15, 7):
        adj = [0] * 6
        for k, (p, q) in enumerate(itertools.combinations(range(6), 2)):
            if bits >> k & 1:
                adj[p] |= 1 << q
                adj[q] |= 1 << p
        graphs.append(adj)
    return {
        "meet (25 pairs of 40 subsets, n=10)": lambda k: [k.meet(a, b) for a, b in pairs],
        "leq (25 pairs)": lambda k: [k.leq(a, b) for a, b in pairs],
        "saturate (50 families, n=10)": lambda k: [k.saturate(a, 10) for a in fams],
        "maximal (50 families)": lambda k: [k.maximal(a) for a in fams],
        "antichains(5) (7581 antichains)": lambda k: k.antichains(5),
        "maximal_cliques (4682 graphs, n=6)": lambda k: [k.maximal_cliques(a) for a in graphs],
    }


SUITE = "from factorspace.verify import covering_laws_suite, clique_suite; covering_laws_suite(3); clique_suite(5)"


def _suite_seconds(pure: bool) -> float:
    env = {**os.environ, "FACTORSPACE_PURE_PYTHON": "1" if pure else "0"}
    code = f"import time; t=time.perf_counter(); {SUITE}; print(time.perf_counter()-t)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="also write the results to this file")
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    rows = []
    for name, fn in _workloads(rng).items():
        py = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat))
        c = min(timeit.repeat(lambda: fn(_kernels_c), number=1, repeat=args.repeat)) if _kernels_c else None
        if c is not None:
            assert fn(_kernels_py) == fn(_kernels_c), name
        rows.append({"workload": name, "python_s": py, "cython_s": c})
    rows.append({
        "workload": "covering laws n=3 + clique lemma n<=5 (end to end)",
        "python_s": _suite_seconds(True),
        "cython_s": _suite_seconds(False) if _kernels_c else None,
    })

    width = max(len(r["workload"]) for r in rows)
    print(f"{'workload':<{width}}  {'python':>9}  {'cython':>9}  speedup")
    for r in rows:
        c = r["cython_s"]
        speed = f"{r['python_s'] / c:7.1f}x" if c else "    n/a"
        c_txt = f"{c:9.4f}" if c else "      n/a"
        print(f"{r['workload']:<{width}}  {r['python_s']:9.4f}  {c_txt}  {speed}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
