"""Compare the compiled kernels with their numpy fallbacks.

Kernel timings run both variants in this process. End-to-end timings run the
same solve in two child processes, one with ``FDEHAT_DISABLE_NUMBA=1``, so
the module-level switch is exercised exactly as a user would set it.

    python benchmarks/bench_kernels.py [--n 512] [--repeat 5]
"""

import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from fdehat import kernels
from fdehat.fracmat import ghf_sequences, mhf_sequences

SOLVE_SNIPPET = """
import json, time
from fdehat import example1, solve_fde_system
from fdehat._accel import USE_NUMBA
solve_fde_system(example1(), "{kind}", 8)  # compile / warm caches
t0 = time.perf_counter()
solve_fde_system(example1(), "{kind}", {n})
print(json.dumps({{"numba": USE_NUMBA, "seconds": time.perf_counter() - t0}}))
"""


def best_of(fn, repeat):
    fn()  # first call compiles
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def kernel_table(n, repeat):
    rng = np.random.default_rng(0)
    zeta, rho = ghf_sequences(n, 0.5)
    mseq = mhf_sequences(n, 0.5)
    P = kernels.fill_mhf_numpy(*mseq, 0.1)
    A = rng.normal(size=(4, n + 1))
    y0 = np.zeros(4)
    ts = rng.uniform(0, n * 0.1, 20000)
    cases = {
        "fill_ghf": (lambda: kernels.fill_ghf_loops(zeta, rho, 0.1),
                     lambda: kernels.fill_ghf_numpy(zeta, rho, 0.1)),
        "fill_mhf": (lambda: kernels.fill_mhf_loops(*mseq, 0.1),
                     lambda: kernels.fill_mhf_numpy(*mseq, 0.1)),
        "node_values": (lambda: kernels.node_values_loops(A, P, y0, True),
                        lambda: kernels.node_values_numpy(A, P, y0, True)),
        "eval_expansions": (lambda: kernels.eval_expansions_loops(A, 0.1, True, ts),
                            lambda: kernels.eval_expansions_numpy(A, 0.1, True, ts)),
    }
    rows = []
    for name, (fast, slow) in cases.items():
        a, b = best_of(fast, repeat), best_of(slow, repeat)
        rows.append((name, a, b))
    return rows


def solve_time(kind, n, disable):
    env = dict(os.environ)
    env.pop("FDEHAT_DISABLE_NUMBA", None)
    if disable:
        env["FDEHAT_DISABLE_NUMBA"] = "1"
    out = subprocess.run([sys.executable, "-c", SOLVE_SNIPPET.format(kind=kind, n=n)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=512)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    print(f"kernels, n={args.n} (best of {args.repeat})")
    print(f"{'kernel':<16}{'numba [ms]':>12}{'numpy [ms]':>12}{'ratio':>8}")
    for name, a, b in kernel_table(args.n, args.repeat):
        print(f"{name:<16}{a * 1e3:>12.3f}{b * 1e3:>12.3f}{b / a:>8.1f}")

    print(f"\nexample1 solve, n={args.n}")
    for kind in ("ghf", "mhf"):
        on = solve_time(kind, args.n, disable=False)
        off = solve_time(kind, args.n, disable=True)
        assert on["numba"] and not off["numba"]
        print(f"{kind}: numba {on['seconds']:.3f}s, numpy {off['seconds']:.3f}s")


if __name__ == "__main__":
    main()
