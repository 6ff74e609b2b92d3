"""Time the compiled and pure-Python kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--q 17] [--d 3] [--repeat 3]

Each kernel runs on both backends; outputs must agree, then the best of
--repeat wall times and the speedup are printed.
"""
import argparse
import random
import time

import numpy as np

from ffbertini import kernels
from ffbertini.gf import make_field, prime_power
from ffbertini.pencil import Pencil, enumerate_members
from ffbertini.polyform import MultiForm, monomials
from ffbertini.projgeom import line_table, point_array


def _random_form(F, d, rng):
    return MultiForm(F, 3, d, {m: rng.randrange(F.q) for m in monomials(3, d)})


def _cases(q, d, seed):
    F = make_field(*prime_power(q))
    rng = random.Random(seed)
    f, g = _random_form(F, d, rng), _random_form(F, d, rng)
    pts = point_array(2, F)
    _, P, Q = line_table(F)
    BF = kernels.restrict_form(f, P, Q)
    BG = kernels.restrict_form(g, P, Q)
    params = np.array([st for st, _ in enumerate_members(Pencil(f, g))], dtype=np.int64)
    return {
        "eval_form": lambda: kernels.eval_form(f, pts),
        "restrict_form": lambda: kernels.restrict_form(f, P, Q),
        "classify_binary": lambda: kernels.classify_binary(F, BF),
        "pencil_line_status": lambda: kernels.pencil_line_status(F, BF, BG, params),
    }


def _best(fn, repeat):
    times, out = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=17)
    ap.add_argument("--d", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels are not built; timing the python backend only")
    print(f"q={args.q} d={args.d} repeat={args.repeat}")
    print(f"{'kernel':<20}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, fn in _cases(args.q, args.d, args.seed).items():
        row, outs = {}, {}
        for b in backends:
            with kernels.backend(b):
                row[b], outs[b] = _best(fn, args.repeat)
        ref = outs[backends[-1]]
        if not all(np.array_equal(o, ref) for o in outs.values()):
            raise SystemExit(f"{name}: backends disagree")
        speed = row["python"] / row["cython"] if "cython" in row and row["cython"] else float("nan")
        print(f"{name:<20}" + "".join(f"{row[b] * 1e3:>10.2f}ms" for b in backends)
              + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
