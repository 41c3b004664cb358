"""Compare the compiled and pure-Python evaluation kernels.

    python3 benchmarks/bench_kernel.py [--formulas N] [--domain D] [--members K ...]

Each formula is compiled once; only the kernel call is timed.  Teams are
random subsets of the valuations on ``--domain`` variables, one row per
member count.  The compiled column is skipped when the extension is not
built.  The default dispatcher uses the compiled kernel up to
``COMPILED_MAX_MEMBERS`` members and the Python one above that.
"""
import argparse
import random
import time

from teamlogic import _kernel
from teamlogic.formula import BOT, And, Dep, IDisj, Impl, NegVar, Tensor, Var
from teamlogic.semantics import compile_program


def random_formula(rng, nvars, depth):
    if depth == 0 or rng.random() < 0.2:
        i = rng.randint(1, nvars)
        pick = rng.randrange(4)
        if pick == 0:
            return Var(i)
        if pick == 1:
            return NegVar(i)
        if pick == 2:
            return Dep(tuple(rng.sample(range(1, nvars + 1), rng.randrange(min(3, nvars)))), i)
        return BOT
    kind = rng.choice((And, Tensor, IDisj, Impl))
    return kind(random_formula(rng, nvars, depth - 1), random_formula(rng, nvars, depth - 1))


def time_backend(fn, programs, k, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        for program in programs:
            fn(*program, k)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--formulas", type=int, default=20)
    ap.add_argument("--domain", type=int, default=4)
    ap.add_argument("--members", type=int, nargs="+", default=[2, 4, 6, 8, 10, 12, 14, 16])
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    n = args.domain
    dom = tuple(range(1, n + 1))
    print(f"default backend: {_kernel.BACKEND} (compiled up to {_kernel.COMPILED_MAX_MEMBERS} members)")
    compiled = _kernel.compiled_denote_program
    for k in args.members:
        if k > 1 << n:
            continue
        programs = []
        for _ in range(args.formulas):
            codes = sorted(rng.sample(range(1 << n), k))
            programs.append(compile_program(random_formula(rng, n, args.depth), dom, codes))
        py = time_backend(_kernel.python_denote_program, programs, k)
        line = f"{k:2d} members: python {py * 1e3:9.2f} ms"
        if compiled is not None:
            cy = time_backend(compiled, programs, k)
            line += f"   compiled {cy * 1e3:9.2f} ms   python/compiled {py / cy:7.2f}"
        else:
            line += "   (compiled kernel not built)"
        print(line)


if __name__ == "__main__":
    main()
