"""Compare the compiled and pure-Python arithmetic kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--skip-end-to-end]

Micro-benchmarks time field and polynomial primitives on both kernel
classes directly. End-to-end timings run picgen in a subprocess, once with
the default backend and once with PICGEN_PURE=1.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from picgen import _pykernel
from picgen.finite_field import make_field

try:
    from picgen import _kernel
except ImportError:
    _kernel = None

FIELDS = [(10007, 1), (2, 12), (3, 7)]
END_TO_END = [
    ("enumerate", "import picgen.verify as v, picgen.jacobian as j; j.enumerate_picard(v.load_curve(v.shipped_corpus_dir() / 'h2_f9.json'))"),
    ("generate", "import picgen.verify as v, picgen.generator_algorithm as g; g.generate(v.load_curve(v.shipped_corpus_dir() / 'e_f2.json'))"),
]


def micro(kernel_cls, p, n, modulus, number):
    k = kernel_cls(p, n, modulus)
    q = p**n
    rng = random.Random(0)
    xs = [rng.randrange(1, q) for _ in range(256)]
    poly_a = [rng.randrange(q) for _ in range(12)]
    poly_b = [rng.randrange(q) for _ in range(6)] + [1]

    def mul():
        for a, b in zip(xs, xs[1:]):
            k.mul(a, b)

    def inv():
        for a in xs:
            k.inv(a)

    def poly():
        k.poly_divmod(k.poly_mul(poly_a, poly_a), poly_b)

    return {name: min(timeit.repeat(fn, number=number, repeat=3)) / number for name, fn in
            (("mul x255", mul), ("inv x256", inv), ("poly mul+divmod", poly))}


def end_to_end(code, pure):
    env = dict(os.environ)
    if pure:
        env["PICGEN_PURE"] = "1"
    else:
        env.pop("PICGEN_PURE", None)
    stmt = f"import time; t=time.perf_counter(); {code}; print(time.perf_counter()-t)"
    out = subprocess.run([sys.executable, "-c", stmt], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip().splitlines()[-1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20, help="loop count per micro timing")
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args(argv)

    if _kernel is None:
        print("compiled kernel not built; only the pure-Python kernel is timed")
    print(f"{'field':>10}  {'operation':<16}  {'compiled (ms)':>13}  {'pure (ms)':>10}  {'speedup':>7}")
    for p, n in FIELDS:
        F = make_field(p, n)
        pure = micro(_pykernel.FieldKernel, p, n, list(F.modulus), args.repeat)
        fast = micro(_kernel.FieldKernel, p, n, list(F.modulus), args.repeat) if _kernel else None
        for op, t in pure.items():
            c = fast[op] if fast else float("nan")
            print(f"{p:>6}^{n:<3}  {op:<16}  {c * 1e3:13.3f}  {t * 1e3:10.3f}  {t / c:7.1f}")

    if not args.skip_end_to_end:
        print()
        print(f"{'task':<10}  {'default (s)':>11}  {'pure (s)':>9}")
        for name, code in END_TO_END:
            print(f"{name:<10}  {end_to_end(code, False):11.3f}  {end_to_end(code, True):9.3f}")


if __name__ == "__main__":
    main()
