"""Compiled vs pure-Python sparse product kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--terms 400]

Times both kernels on identical random operands, checks they agree, then
times a focus-value run end to end in a subprocess for each backend.
"""

import argparse
import os
import random
import subprocess
import sys
import time

from qaswitch.exactpoly import _kernels_py

try:
    from qaswitch.exactpoly import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def operand(rng, n, fourier):
    out = {}
    while len(out) < n:
        mono = sum(rng.randrange(6) << (6 * i) for i in range(5))
        slot = (rng.randrange(12) << 1 | rng.randrange(2)) if fourier else 0
        if slot == 1:  # sin(0) is not a basis element
            slot = 0
        out[mono << 9 | slot] = rng.randrange(-(10**12), 10**12) or 1
    return out


def best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


ENGINE = (
    "import time;from qaswitch.casebook.verify import full_focus;"
    "t=time.perf_counter();full_focus({order});print(time.perf_counter()-t)"
)


def engine_time(pure, order):
    env = dict(os.environ, QASWITCH_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run(
        [sys.executable, "-c", ENGINE.format(order=order)], env=env, capture_output=True, text=True, check=True
    )
    return float(out.stdout.strip())


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--terms", type=int, default=400)
    ap.add_argument("--order", type=int, default=6, help="focus order for the end-to-end run")
    args = ap.parse_args(argv)

    if _kernels_c is None:
        print("compiled kernel not built; only the fallback is available")
    rng = random.Random(0)
    cases = {
        "mul": (operand(rng, args.terms, False), operand(rng, args.terms, False)),
        "trig_mul": (operand(rng, args.terms // 4, True), operand(rng, args.terms // 4, True)),
    }
    print(f"{'kernel':<10}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    for name, (a, b) in cases.items():
        py = getattr(_kernels_py, name)
        t_py = best(lambda: py(a, b), args.repeat)
        if _kernels_c is None:
            print(f"{name:<10}{t_py:>12.4f}{'-':>12}{'-':>10}")
            continue
        c = getattr(_kernels_c, name)
        assert c(a, b) == py(a, b), f"{name}: backends disagree"
        t_c = best(lambda: c(a, b), args.repeat)
        print(f"{name:<10}{t_py:>12.4f}{t_c:>12.4f}{t_py / t_c:>9.1f}x")

    t_py = engine_time(True, args.order)
    line = f"focus_values order {args.order}: python {t_py:.2f} s"
    if _kernels_c is not None:
        t_c = engine_time(False, args.order)
        line += f", compiled {t_c:.2f} s ({t_py / t_c:.1f}x)"
    print(line)


if __name__ == "__main__":
    main()
