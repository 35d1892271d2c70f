"""Time the compiled enumeration kernels against the pure-Python reference.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--max-n 9]
"""
import argparse
import time

from jacobigrammar.permstats import BACKENDS


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=9, help="largest S_n to enumerate")
    args = ap.parse_args()

    if "compiled" not in BACKENDS:
        raise SystemExit("compiled kernels not built; run `python3 setup.py build_ext --inplace`")
    py, cc = BACKENDS["python"], BACKENDS["compiled"]
    cases = [(f"S_{n} (all statistics)", "symmetric_stats", n) for n in range(7, args.max_n + 1)]
    cases += [(f"B_{n} descents", "signed_descents", n) for n in (5, 6)]
    cases += [(f"matchings n={n}", "matchings_odd_smaller", n) for n in (7, 8)]

    print(f"{'kernel':<26}{'python s':>11}{'compiled s':>12}{'speedup':>9}")
    for label, fn, n in cases:
        tp, a = best_of(lambda: getattr(py, fn)(n), args.repeat)
        tc, b = best_of(lambda: getattr(cc, fn)(n), args.repeat)
        same = (a == b) if isinstance(a, dict) else list(a) == list(b)
        flag = "" if same else "  MISMATCH"
        print(f"{label:<26}{tp:>11.4f}{tc:>12.5f}{tp / tc:>8.0f}x{flag}")


if __name__ == "__main__":
    main()
