"""Compare the compiled and numpy kernels on the distance workloads.

Run with ``python benchmarks/bench_kernels.py [--quick]``.  Each case is timed
on both backends and the results are checked to agree.
"""

from __future__ import annotations

import argparse
import time

from gacodes import kernels
from gacodes.codes import dual_code
from gacodes.galg import left_ideal_from_element
from gacodes.parse import parse_element, parse_group

FLAGSHIP = (
    "x+z-z^2+x^2+xy-xz+xz^2-x^3+yz^2-x^2y+z^3-x^2z^2-xyz^2+xz^3+x^3z"
    "-x^2yz^2+xyz^3+x^3yz-x^3z^3"
)


def _code():
    spec = parse_group("D4xC4")
    return left_ideal_from_element(parse_element(FLAGSHIP, spec, 3))


def _cases(quick: bool):
    c = _code()
    F = c.field
    D = dual_code(c)
    H = D.generator
    hist_rows = D.generator[:10] if quick else D.generator
    yield "weight histogram", lambda: kernels.weight_histogram(F, hist_rows)
    for w in ((4, 5) if quick else (5, 6)):
        yield f"syndrome search w={w}", lambda w=w: kernels.find_word(F, H, w)[1]


def _time(fn, repeat):
    best, res = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        res = fn()
        best = min(best, time.perf_counter() - t)
    return best, res


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true", help="small inputs only")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not kernels.native_available:
        print("compiled kernels not built; only the numpy backend is available")
    print(f"{'case':<26}{'cython [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for name, fn in _cases(args.quick):
        times, results = {}, {}
        for backend in ("cython", "numpy"):
            if backend == "cython" and not kernels.native_available:
                continue
            with kernels.use_backend(backend):
                times[backend], results[backend] = _time(fn, args.repeat)
        if len(results) == 2:
            assert results["cython"] == results["numpy"], f"backends disagree on {name}"
            print(f"{name:<26}{times['cython']:>12.4f}{times['numpy']:>12.4f}{times['numpy'] / times['cython']:>9.1f}x")
        else:
            print(f"{name:<26}{'-':>12}{times['numpy']:>12.4f}{'-':>10}")


if __name__ == "__main__":
    main()
