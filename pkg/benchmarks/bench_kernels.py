"""Compare the compiled and pure-Python character-sum kernels.

    python benchmarks/bench_kernels.py --repeat 3

Two workloads: one large span (every character of a sum of lens spaces)
and the subgroup catalog behind theta for ``#_3 L(9,4)``.
"""

from __future__ import annotations

import argparse
import statistics
import time

from dsgenus import _kernels
from dsgenus.casson_gordon import LensSpace, LensSpaceSum, common_denominator, scaled_table
from dsgenus.theta.characters import CoverCharacters


def full_span(backend, Y: LensSpaceSum):
    scale = common_denominator(Y)
    tables = [scaled_table(L, scale) for L in Y.summands]
    k = len(Y.summands)
    gens = [tuple(int(i == t) for i in range(k)) for t in range(k)]
    return _kernels.span_extrema(gens, Y.orders, Y.orders, tables, backend=backend)


def catalog(Y: LensSpaceSum, max_exp: int):
    chars = CoverCharacters(Y)
    return sum(len(v) for v in chars.catalog(3, max_exp).values())


def timed(fn, repeat: int) -> tuple[float, object]:
    times, out = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--summands", type=int, default=6, help="copies of L(9,4) in the full span")
    args = ap.parse_args()

    backends = _kernels.available_backends()
    print(f"default backend: {_kernels.BACKEND}; available: {', '.join(backends)}")

    Y = LensSpaceSum((LensSpace(9, 4),) * args.summands)
    results = {}
    for name, impl in backends.items():
        t, out = timed(lambda: full_span(impl, Y), args.repeat)
        results[name] = out
        print(f"full span of 9^{args.summands} characters  {name:>7}: {t * 1e3:9.2f} ms  {out}")
    if len(set(results.values())) > 1:
        raise SystemExit("backends disagree")

    Y3 = LensSpaceSum((LensSpace(9, 4),) * 3)
    for name, impl in backends.items():
        saved = _kernels._impl
        _kernels._impl = impl
        try:
            t, n = timed(lambda: catalog(Y3, 3), args.repeat)
        finally:
            _kernels._impl = saved
        print(f"subgroup catalog of #3 L(9,4)      {name:>7}: {t * 1e3:9.2f} ms  ({n} subgroups)")


if __name__ == "__main__":
    main()
