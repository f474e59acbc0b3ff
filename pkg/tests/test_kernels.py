import itertools
import random

import pytest

from dsgenus import _kernels
from dsgenus.casson_gordon import LensSpace, LensSpaceSum, common_denominator, scaled_table
from dsgenus.lattices import subgroups

BACKENDS = _kernels.available_backends()


def brute(gens, bounds, moduli, tables):
    vals = []
    for coeffs in itertools.product(*[range(b) for b in bounds]):
        x = [sum(c * g[i] for c, g in zip(coeffs, gens)) % m for i, m in enumerate(moduli)]
        vals.append(sum(t[v] for t, v in zip(tables, x)))
    return min(vals), max(vals)


def test_compiled_backend_built():
    assert "cython" in BACKENDS, "compiled kernels missing; rebuild with pip install -e ."


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_against_brute_force(name):
    impl = BACKENDS[name]
    Y = LensSpaceSum((LensSpace(9, 4), LensSpace(9, 2), LensSpace(3, 1)))
    scale = common_denominator(Y)
    tables = [scaled_table(L, scale) for L in Y.summands]
    # subgroups of the 3-primary part, written in the local coordinates used by theta
    exps = (2, 2, 1)
    for sub in subgroups(3, exps):
        got = _kernels.span_extrema(sub.basis, sub.orders, Y.orders, tables, backend=impl)
        assert got == brute(sub.basis, sub.orders, Y.orders, tables)


def test_backends_agree_random():
    rnd = random.Random(5)
    impls = list(BACKENDS.values())
    for _ in range(50):
        k = rnd.randint(1, 4)
        moduli = [rnd.choice([3, 5, 9, 7]) for _ in range(k)]
        tables = [[rnd.randint(-50, 50) for _ in range(m)] for m in moduli]
        tables = [[0] + t[1:] for t in tables]
        gens = [tuple(int(i == t) for i in range(k)) for t in range(k)]
        results = {_kernels.span_extrema(gens, moduli, moduli, tables, backend=b) for b in impls}
        assert len(results) == 1
        assert results.pop() == brute(gens, moduli, moduli, tables)


def test_empty_span():
    for impl in BACKENDS.values():
        assert _kernels.span_extrema([], [], [9], [[0] * 9], backend=impl) == (0, 0)
