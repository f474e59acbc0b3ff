# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``_pykernels`` for the reference versions."""

from libc.stdlib cimport calloc, free


def span_extrema(const long long[:] gens, Py_ssize_t ngens, Py_ssize_t k,
                 const long long[:] bounds, const long long[:] moduli,
                 const long long[:] tables, const long long[:] offsets):
    cdef long long *x = <long long *> calloc(k if k else 1, sizeof(long long))
    cdef long long *digits = <long long *> calloc(ngens if ngens else 1, sizeof(long long))
    cdef Py_ssize_t i, t, base
    cdef long long g, old, new, val = 0, lo, hi
    if x == NULL or digits == NULL:
        free(x)
        free(digits)
        raise MemoryError()
    try:
        for i in range(k):
            val += tables[offsets[i]]
        lo = val
        hi = val
        while True:
            t = 0
            while t < ngens:
                base = t * k
                for i in range(k):
                    g = gens[base + i]
                    if g != 0:
                        old = x[i]
                        new = (old + g) % moduli[i]
                        x[i] = new
                        val += tables[offsets[i] + new] - tables[offsets[i] + old]
                digits[t] += 1
                if digits[t] < bounds[t]:
                    break
                digits[t] = 0
                t += 1
            if t == ngens:
                return lo, hi
            if val < lo:
                lo = val
            elif val > hi:
                hi = val
    finally:
        free(x)
        free(digits)
