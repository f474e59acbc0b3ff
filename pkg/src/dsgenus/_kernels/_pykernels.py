"""Pure-Python versions of the compiled kernels (same signatures)."""


def span_extrema(gens, ngens, k, bounds, moduli, tables, offsets):
    """Min and max of ``sum_i tables[offsets[i] + x_i]`` over the span of ``gens``.

    ``gens`` is a flat ``ngens * k`` array; generator ``t`` must have order
    exactly ``bounds[t]`` and the span must be their direct sum, so every
    element is visited once.
    """
    x = [0] * k
    val = sum(tables[offsets[i]] for i in range(k))
    lo = hi = val
    digits = [0] * ngens
    while True:
        t = 0
        while t < ngens:
            base = t * k
            for i in range(k):
                g = gens[base + i]
                if g:
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
