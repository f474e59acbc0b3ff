"""Hot kernels: compiled when the extension is built, pure Python otherwise.

Set ``DSGENUS_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
from array import array
from typing import Sequence

from . import _pykernels

BACKEND = "python"
_impl = _pykernels
if not os.environ.get("DSGENUS_PURE_PYTHON"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass


def available_backends() -> dict[str, object]:
    out = {"python": _pykernels}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out


def span_extrema(gens: Sequence[Sequence[int]], bounds: Sequence[int], moduli: Sequence[int],
                 tables: Sequence[Sequence[int]], backend=None) -> tuple[int, int]:
    """Min and max of ``sum_i tables[i][x_i]`` over ``x`` in the span of ``gens``.

    The generators must form a direct-sum basis with ``bounds`` their orders.
    """
    impl = backend or _impl
    k = len(moduli)
    flat = array("q", [int(v) for g in gens for v in g])
    offsets, acc = [], 0
    for t in tables:
        offsets.append(acc)
        acc += len(t)
    ftab = array("q", [int(v) for t in tables for v in t])
    return impl.span_extrema(flat, len(gens), k, array("q", bounds), array("q", moduli),
                             ftab, array("q", offsets))
