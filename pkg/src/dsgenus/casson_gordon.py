"""Casson-Gordon signatures of connected sums of lens spaces.

For ``L(p, q)`` and the character sending the canonical generator to ``a``
we use the cotangent sum

    sigma(L(p,q), a) = -(2/p) * sum_{k=1}^{p-1} cot(pi k q / p) cot(pi k / p) sin^2(pi k a / p)

evaluated at 40 significant digits and snapped to a rational with
denominator dividing ``12 p^2``.  With this sign convention ``L(9, 4)``
gives ``0, 5/9, 11/9, 1, -1/9, -1/9, 1, 11/9, 5/9`` for ``a = 0..8``.
Values are additive under connected sum.
"""

from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Sequence

import mpmath

from .abelian import FiniteAbelianGroup

CACHE_ENV = "DSGENUS_CACHE_DIR"
SNAP_TOLERANCE = 1e-8
_DPS = 40

_cache_dir: Path | None = None


class SnappingError(ArithmeticError):
    """The cotangent sum is not close to any admissible rational."""


@dataclass(frozen=True)
class LensSpace:
    p: int
    q: int
    orientation: int = 1

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"L(p,q) needs p > 1, got p={self.p}")
        if not 0 < self.q < self.p:
            raise ValueError(f"L(p,q) needs 0 < q < p, got q={self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"L(p,q) needs gcd(p,q) = 1, got ({self.p},{self.q})")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")

    def reversed(self) -> LensSpace:
        return LensSpace(self.p, self.q, -self.orientation)

    def __str__(self) -> str:
        return f"{'-' if self.orientation < 0 else ''}L({self.p},{self.q})"


@dataclass(frozen=True)
class LensSpaceSum:
    summands: tuple[LensSpace, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(L.p for L in self.summands)

    def h1(self) -> FiniteAbelianGroup:
        return FiniteAbelianGroup.from_orders(self.orders)

    def __add__(self, other: LensSpaceSum) -> LensSpaceSum:
        return LensSpaceSum(self.summands + other.summands)

    def __str__(self) -> str:
        return "#".join(map(str, self.summands)) if self.summands else "S3"


@dataclass(frozen=True)
class Character:
    """``+ Z_{p_i} -> Z_d`` sending summand generator ``i`` to ``values[i]``."""

    modulus: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        vals = tuple(int(v) % self.modulus for v in self.values)
        object.__setattr__(self, "values", vals)

    def is_defined_on(self, orders: Sequence[int]) -> bool:
        return len(orders) == len(self.values) and all(
            (a * p) % self.modulus == 0 for a, p in zip(self.values, orders))

    def local_values(self, orders: Sequence[int]) -> tuple[int, ...]:
        """Each summand's value rescaled to a residue mod ``p_i``."""
        if not self.is_defined_on(orders):
            raise ValueError(f"character {self.values} mod {self.modulus} is not defined on "
                             f"{'+'.join(f'Z{p}' for p in orders) or '0'}")
        return tuple((a * p // self.modulus) % p for a, p in zip(self.values, orders))


def _raw_sums(p: int, q: int) -> list:
    with mpmath.workdps(_DPS):
        pi = mpmath.pi
        w = [mpmath.cot(pi * k * q / p) * mpmath.cot(pi * k / p) for k in range(1, p)]
        s2 = [mpmath.sin(pi * r / p) ** 2 for r in range(p)]
        scale = mpmath.mpf(-2) / p
        return [scale * mpmath.fsum(w[k - 1] * s2[(k * a) % p] for k in range(1, p))
                for a in range(p)]


def snap(value, p: int) -> Fraction:
    den = 12 * p * p
    with mpmath.workdps(_DPS):
        num = int(mpmath.nint(value * den))
        if abs(value - mpmath.mpf(num) / den) >= SNAP_TOLERANCE:
            raise SnappingError(f"cotangent sum {value} for p={p} is not a rational with "
                                f"denominator dividing {den}")
    return Fraction(num, den)


@lru_cache(maxsize=None)
def _table(p: int, q: int) -> tuple[Fraction, ...]:
    raw = _raw_sums(p, q)
    out = [Fraction(0)]
    out.extend(snap(raw[a], p) for a in range(1, p))
    return tuple(out)


def raw_cotangent_sum(L: LensSpace, a: int):
    """The unsnapped high-precision value (for diagnostics and tests)."""
    return L.orientation * _raw_sums(L.p, L.q)[a % L.p]


def cg_lens_sigma(L: LensSpace, a: int) -> Fraction:
    if not 0 <= a < L.p:
        raise ValueError(f"character value must lie in [0, {L.p}), got {a}")
    if a == 0:
        return Fraction(0)
    return L.orientation * _table(L.p, L.q)[a]


def cg_sigma(M: LensSpaceSum, phi: Character) -> Fraction:
    local = phi.local_values(M.orders)
    return sum((cg_lens_sigma(L, c) for L, c in zip(M.summands, local)), Fraction(0))


def cg_table(L: LensSpace, d: int) -> list[tuple[int, Fraction]]:
    """``(a, sigma(L, chi_a))`` for the characters of ``L`` with values in ``Z_d``.

    These are ``a = 0, p/d, 2p/d, ...``; for ``d = p`` all residues.
    """
    if d < 1 or L.p % d:
        raise ValueError(f"d={d} must divide p={L.p}")
    step = L.p // d
    stored = _read_cache(L.p, L.q, d)
    if stored is None:
        stored = [(a, _table(L.p, L.q)[a]) for a in range(0, L.p, step)]
        _write_cache(L.p, L.q, d, stored)
    return [(a, L.orientation * v) for a, v in stored]


def scaled_table(L: LensSpace, scale: int) -> list[int]:
    """``scale * sigma(L, chi_a)`` for every ``a``; ``scale`` must clear denominators."""
    out = []
    for v in _table(L.p, L.q):
        w = v * scale * L.orientation
        if w.denominator != 1:
            raise ValueError(f"scale {scale} does not clear denominator of {v}")
        out.append(w.numerator)
    return out


def common_denominator(M: LensSpaceSum) -> int:
    den = 1
    for L in M.summands:
        for v in _table(L.p, L.q):
            den = math.lcm(den, v.denominator)
    return den


# ---------------------------------------------------------------------------
# on-disk cache: one file per (p, q, d), lines "a<TAB>num/den"


def set_cache_dir(path: str | os.PathLike | None) -> None:
    global _cache_dir
    _cache_dir = Path(path) if path is not None else None


def cache_dir() -> Path | None:
    if _cache_dir is not None:
        return _cache_dir
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else None


def cache_path(p: int, q: int, d: int) -> Path | None:
    base = cache_dir()
    return None if base is None else base / f"L{p}_{q}_d{d}.tsv"


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def format_table(rows: Sequence[tuple[int, Fraction]]) -> str:
    return "".join(f"{a}\t{format_fraction(v)}\n" for a, v in rows)


def parse_table(text: str) -> list[tuple[int, Fraction]]:
    rows = []
    for line in text.splitlines():
        a, frac = line.split("\t")
        rows.append((int(a), Fraction(frac)))
    return rows


def _read_cache(p: int, q: int, d: int) -> list[tuple[int, Fraction]] | None:
    path = cache_path(p, q, d)
    if path is None or not path.exists():
        return None
    try:
        rows = parse_table(path.read_text(encoding="utf-8"))
    except (ValueError, OSError):
        return None
    if [a for a, _ in rows] != list(range(0, p, p // d)):
        return None
    return rows


def _write_cache(p: int, q: int, d: int, rows: Sequence[tuple[int, Fraction]]) -> None:
    path = cache_path(p, q, d)
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    # readers only ever see a complete file
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_table(rows))
    os.replace(tmp, path)
