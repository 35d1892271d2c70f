"""Exact distributions of permutation, signed-permutation and matching statistics.

Everything here is brute-force enumeration. The enumeration loops run in the
compiled ``_kernels`` extension when it is importable and in ``_pykernels``
otherwise; set ``JACOBIGRAMMAR_PURE=1`` to force the Python path.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Dict, List, Tuple, Union

from . import _pykernels
from ._pykernels import (  # noqa: F401  (re-exported single-permutation statistics)
    alternating_runs_of,
    cycle_peaks_of,
    descents_of,
    interior_peaks_of,
    is_alternating,
    is_reverse_alternating,
    left_peaks_of,
    longest_alt_subseq_of,
    up_down_runs_of,
)
from .exactpoly import Poly

if os.environ.get("JACOBIGRAMMAR_PURE"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKENDS = {"python": _pykernels}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled
BACKEND = "compiled" if _compiled is not None else "python"

# enumeration bounds per domain
MAX_SYMMETRIC = 10
MAX_SYMMETRIC_LARGE = 11
MAX_SIGNED = 7
MAX_MATCHING = 8

X_RING = ("x",)

Key = Union[int, Tuple[int, int]]


class EnumerationBoundError(ValueError):
    """Requested size is above the enumeration cap for its domain."""


@dataclass(frozen=True)
class DistributionTable:
    statistic: str
    n: int
    counts: Dict[Key, int]

    def __getitem__(self, k: Key) -> int:
        return self.counts.get(k, 0)

    def total(self) -> int:
        return sum(self.counts.values())

    def as_list(self) -> List[int]:
        """Counts indexed by statistic value 0..max (univariate tables only)."""
        if not self.counts:
            return []
        top = max(self.counts)
        return [self.counts.get(k, 0) for k in range(top + 1)]

    def as_poly(self, var: str = "x") -> Poly:
        return Poly((var,), {(k,): v for k, v in self.counts.items()})

    def to_json(self) -> dict:
        if self.counts and isinstance(next(iter(self.counts)), tuple):
            counts = {f"{i},{j}": str(v) for (i, j), v in sorted(self.counts.items())}
        else:
            counts = {str(k): str(v) for k, v in sorted(self.counts.items())}
        return {"statistic": self.statistic, "n": self.n, "counts": counts}


def _backend(name: str | None):
    name = name or BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("JACOBIGRAMMAR_THREADS", "1")))
    except ValueError:
        return 1


def _merge(parts: List[dict], n: int) -> dict:
    out = {k: [0] * (n + 2) for k in _pykernels.STAT_KEYS}
    xy = [[0] * (n + 1) for _ in range(n + 1)]
    alt = ralt = 0
    for part in parts:
        for k in _pykernels.STAT_KEYS:
            for idx, v in enumerate(part[k]):
                out[k][idx] += v
        for i in range(n + 1):
            for j in range(n + 1):
                xy[i][j] += part["cycle_peaks"][i][j]
        alt += part["alternating"]
        ralt += part["reverse_alternating"]
    out["cycle_peaks"] = xy
    out["alternating"] = alt
    out["reverse_alternating"] = ralt
    return out


@lru_cache(maxsize=None)
def symmetric_summary(n: int, backend: str | None = None, allow_large: bool = False) -> dict:
    """All S_n statistics in one enumeration pass.

    With ``JACOBIGRAMMAR_THREADS > 1`` the work is split by first entry across
    processes and the partial tables are added.
    """
    cap = MAX_SYMMETRIC_LARGE if allow_large else MAX_SYMMETRIC
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > cap:
        raise EnumerationBoundError(f"S_n enumeration capped at n={cap}")
    kern = _backend(backend)
    workers = _workers()
    if workers > 1 and n >= 8:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(kern.symmetric_stats, [n] * n, range(1, n + 1)))
        return _merge(parts, n)
    return kern.symmetric_stats(n)


def _table(statistic: str, n: int, values, backend=None) -> DistributionTable:
    return DistributionTable(statistic, n, {k: int(v) for k, v in enumerate(values) if v})


def _stat(key: str, n: int, backend=None) -> DistributionTable:
    return _table(key, n, symmetric_summary(n, backend)[key])


def interior_peaks(n: int, backend: str | None = None) -> DistributionTable:
    return _stat("interior_peaks", n, backend)


def left_peaks(n: int, backend: str | None = None) -> DistributionTable:
    return _stat("left_peaks", n, backend)


def descents(n: int, backend: str | None = None) -> DistributionTable:
    return _stat("descents", n, backend)


def alternating_runs(n: int, backend: str | None = None) -> DistributionTable:
    if n < 2:
        raise ValueError("alternating runs are tabulated from n = 2")
    return _stat("alternating_runs", n, backend)


def up_down_runs(n: int, backend: str | None = None) -> DistributionTable:
    return _stat("up_down_runs", n, backend)


def longest_alt_subseq(n: int, backend: str | None = None) -> DistributionTable:
    return _stat("longest_alt_subseq", n, backend)


def cycle_peaks_xy(n: int, backend: str | None = None) -> DistributionTable:
    grid = symmetric_summary(n, backend)["cycle_peaks"]
    counts = {(i, j): int(v) for i, row in enumerate(grid) for j, v in enumerate(row) if v}
    return DistributionTable("cycle_peaks_xy", n, counts)


@lru_cache(maxsize=None)
def descents_type_b(n: int, backend: str | None = None) -> DistributionTable:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > MAX_SIGNED:
        raise EnumerationBoundError(f"B_n enumeration capped at n={MAX_SIGNED}")
    return _table("descents_type_b", n, _backend(backend).signed_descents(n))


@lru_cache(maxsize=None)
def matchings_odd_smaller(n: int, backend: str | None = None) -> DistributionTable:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > MAX_MATCHING:
        raise EnumerationBoundError(f"matching enumeration capped at n={MAX_MATCHING}")
    return _table("matchings_odd_smaller", n, _backend(backend).matchings_odd_smaller(n))


def euler_numbers(n_max: int, backend: str | None = None) -> List[int]:
    """``[E_0, E_1, ..., E_{n_max}]`` counted as alternating permutations (E_0 = 1)."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    out = [1]
    for n in range(1, n_max + 1):
        summary = symmetric_summary(n, backend)
        alt, ralt = summary["alternating"], summary["reverse_alternating"]
        if alt != ralt:
            raise AssertionError(f"complement bijection broken at n={n}: {alt} != {ralt}")
        out.append(int(alt))
    return out


def double_factorial(n: int) -> int:
    """(2n-1)!! with (-1)!! = 1."""
    out = 1
    for k in range(1, 2 * n, 2):
        out *= k
    return out


def domain_size(statistic: str, n: int) -> int:
    if statistic == "descents_type_b":
        return 2 ** n * factorial(n)
    if statistic == "matchings_odd_smaller":
        return double_factorial(n)
    return factorial(n)


STATISTICS = {
    "interior-peaks": interior_peaks,
    "left-peaks": left_peaks,
    "descents": descents,
    "descents-b": descents_type_b,
    "cycle-peaks": cycle_peaks_xy,
    "alternating-runs": alternating_runs,
    "updown-runs": up_down_runs,
    "longest-alt-subseq": longest_alt_subseq,
    "matchings-odd-smaller": matchings_odd_smaller,
}
