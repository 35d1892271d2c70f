"""Pure-Python enumeration kernels; the reference the compiled kernels must match."""
from __future__ import annotations

from itertools import permutations, product

STAT_KEYS = (
    "interior_peaks",
    "left_peaks",
    "descents",
    "alternating_runs",
    "up_down_runs",
    "longest_alt_subseq",
)


def interior_peaks_of(perm) -> int:
    return sum(1 for i in range(1, len(perm) - 1) if perm[i - 1] < perm[i] > perm[i + 1])


def left_peaks_of(perm) -> int:
    seq = (0,) + tuple(perm)
    return sum(1 for i in range(1, len(seq) - 1) if seq[i - 1] < seq[i] > seq[i + 1])


def descents_of(perm) -> int:
    return sum(1 for i in range(len(perm) - 1) if perm[i] > perm[i + 1])


def _runs(seq) -> int:
    if len(seq) < 2:
        return 0
    changes = 0
    for i in range(1, len(seq) - 1):
        if (seq[i - 1] < seq[i]) != (seq[i] < seq[i + 1]):
            changes += 1
    return changes + 1


def alternating_runs_of(perm) -> int:
    return _runs(tuple(perm))


def up_down_runs_of(perm) -> int:
    return _runs((0,) + tuple(perm))


def longest_alt_subseq_of(perm) -> int:
    # odd[i]/even[i]: longest pattern a>b<c>... ending at i with odd/even length
    n = len(perm)
    if n == 0:
        return 0
    odd = [1] * n
    even = [0] * n
    for i in range(n):
        for j in range(i):
            if perm[j] > perm[i] and odd[j] + 1 > even[i]:
                even[i] = odd[j] + 1
            if perm[j] < perm[i] and even[j] and even[j] + 1 > odd[i]:
                odd[i] = even[j] + 1
    return max(max(odd), max(even))


def cycle_peaks_of(perm):
    """(odd, even) counts of values v with perm^{-1}(v) < v > perm(v)."""
    n = len(perm)
    inv = [0] * (n + 1)
    for pos, v in enumerate(perm, start=1):
        inv[v] = pos
    odd = even = 0
    for v in range(1, n + 1):
        if inv[v] < v > perm[v - 1]:
            if v % 2:
                odd += 1
            else:
                even += 1
    return odd, even


def is_alternating(perm) -> bool:
    return all((perm[i] > perm[i + 1]) == (i % 2 == 0) for i in range(len(perm) - 1))


def is_reverse_alternating(perm) -> bool:
    return all((perm[i] < perm[i + 1]) == (i % 2 == 0) for i in range(len(perm) - 1))


def symmetric_stats(n: int, first: int = 0) -> dict:
    """Distributions over S_n (restricted to perm[0] == first when first > 0)."""
    if first < 0 or first > n:
        raise ValueError("first entry must lie in 1..n (0 for no restriction)")
    counts = {k: [0] * (n + 2) for k in STAT_KEYS}
    xy = [[0] * (n + 1) for _ in range(n + 1)]
    alt = ralt = 0
    if first:
        rest = [v for v in range(1, n + 1) if v != first]
        perms = ((first,) + p for p in permutations(rest))
    else:
        perms = permutations(range(1, n + 1))
    for perm in perms:
        counts["interior_peaks"][interior_peaks_of(perm)] += 1
        counts["left_peaks"][left_peaks_of(perm)] += 1
        counts["descents"][descents_of(perm)] += 1
        counts["alternating_runs"][alternating_runs_of(perm)] += 1
        counts["up_down_runs"][up_down_runs_of(perm)] += 1
        counts["longest_alt_subseq"][longest_alt_subseq_of(perm)] += 1
        o, e = cycle_peaks_of(perm)
        xy[o][e] += 1
        alt += is_alternating(perm)
        ralt += is_reverse_alternating(perm)
    out = dict(counts)
    out["cycle_peaks"] = xy
    out["alternating"] = alt
    out["reverse_alternating"] = ralt
    return out


def signed_descents(n: int) -> list:
    counts = [0] * (n + 1)
    for perm in permutations(range(1, n + 1)):
        for signs in product((1, -1), repeat=n):
            prev = 0
            d = 0
            for v, s in zip(perm, signs):
                cur = v * s
                if prev > cur:
                    d += 1
                prev = cur
            counts[d] += 1
    return counts


def matchings_odd_smaller(n: int) -> list:
    counts = [0] * (n + 1)

    def walk(free, k):
        if not free:
            counts[k] += 1
            return
        lo = free[0]
        bump = lo % 2
        for idx in range(1, len(free)):
            walk(free[1:idx] + free[idx + 1:], k + bump)

    walk(tuple(range(1, 2 * n + 1)), 0)
    return counts
