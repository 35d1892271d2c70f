"""Three-index coefficient triangles s, a, b, c, d, t, r.

Every triangle is produced two independent ways: by reading coefficients
off iterated grammar derivatives through an exponent pattern (``extract``),
and by the two-step linear recurrences between consecutive levels
(``recur``). The two must agree entry for entry.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .exactpoly import Poly, VariableSet
from .grammar import (
    EXTENDED_RING,
    SCHETT_RING,
    OperatorSpec,
    extended_schett,
    iterate_all,
    schett,
)

NAMES = ("s", "a", "b", "c", "d", "t", "r")
PQ_RING = VariableSet(("p", "q"))

Vec = Tuple[int, ...]


class PatternError(ValueError):
    """A derived monomial does not fit the array's exponent pattern."""


@dataclass(frozen=True)
class Pattern:
    """Affine map ``(m, i, j) -> base + m*per_m + i*di + j*dj`` for one parity.

    ``m`` is ``n // 2`` where ``n`` is the level.
    """

    base: Vec
    per_m: Vec
    di: Vec
    dj: Vec

    def encode(self, n: int, i: int, j: int) -> Vec:
        m = n // 2
        return tuple(b + m * pm + i * a + j * c for b, pm, a, c in zip(self.base, self.per_m, self.di, self.dj))

    def _solo_axis(self, own: Vec, other: Vec) -> int:
        for k, (u, v) in enumerate(zip(own, other)):
            if u and not v:
                return k
        raise ValueError("pattern has no axis isolating an index")

    def decode(self, n: int, exps: Vec) -> Optional[Tuple[int, int]]:
        ki = self._solo_axis(self.di, self.dj)
        kj = self._solo_axis(self.dj, self.di)
        origin = self.encode(n, 0, 0)
        i, ri = divmod(exps[ki] - origin[ki], self.di[ki])
        j, rj = divmod(exps[kj] - origin[kj], self.dj[kj])
        if ri or rj or i < 0 or j < 0 or self.encode(n, i, j) != tuple(exps):
            return None
        return i, j

    def region(self, n: int) -> List[Tuple[int, int]]:
        """Index pairs whose monomial has non-negative exponents."""
        degree = sum(self.encode(n, 0, 0))
        bound = degree + 2
        return [
            (i, j)
            for i in range(bound)
            for j in range(bound)
            if all(e >= 0 for e in self.encode(n, i, j))
        ]


@dataclass(frozen=True)
class ArraySpec:
    name: str
    ring: VariableSet
    kind: str
    seed_text: str
    even: Pattern
    odd: Pattern
    # levels supplied directly because the seed does not fit the pattern
    base_rows: Mapping[int, Mapping[Tuple[int, int], int]] = field(default_factory=dict)

    def pattern(self, n: int) -> Pattern:
        return self.odd if n % 2 else self.even

    def operator(self) -> OperatorSpec:
        g = extended_schett() if self.ring == EXTENDED_RING else schett()
        from .exactpoly import parse

        return OperatorSpec(self.kind, g, parse(self.seed_text, g.ring))


def _xyz(even_base, odd_base, per_m, di, dj):
    return Pattern(even_base, per_m, di, dj), Pattern(odd_base, per_m, di, dj)


def _specs() -> Dict[str, ArraySpec]:
    specs = {}
    # s: D^n(x);      x^{2i+1} y^{2j} z^{2m-2i-2j}  |  x^{2i} y^{2j+1} z^{2m-2i-2j+1}
    ev, od = _xyz((1, 0, 0), (0, 1, 1), (0, 0, 2), (2, 0, -2), (0, 2, -2))
    specs["s"] = ArraySpec("s", SCHETT_RING, "D", "x", ev, od)
    # a, c: (xD)^n(x), (Dx)^n(x);  x^{2i+1} y^{2j} z^{4m-2i-2j}  |  x^{2i+1} y^{2j+1} z^{4m-2i-2j+1}
    ev, od = _xyz((1, 0, 0), (1, 1, 1), (0, 0, 4), (2, 0, -2), (0, 2, -2))
    specs["a"] = ArraySpec("a", SCHETT_RING, "xD", "x", ev, od)
    specs["c"] = ArraySpec("c", SCHETT_RING, "Dx", "x", ev, od)
    # d: (Dx)^n(y);   x^{2i} y^{2j+1} z^{4m-2i-2j}  |  x^{2i} y^{2j} z^{4m-2i-2j+3}
    ev, od = _xyz((0, 1, 0), (0, 0, 3), (0, 0, 4), (2, 0, -2), (0, 2, -2))
    specs["d"] = ArraySpec("d", SCHETT_RING, "Dx", "y", ev, od)
    # b: (xD)^n(y);   x^{2i+2} y^{4m-1-2i-2j} z^{2j}  |  x^{2i+2} y^{4m-2i-2j} z^{2j+1}
    ev, od = _xyz((2, -1, 0), (2, 0, 1), (0, 4, 0), (2, -2, 0), (0, -2, 2))
    specs["b"] = ArraySpec("b", SCHETT_RING, "xD", "y", ev, od, base_rows={0: {(0, 0): 1}})
    # t, r: D^n(w), D^n(w^2);  w^e x^{2i} y^j z^{2m-2i-j}  |  w^e x^{2i+1} y^j z^{2m-2i-j}
    for name, e, seed in (("t", 1, "w"), ("r", 2, "w^2")):
        even = Pattern((e, 0, 0, 0), (0, 0, 0, 2), (0, 2, 0, -2), (0, 0, 1, -1))
        odd = Pattern((e, 1, 0, 0), (0, 0, 0, 2), (0, 2, 0, -2), (0, 0, 1, -1))
        specs[name] = ArraySpec(name, EXTENDED_RING, "D", seed, even, odd)
    return specs


SPECS = _specs()


@dataclass
class Triangle:
    name: str
    entries: Dict[Tuple[int, int, int], int]
    n_max: int
    provenance: str

    def get(self, n: int, i: int, j: int) -> int:
        return self.entries.get((n, i, j), 0)

    def __getitem__(self, key):
        return self.get(*key)

    def level(self, n: int) -> Dict[Tuple[int, int], int]:
        self._check(n)
        return {(i, j): v for (m, i, j), v in self.entries.items() if m == n}

    def _check(self, n: int):
        if not 0 <= n <= self.n_max:
            raise IndexError(f"level {n} outside 0..{self.n_max} of triangle {self.name}")

    def same_entries(self, other: "Triangle", n_max: Optional[int] = None) -> bool:
        top = min(self.n_max, other.n_max) if n_max is None else n_max
        mine = {k: v for k, v in self.entries.items() if k[0] <= top}
        theirs = {k: v for k, v in other.entries.items() if k[0] <= top}
        return mine == theirs

    def first_difference(self, other: "Triangle"):
        keys = sorted(set(self.entries) | set(other.entries))
        for k in keys:
            if k[0] <= min(self.n_max, other.n_max) and self.get(*k) != other.get(*k):
                return k, self.get(*k), other.get(*k)
        return None

    # aggregates ------------------------------------------------------------

    def total(self, n: int) -> int:
        return sum(self.level(n).values())

    def sum_over_j(self, n: int) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (i, _), v in self.level(n).items():
            out[i] = out.get(i, 0) + v
        return dict(sorted(out.items()))

    def sum_over_i(self, n: int) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (_, j), v in self.level(n).items():
            out[j] = out.get(j, 0) + v
        return dict(sorted(out.items()))

    def column(self, n: int, j: int) -> Dict[int, int]:
        """``{i: entry(n, i, j)}`` for fixed ``j``."""
        return {i: v for (i, jj), v in sorted(self.level(n).items()) if jj == j}

    def row(self, n: int, i: int) -> Dict[int, int]:
        return {j: v for (ii, j), v in sorted(self.level(n).items()) if ii == i}

    def antidiagonal(self, n: int, s: int) -> Dict[int, int]:
        """``{i: entry(n, i, s - i)}``."""
        return {i: v for (i, j), v in sorted(self.level(n).items()) if i + j == s}

    def generating_polynomial(self, n: int) -> Poly:
        return Poly(PQ_RING, {(i, j): v for (i, j), v in self.level(n).items()})

    # serialization ---------------------------------------------------------

    def rows(self) -> Iterator[Tuple[int, int, int, int]]:
        for (n, i, j), v in sorted(self.entries.items()):
            yield n, i, j, v

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "nmax": self.n_max,
            "provenance": self.provenance,
            "entries": [[n, i, j, str(v)] for n, i, j, v in self.rows()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Triangle":
        entries = {(n, i, j): int(v) for n, i, j, v in data["entries"]}
        return cls(data["name"], entries, data["nmax"], data.get("provenance", "unknown"))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "i", "j", "value"])
        for row in self.rows():
            w.writerow(row)
        return buf.getvalue()

    def pretty(self, n: int) -> str:
        lvl = self.level(n)
        if not lvl:
            return f"{self.name}_{n}: (empty)"
        imax = max(i for i, _ in lvl)
        jmax = max(j for _, j in lvl)
        width = max(len(str(v)) for v in lvl.values()) + 1
        lines = [f"{self.name}_{n},i,j  " + "".join(f"j={j}".rjust(width + 2) for j in range(jmax + 1))]
        for i in range(imax + 1):
            cells = "".join(str(lvl.get((i, j), 0)).rjust(width + 2) for j in range(jmax + 1))
            lines.append(f"i={i}".ljust(len(self.name) + 9) + cells)
        return "\n".join(lines)


def _spec(name: str) -> ArraySpec:
    try:
        return SPECS[name]
    except KeyError:
        raise ValueError(f"unknown triangle {name!r}; expected one of {NAMES}") from None


def extract(name: str, n_max: int) -> Triangle:
    """Read the triangle off iterated grammar derivatives."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    spec = _spec(name)
    levels = iterate_all(spec.operator(), n_max)
    entries: Dict[Tuple[int, int, int], int] = {}
    for n, poly in enumerate(levels):
        if n in spec.base_rows:
            for (i, j), v in spec.base_rows[n].items():
                entries[(n, i, j)] = v
            continue
        pat = spec.pattern(n)
        for exps, coef in poly.terms.items():
            ij = pat.decode(n, exps)
            if ij is None:
                raise PatternError(
                    f"{name}: monomial {Poly(poly.ring, {exps: 1})} at level n={n} "
                    f"does not match the exponent pattern"
                )
            entries[(n, *ij)] = coef
    return Triangle(name, entries, n_max, "grammar")


# Recurrences. Each entry: (coefficient(h, i, j), di, dj) contributing
# coefficient * prev[i + di, j + dj], with h = n // 2 for the target level n.
Term = Tuple[Callable[[int, int, int], int], int, int]

RECURRENCES: Dict[str, Dict[str, List[Term]]] = {
    "s": {
        "even": [
            (lambda h, i, j: 2 * j + 1, 0, 0),
            (lambda h, i, j: 2 * i + 2, 1, -1),
            (lambda h, i, j: 2 * h - 2 * i - 2 * j + 1, 0, -1),
        ],
        "odd": [
            (lambda h, i, j: 2 * i + 1, 0, 0),
            (lambda h, i, j: 2 * j + 2, -1, 1),
            (lambda h, i, j: 2 * h - 2 * i - 2 * j + 2, -1, 0),
        ],
    },
    "a": {
        "even": [
            (lambda h, i, j: 2 * i + 1, 0, -1),
            (lambda h, i, j: 2 * j + 1, -1, 0),
            (lambda h, i, j: 4 * h - 2 * i - 2 * j + 1, -1, -1),
        ],
        "odd": [
            (lambda h, i, j: 2 * i + 1, 0, 0),
            (lambda h, i, j: 2 * j + 2, -1, 1),
            (lambda h, i, j: 4 * h - 2 * i - 2 * j + 2, -1, 0),
        ],
    },
    "c": {
        "even": [
            (lambda h, i, j: 2 * i + 2, 0, -1),
            (lambda h, i, j: 2 * j + 1, -1, 0),
            (lambda h, i, j: 4 * h - 2 * i - 2 * j + 1, -1, -1),
        ],
        "odd": [
            (lambda h, i, j: 2 * i + 2, 0, 0),
            (lambda h, i, j: 2 * j + 2, -1, 1),
            (lambda h, i, j: 4 * h - 2 * i - 2 * j + 2, -1, 0),
        ],
    },
    "d": {
        "even": [
            (lambda h, i, j: 2 * i + 1, 0, 0),
            (lambda h, i, j: 2 * j + 2, -1, 1),
            (lambda h, i, j: 4 * h - 2 * i - 2 * j + 1, -1, 0),
        ],
        "odd": [
            (lambda h, i, j: 2 * i + 1, 0, -1),
            (lambda h, i, j: 2 * j + 1, -1, 0),
            (lambda h, i, j: 4 * h - 2 * i - 2 * j + 4, -1, -1),
        ],
    },
    "b": {
        "even": [
            (lambda h, i, j: 4 * h - 2 * i - 2 * j, -1, -1),
            (lambda h, i, j: 2 * i + 2, 0, -1),
            (lambda h, i, j: 2 * j + 1, -1, 0),
        ],
        "odd": [
            (lambda h, i, j: 4 * h - 2 * i - 2 * j + 1, -1, 0),
            (lambda h, i, j: 2 * i + 2, 0, 0),
            (lambda h, i, j: 2 * j + 2, -1, 1),
        ],
    },
}


def _wx_recurrence(weight: int) -> Dict[str, List[Term]]:
    # weight is the coefficient of the D(w^e) = e w^e x term
    return {
        "odd": [
            (lambda h, i, j: weight, 0, 0),
            (lambda h, i, j: 2 * i + 2, 1, -1),
            (lambda h, i, j: j + 1, 0, 1),
            (lambda h, i, j: 2 * h - 2 * i - j + 1, 0, -1),
        ],
        "even": [
            (lambda h, i, j: weight, -1, 0),
            (lambda h, i, j: 2 * i + 1, 0, -1),
            (lambda h, i, j: j + 1, -1, 1),
            (lambda h, i, j: 2 * h - 2 * i - j + 1, -1, -1),
        ],
    }


RECURRENCES["t"] = _wx_recurrence(1)
RECURRENCES["r"] = _wx_recurrence(2)

# first level produced by the recurrence; lower levels are base rows
_BASE = {
    "s": {0: {(0, 0): 1}},
    "a": {0: {(0, 0): 1}},
    "c": {0: {(0, 0): 1}},
    "d": {0: {(0, 0): 1}},
    "b": {0: {(0, 0): 1}, 1: {(0, 0): 1}},
    "t": {0: {(0, 0): 1}},
    "r": {0: {(0, 0): 1}},
}


def recur(name: str, n_max: int) -> Triangle:
    """Fill the triangle level by level from the two-step recurrences."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    spec = _spec(name)
    rules = RECURRENCES[name]
    base = _BASE[name]
    entries: Dict[Tuple[int, int, int], int] = {}
    prev: Dict[Tuple[int, int], int] = {}
    for n in range(n_max + 1):
        if n in base:
            cur = dict(base[n])
        else:
            h = n // 2
            cur = {}
            for i, j in spec.pattern(n).region(n):
                v = 0
                for coef, di, dj in rules["odd" if n % 2 else "even"]:
                    pv = prev.get((i + di, j + dj))
                    if pv:
                        v += coef(h, i, j) * pv
                if v:
                    cur[(i, j)] = v
        for (i, j), v in cur.items():
            entries[(n, i, j)] = v
        prev = cur
    return Triangle(name, entries, n_max, "recurrence")


@lru_cache(maxsize=None)
def _cached(name: str, n_max: int, method: str) -> Triangle:
    return extract(name, n_max) if method == "grammar" else recur(name, n_max)


def get_triangle(name: str, n_max: int, method: str = "grammar") -> Triangle:
    """Memoized triangle; ``method`` is ``"grammar"`` or ``"recurrence"``."""
    if method not in ("grammar", "recurrence"):
        raise ValueError(f"unknown method {method!r}")
    _spec(name)
    return _cached(name, n_max, method)


def generating_polynomial(tr: Triangle, n: int) -> Poly:
    return tr.generating_polynomial(n)
