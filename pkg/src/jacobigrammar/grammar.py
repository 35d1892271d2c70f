"""Formal derivatives induced by context-free grammars (in Chen's sense).

A grammar maps each letter to a polynomial; the induced derivation extends
this map by linearity and the Leibniz rule. Letters without a rule are
constants.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb
from typing import Dict, List, Mapping, Sequence

from .exactpoly import Poly, RingMismatchError, VariableSet, parse, to_text

SCHETT_RING = VariableSet(("x", "y", "z"))
EXTENDED_RING = VariableSet(("w", "x", "y", "z"))
EULERIAN_RING = VariableSet(("w", "x"))


class Grammar:
    """Substitution rules ``letter -> polynomial`` over a fixed ring."""

    def __init__(self, ring: Sequence[str], rules: Mapping[str, Poly | str]):
        self.ring = ring if isinstance(ring, VariableSet) else VariableSet(ring)
        self.rules: Dict[str, Poly] = {}
        for v, img in rules.items():
            self.ring.index(v)
            if isinstance(img, str):
                img = parse(img, self.ring)
            if img.ring != self.ring:
                raise RingMismatchError(f"rule for {v} lives in {tuple(img.ring)}")
            self.rules[v] = img
        # per-variable rule terms, indexed by ring position, for the hot loop
        self._rule_terms = [
            list(self.rules[v].terms.items()) if v in self.rules else None for v in self.ring
        ]

    @classmethod
    def from_string(cls, text: str, ring: Sequence[str] | None = None) -> "Grammar":
        """Parse ``"x->y*z; y->x*z; z->x*y"``.

        Without an explicit ring the letters are the rule heads followed by
        any other letters in the images, in order of first appearance.
        """
        pairs = []
        for chunk in text.replace(",", ";").split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            if "->" not in chunk:
                raise ValueError(f"rule {chunk!r} lacks '->'")
            head, img = (s.strip() for s in chunk.split("->", 1))
            pairs.append((head, img))
        if ring is None:
            names: List[str] = []
            for head, img in pairs:
                if head not in names:
                    names.append(head)
            for _, img in pairs:
                for name in re.findall(r"[A-Za-z_][A-Za-z0-9_]*", img):
                    if name not in names:
                        names.append(name)
            ring = names
        ring = VariableSet(ring)
        return cls(ring, {h: parse(img, ring) for h, img in pairs})

    def __str__(self):
        return "; ".join(f"{v}->{to_text(self.rules[v])}" for v in self.ring if v in self.rules)

    def __repr__(self):
        return f"Grammar({str(self)!r})"

    def __eq__(self, other):
        return isinstance(other, Grammar) and self.ring == other.ring and self.rules == other.rules

    def __hash__(self):
        return hash((self.ring, tuple(sorted((k, hash(v)) for k, v in self.rules.items()))))


def schett() -> Grammar:
    """x -> yz, y -> xz, z -> xy."""
    return Grammar.from_string("x->y*z; y->x*z; z->x*y", SCHETT_RING)


def extended_schett() -> Grammar:
    """Schett's rules plus w -> wx."""
    return Grammar.from_string("w->w*x; x->y*z; y->x*z; z->x*y", EXTENDED_RING)


def eulerian() -> Grammar:
    """w -> wx, x -> wx."""
    return Grammar.from_string("w->w*x; x->w*x", EULERIAN_RING)


NAMED_GRAMMARS = {"schett": schett, "extended": extended_schett, "eulerian": eulerian}


def derive(g: Grammar, a: Poly) -> Poly:
    if a.ring != g.ring:
        raise RingMismatchError(f"{tuple(a.ring)} vs grammar ring {tuple(g.ring)}")
    out: Dict[tuple, int] = {}
    rule_terms = g._rule_terms
    for exps, c in a.terms.items():
        for k, e in enumerate(exps):
            rt = rule_terms[k]
            if not e or rt is None:
                continue
            ce = c * e
            for re_, rc in rt:
                ne = tuple(
                    ek - 1 + rk if idx == k else ek + rk
                    for idx, (ek, rk) in enumerate(zip(exps, re_))
                )
                out[ne] = out.get(ne, 0) + ce * rc
    return Poly._raw(g.ring, {e: c for e, c in out.items() if c})


KINDS = ("D", "xD", "Dx")


@dataclass(frozen=True)
class OperatorSpec:
    kind: str
    grammar: Grammar
    seed: Poly
    multiplier: str = "x"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"operator kind must be one of {KINDS}, got {self.kind!r}")
        if self.seed.ring != self.grammar.ring:
            raise RingMismatchError("seed must live in the grammar's ring")

    def step(self, a: Poly) -> Poly:
        g = self.grammar
        if self.kind == "D":
            return derive(g, a)
        m = Poly.var(g.ring, self.multiplier)
        if self.kind == "xD":
            return m * derive(g, a)
        return derive(g, m * a)


def iterate_all(op: OperatorSpec, n: int) -> List[Poly]:
    """Return ``[op^0(seed), ..., op^n(seed)]``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    seq = [op.seed]
    for _ in range(n):
        seq.append(op.step(seq[-1]))
    return seq


def iterate(op: OperatorSpec, n: int) -> Poly:
    return iterate_all(op, n)[-1]


def eulerian_sanity(n: int) -> Poly:
    """D^n(w) for the grammar w -> wx, x -> wx."""
    if n < 1:
        raise ValueError("n must be >= 1")
    g = eulerian()
    return iterate(OperatorSpec("D", g, Poly.var(g.ring, "w")), n)


def leibniz_power(g: Grammar, u: Poly, v: Poly, n: int) -> Poly:
    """D^n(uv) expanded as sum_k C(n,k) D^k(u) D^(n-k)(v)."""
    du = iterate_all(OperatorSpec("D", g, u), n)
    dv = iterate_all(OperatorSpec("D", g, v), n)
    total = Poly(g.ring)
    for k in range(n + 1):
        total = total + du[k] * dv[n - k] * comb(n, k)
    return total
