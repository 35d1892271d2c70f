"""Sparse multivariate polynomials with exact integer coefficients.

A polynomial lives in a ring given by an ordered tuple of variable names.
Terms are stored as ``{exponent tuple: int}`` with no zero coefficients, so
structural equality of the term maps is polynomial equality.
"""
from __future__ import annotations

import re
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Exponents = Tuple[int, ...]


class RingMismatchError(ValueError):
    """Operands live over different variable sets."""


class UnknownVariableError(KeyError):
    """A variable name is not part of the ring."""


class VariableSet(tuple):
    """Ordered, duplicate-free tuple of variable names."""

    def __new__(cls, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise ValueError(f"invalid variable name {name!r}")
        return super().__new__(cls, names)

    def index(self, name):  # noqa: D401 - tuple override with a better error
        try:
            return super().index(name)
        except ValueError:
            raise UnknownVariableError(name) from None


def ring(*names: str) -> VariableSet:
    if len(names) == 1 and not isinstance(names[0], str):
        names = tuple(names[0])
    return VariableSet(names)


Scalar = Union[int, "Poly"]


class Poly:
    """Immutable sparse polynomial over ``Z[ring]``."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Sequence[str], terms: Mapping[Exponents, int] | None = None):
        if not isinstance(ring, VariableSet):
            ring = VariableSet(ring)
        self.ring = ring
        clean: Dict[Exponents, int] = {}
        if terms:
            width = len(ring)
            for exps, coef in terms.items():
                coef = int(coef)
                if coef == 0:
                    continue
                exps = tuple(int(e) for e in exps)
                if len(exps) != width or any(e < 0 for e in exps):
                    raise ValueError(f"bad exponent vector {exps} for ring {tuple(ring)}")
                clean[exps] = clean.get(exps, 0) + coef
                if clean[exps] == 0:
                    del clean[exps]
        self.terms = clean
        self._hash = None

    # ---- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, ring: VariableSet, terms: Dict[Exponents, int]) -> "Poly":
        # trusted fast path: terms already canonical
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, ring: Sequence[str], c: int) -> "Poly":
        ring = VariableSet(ring) if not isinstance(ring, VariableSet) else ring
        return cls(ring, {(0,) * len(ring): c})

    @classmethod
    def var(cls, ring: Sequence[str], name: str) -> "Poly":
        ring = VariableSet(ring) if not isinstance(ring, VariableSet) else ring
        exps = [0] * len(ring)
        exps[ring.index(name)] = 1
        return cls(ring, {tuple(exps): 1})

    @classmethod
    def monomial(cls, ring: Sequence[str], exps: Sequence[int], coef: int = 1) -> "Poly":
        return cls(ring, {tuple(exps): coef})

    def gens(self):
        return tuple(Poly.var(self.ring, v) for v in self.ring)

    # ---- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coeff(self, exps: Sequence[int]) -> int:
        return self.terms.get(tuple(exps), 0)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def constant_term(self) -> int:
        return self.terms.get((0,) * len(self.ring), 0)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.constant(self.ring, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # ---- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError(f"{tuple(self.ring)} vs {tuple(other.ring)}")
            return other
        if isinstance(other, int):
            return Poly.constant(self.ring, other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return Poly._raw(self.ring, {})
            return Poly._raw(self.ring, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out: Dict[Exponents, int] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return Poly._raw(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.constant(self.ring, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, c: int) -> "Poly":
        """Divide every coefficient by ``c``; raises if any division is inexact."""
        out = {}
        for e, v in self.terms.items():
            q, r = divmod(v, c)
            if r:
                raise ArithmeticError(f"coefficient {v} not divisible by {c}")
            out[e] = q
        return Poly._raw(self.ring, out)

    # ---- calculus and substitution -------------------------------------------

    def diff(self, v: str) -> "Poly":
        k = self.ring.index(v)
        out = {}
        for e, c in self.terms.items():
            if e[k]:
                ne = e[:k] + (e[k] - 1,) + e[k + 1:]
                out[ne] = c * e[k]
        return Poly._raw(self.ring, out)

    def subs(self, bindings: Mapping[str, Scalar], target: Sequence[str] | None = None) -> "Poly":
        return substitute(self, bindings, target)

    def eval(self, point: Mapping[str, complex]) -> complex:
        return eval_complex(self, point)

    def change_ring(self, target: Sequence[str]) -> "Poly":
        """Re-embed into a ring containing every variable that actually occurs."""
        target = target if isinstance(target, VariableSet) else VariableSet(target)
        used = {v for e in self.terms for v, k in zip(self.ring, e) if k}
        missing = used - set(target)
        if missing:
            raise RingMismatchError(f"variables {sorted(missing)} not in target ring")
        pos = [target.index(v) if v in target else None for v in self.ring]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(target)
            for p, k in zip(pos, e):
                if p is not None:
                    ne[p] += k
            out[tuple(ne)] = c
        return Poly._raw(target, out)

    # ---- serialization --------------------------------------------------------

    def sorted_terms(self):
        """Terms in graded lexicographic order (highest total degree first)."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-k for k in t[0])))

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"Poly({to_text(self)!r}, ring={tuple(self.ring)})"

    def to_json(self):
        return [{"exponents": list(e), "coef": str(c)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, ring: Sequence[str], data) -> "Poly":
        return cls(ring, {tuple(t["exponents"]): int(t["coef"]) for t in data})


def _check_same(a: Poly, b: Poly):
    if a.ring != b.ring:
        raise RingMismatchError(f"{tuple(a.ring)} vs {tuple(b.ring)}")


def add(a: Poly, b: Poly) -> Poly:
    _check_same(a, b)
    return a + b


def mul(a: Poly, b: Poly) -> Poly:
    _check_same(a, b)
    return a * b


def partial_derivative(a: Poly, v: str) -> Poly:
    return a.diff(v)


def substitute(a: Poly, bindings: Mapping[str, Scalar], target: Sequence[str] | None = None) -> Poly:
    """Simultaneous substitution ``v -> bindings[v]``.

    Unbound variables are kept as themselves, which requires them to exist in
    the target ring. The target ring defaults to the ring of the images (or
    ``a.ring`` if every image is an integer).
    """
    for v in bindings:
        a.ring.index(v)
    images = [b for b in bindings.values() if isinstance(b, Poly)]
    if target is None:
        target = images[0].ring if images else a.ring
    target = target if isinstance(target, VariableSet) else VariableSet(target)
    for img in images:
        if img.ring != target:
            raise RingMismatchError("substitution images must share one ring")

    gens = []
    for v in a.ring:
        if v in bindings:
            b = bindings[v]
            gens.append(b if isinstance(b, Poly) else Poly.constant(target, int(b)))
        else:
            gens.append(Poly.var(target, v))

    # cache powers per variable; polynomials here are small so this is plenty
    power_cache: Dict[Tuple[int, int], Poly] = {}

    def power(k: int, e: int) -> Poly:
        key = (k, e)
        if key not in power_cache:
            power_cache[key] = gens[k] ** e
        return power_cache[key]

    acc: Dict[Exponents, int] = {}
    for exps, c in a.terms.items():
        term = Poly.constant(target, c)
        for k, e in enumerate(exps):
            if e:
                term = term * power(k, e)
        for te, tc in term.terms.items():
            acc[te] = acc.get(te, 0) + tc
    return Poly._raw(target, {e: c for e, c in acc.items() if c})


def eval_complex(a: Poly, point: Mapping[str, complex]) -> complex:
    """Evaluate numerically by Horner's rule in the first variable, recursively."""
    missing = [v for v in a.ring if v not in point]
    if missing:
        raise UnknownVariableError(f"unbound variables {missing}")
    values = [complex(point[v]) for v in a.ring]
    return _horner(list(a.terms.items()), values, 0)


def _horner(terms, values, k) -> complex:
    if not terms:
        return 0j
    if k == len(values):
        return complex(sum(float(c) for _, c in terms))
    groups: Dict[int, list] = {}
    for e, c in terms:
        groups.setdefault(e[k], []).append((e, c))
    x = values[k]
    result = 0j
    prev = max(groups)
    for deg in sorted(groups, reverse=True):
        result = result * x ** (prev - deg) + _horner(groups[deg], values, k + 1)
        prev = deg
    return result * x ** prev


# ---- text format --------------------------------------------------------------

def _monomial_text(ring, exps) -> str:
    parts = []
    for v, k in zip(ring, exps):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def to_text(a: Poly) -> str:
    if not a.terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(a.sorted_terms()):
        mono = _monomial_text(a.ring, e)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if i == 0:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()]))")


class _Parser:
    """Recursive-descent parser for integer polynomial expressions.

    Accepts ``+ - *``, ``^`` or ``**`` with non-negative integer exponents,
    parentheses, implicit multiplication is not supported.
    """

    def __init__(self, text: str, ring: VariableSet):
        self.ring = ring
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse {text[pos:]!r}")
            num, name, op = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif name is not None:
                self.tokens.append(("var", name))
            else:
                self.tokens.append(("op", "^" if op == "**" else op))
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            raise ValueError("empty polynomial expression")
        result = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"unexpected token {self.peek()[1]!r}")
        return result

    def expr(self) -> Poly:
        kind, val = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        result = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            t = self.term()
            result = result + t if op == "+" else result - t
        return result

    def term(self) -> Poly:
        result = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            result = result * self.factor()
        return result

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ValueError("exponent must be a non-negative integer")
            base = base ** val
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return Poly.constant(self.ring, val)
        if kind == "var":
            return Poly.var(self.ring, val)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parenthesis")
            return inner
        if (kind, val) == ("op", "-"):
            return -self.atom()
        raise ValueError(f"unexpected token {val!r}")


def parse(text: str, ring: Sequence[str]) -> Poly:
    ring = ring if isinstance(ring, VariableSet) else VariableSet(ring)
    return _Parser(text, ring).parse()
