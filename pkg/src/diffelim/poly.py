"""Sparse multivariate polynomials with lex, grevlex and block orders.

A :class:`Poly` is a dict from exponent tuples to nonzero coefficients,
bound to a :class:`PolyRing` (variable table, monomial order, coefficient
field).  Polynomials are treated as immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .arith import QQ

NEG_INF = float("-inf")

Monomial = tuple  # tuple[int, ...]


class RingMismatchError(ValueError):
    """Operands live in different polynomial rings."""


@dataclass(frozen=True)
class VarTable:
    """Ordered variable names, each tagged with a block index.

    Blocks are contiguous runs of variables numbered 0, 1, 2, ...; block 0
    is the most significant one under a block order.
    """

    names: tuple[str, ...]
    blocks: tuple[int, ...] = None

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        blocks = tuple(self.blocks) if self.blocks is not None else (0,) * len(names)
        object.__setattr__(self, "blocks", blocks)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if len(blocks) != len(names):
            raise ValueError("one block index per variable required")
        if blocks:
            if blocks[0] != 0 or any(b - a not in (0, 1) for a, b in zip(blocks, blocks[1:])):
                raise ValueError(f"block indices must be contiguous from 0, got {blocks}")

    def __len__(self) -> int:
        return len(self.names)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {n: i for i, n in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    @property
    def nblocks(self) -> int:
        return (self.blocks[-1] + 1) if self.blocks else 0

    def block_slices(self) -> list[slice]:
        out = []
        start = 0
        for b in range(self.nblocks):
            end = start
            while end < len(self.blocks) and self.blocks[end] == b:
                end += 1
            out.append(slice(start, end))
            start = end
        return out

    def block_vars(self, b: int) -> tuple[str, ...]:
        return self.names[self.block_slices()[b]]


@dataclass(frozen=True)
class MonomialOrder:
    """``lex``, ``grevlex`` or ``block``.

    For ``block`` the variable table's blocks are compared in order (block 0
    first), each with its own inner order from ``inner``; missing entries
    default to grevlex.
    """

    kind: str = "grevlex"
    inner: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        for k in self.inner:
            if k not in ("lex", "grevlex"):
                raise ValueError(f"unknown inner order {k!r}")

    def is_graded(self, table: VarTable) -> bool:
        """True if the order refines total degree."""
        if self.kind == "grevlex":
            return True
        if self.kind == "block":
            return table.nblocks <= 1 and (not self.inner or self.inner[0] == "grevlex")
        return False

    def key_function(self, table: VarTable) -> Callable[[Monomial], tuple]:
        """Map a monomial to a tuple of ints; larger tuple = larger monomial."""
        if self.kind == "lex":
            return tuple
        if self.kind == "grevlex":
            return _grevlex_key
        parts = []
        for b, sl in enumerate(table.block_slices()):
            kind = self.inner[b] if b < len(self.inner) else "grevlex"
            parts.append((sl.start, sl.stop, kind))
        if len(parts) == 1 and parts[0][2] == "grevlex":
            return _grevlex_key

        def key(m):
            out = []
            for start, stop, kind in parts:
                seg = m[start:stop]
                if kind == "lex":
                    out.extend(seg)
                else:
                    out.append(sum(seg))
                    out.extend([-e for e in reversed(seg)])
            return tuple(out)

        return key


def _grevlex_key(m):
    return (sum(m), *[-e for e in reversed(m)])


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def block_order(*inner: str) -> MonomialOrder:
    return MonomialOrder("block", tuple(inner))


@dataclass(frozen=True)
class PolyRing:
    """Polynomial ring ``field[vars]`` equipped with a monomial order."""

    vars: VarTable
    order: MonomialOrder = GREVLEX
    field: object = dc_field(default=QQ)

    @classmethod
    def make(cls, names: Sequence[str], order: MonomialOrder = GREVLEX, field=QQ,
             blocks: Optional[Sequence[int]] = None) -> "PolyRing":
        return cls(VarTable(tuple(names), None if blocks is None else tuple(blocks)), order, field)

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def names(self) -> tuple[str, ...]:
        return self.vars.names

    @cached_property
    def key(self) -> Callable[[Monomial], tuple]:
        return self.order.key_function(self.vars)

    @cached_property
    def zero_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.vars, order, self.field)

    def with_field(self, field) -> "PolyRing":
        return PolyRing(self.vars, self.order, field)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.constant(1)

    def constant(self, c) -> "Poly":
        c = self.field.convert(c)
        return Poly(self, {self.zero_monomial: c} if c else {})

    def gen(self, name: str) -> "Poly":
        e = [0] * self.nvars
        e[self.vars.index(name)] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self) -> tuple["Poly", ...]:
        return tuple(self.gen(n) for n in self.names)

    def from_dict(self, terms: Mapping[Monomial, object]) -> "Poly":
        out = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != self.nvars or any(e < 0 for e in m):
                raise ValueError(f"bad exponent vector {m} for {self.nvars} variables")
            c = self.field.convert(c)
            if c:
                out[m] = c
        return Poly(self, out)

    def monomial(self, m: Monomial, c=1) -> "Poly":
        return self.from_dict({m: c})

    def convert(self, p: "Poly") -> "Poly":
        """Move ``p`` into this ring, matching variables by name."""
        if p.ring == self:
            return p
        pos = [self.vars.index(n) if n in self.vars else None for n in p.ring.names]
        out = {}
        conv = self.field.convert
        for m, c in p.terms.items():
            e = [0] * self.nvars
            for k, v in zip(pos, m):
                if v:
                    if k is None:
                        raise RingMismatchError(f"{p.ring.names} has variables outside {self.names}")
                    e[k] = v
            out[tuple(e)] = conv(c)
        return Poly(self, out)


class Poly:
    """Sparse polynomial: ``{exponent tuple: nonzero coefficient}``."""

    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lm = None

    # -- basic queries -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_monomial in self.terms)

    def constant_coefficient(self):
        return self.terms.get(self.ring.zero_monomial, self.ring.field.zero)

    def variables(self) -> set[str]:
        names = self.ring.names
        return {names[i] for m in self.terms for i, e in enumerate(m) if e}

    def total_degree(self, block: Optional[int] = None):
        """Max total degree over terms, optionally restricted to one block.

        Returns ``NEG_INF`` for the zero polynomial.
        """
        if not self.terms:
            return NEG_INF
        if block is None:
            return max(sum(m) for m in self.terms)
        sl = self.ring.vars.block_slices()[block]
        return max(sum(m[sl]) for m in self.terms)

    def degree_in(self, names: Iterable[str]):
        """Max total degree in the given subset of variables."""
        if not self.terms:
            return NEG_INF
        idx = [self.ring.vars.index(n) for n in names]
        return max(sum(m[i] for i in idx) for m in self.terms)

    def leading_monomial(self) -> Monomial:
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            self._lm = max(self.terms, key=self.ring.key)
        return self._lm

    def leading_term(self, order: Optional[MonomialOrder] = None):
        """``(monomial, coefficient)`` of the order-maximal term."""
        if order is None or order == self.ring.order:
            m = self.leading_monomial()
        else:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            m = max(self.terms, key=order.key_function(self.ring.vars))
        return m, self.terms[m]

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    # -- arithmetic ----------------------------------------------------
    def _check(self, other: "Poly") -> None:
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingMismatchError("polynomials belong to different rings")

    def _lift(self, other) -> Optional["Poly"]:
        if isinstance(other, Poly):
            self._check(other)
            return other
        try:
            return self.ring.constant(other)
        except (TypeError, ArithmeticError):
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            o = self._lift(other)
            if o is None:
                return NotImplemented
            c = o.constant_coefficient()
            return self.scale(c)
        self._check(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return Poly(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        if not c:
            return Poly(self.ring, {})
        return Poly(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_monomial(self, mono: Monomial, c=1) -> "Poly":
        return Poly(self.ring, {tuple(a + b for a, b in zip(m, mono)): v * c for m, v in self.terms.items()})

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        return self if lc == 1 else self.scale(1 / lc)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.constant(other).terms
        except (TypeError, ArithmeticError):
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- evaluation ----------------------------------------------------
    def evaluate(self, assignment: Mapping[str, object]) -> "Poly":
        """Substitute values for some variables; result stays in this ring."""
        if not assignment:
            return self
        idx = {self.ring.vars.index(k): self.ring.field.convert(v) for k, v in assignment.items()}
        out: dict = {}
        for m, c in self.terms.items():
            e = list(m)
            for i, v in idx.items():
                if e[i]:
                    c = c * v ** e[i]
                    e[i] = 0
            if not c:
                continue
            t = tuple(e)
            w = out.get(t)
            out[t] = c if w is None else w + c
        return Poly(self.ring, {m: c for m, c in out.items() if c})

    def __call__(self, assignment: Mapping[str, object]):
        """Evaluate at a total assignment and return the coefficient."""
        p = self.evaluate(assignment)
        if not p.is_constant():
            raise ValueError(f"assignment leaves variables {sorted(p.variables())}")
        return p.constant_coefficient()

    # -- rendering -----------------------------------------------------
    def __str__(self) -> str:
        return render_terms(self.sorted_terms(), self.ring.names)

    def __repr__(self) -> str:
        return f"Poly({self})"


def monomial_str(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for n, e in zip(names, m):
        if e == 1:
            parts.append(n)
        elif e:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def coefficient_str(c) -> tuple[str, bool]:
    """Rendered coefficient and whether it is negative."""
    s = str(c)
    if hasattr(c, "is_constant") and not c.is_constant():
        if not (c.den.is_one() and len(c.num) == 1):
            return f"({s})", False
    if s.startswith("-"):
        return s[1:], True
    return s, False


def render_terms(terms: Sequence[tuple[Monomial, object]], names: Sequence[str]) -> str:
    """Canonical text: terms in the given order, ``^`` powers, explicit ``*``."""
    if not terms:
        return "0"
    out = []
    for i, (m, c) in enumerate(terms):
        mono = monomial_str(m, names)
        cs, neg = coefficient_str(c)
        if mono:
            body = mono if cs == "1" else f"{cs}*{mono}"
        else:
            body = cs
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
