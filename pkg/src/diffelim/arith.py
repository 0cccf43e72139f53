"""Exact coefficient arithmetic.

Two coefficient fields are supported:

* ``QQ`` -- the rationals, with elements of type :class:`Rational`
  (FLINT's ``fmpq``; always stored in lowest terms with a positive
  denominator).
* ``RatFuncField(params)`` -- rational functions in a fixed tuple of
  parameter symbols, elements of type :class:`RatFunc`.

Elements of both fields support the usual arithmetic dunders and mix
freely with Python ints, so polynomial code can treat coefficients
generically.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterable, Union

from flint import fmpq, fmpq_mpoly, fmpq_mpoly_ctx, fmpz

Rational = fmpq


class ArithmeticDomainError(ArithmeticError):
    """Raised for invalid field operations (division by zero, mixed fields)."""


def rational(num, den=1) -> Rational:
    """Build a canonical rational from ints, strings, or rationals."""
    if den == 0:
        raise ArithmeticDomainError("zero denominator")
    return fmpq(num) / fmpq(den)


def rat_arith(a: Rational, b: Rational, op: str) -> Rational:
    """Apply ``op`` (one of ``+ - * /``) to two rationals."""
    a, b = fmpq(a), fmpq(b)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if not b:
            raise ArithmeticDomainError("division by zero")
        return a / b
    raise ValueError(f"unknown operator {op!r}")


class RationalField:
    """The field of rational numbers."""

    params: tuple[str, ...] = ()
    zero = fmpq(0)
    one = fmpq(1)

    def __call__(self, value) -> Rational:
        return self.convert(value)

    def convert(self, value) -> Rational:
        if isinstance(value, fmpq):
            return value
        if isinstance(value, (int, fmpz)):
            return fmpq(value)
        if isinstance(value, RatFunc):
            if value.is_constant():
                return value.constant_value()
            raise ArithmeticDomainError(f"{value} is not a rational number")
        if isinstance(value, str):
            return fmpq(value)
        raise TypeError(f"cannot convert {type(value).__name__} to a rational")

    def is_constant(self, c) -> bool:
        return True

    def render(self, c: Rational) -> str:
        return str(c)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def __repr__(self) -> str:
        return "QQ"


QQ = RationalField()


@lru_cache(maxsize=None)
def _context(params: tuple[str, ...]) -> fmpq_mpoly_ctx:
    return fmpq_mpoly_ctx.get(params, "lex")


class RatFuncField:
    """Fraction field QQ(params) of a multivariate polynomial ring.

    Elements are reduced fractions ``num/den`` with ``gcd(num, den) = 1`` and
    ``den`` monic with respect to the lex order on ``params``.
    """

    def __init__(self, params: Iterable[str]):
        params = tuple(params)
        if not params:
            raise ValueError("RatFuncField needs at least one parameter; use QQ")
        if len(set(params)) != len(params):
            raise ValueError(f"duplicate parameter names in {params}")
        self.params = params
        self.ctx = _context(params)
        self.zero = RatFunc(self, self.ctx.from_dict({}), self.ctx.from_dict({(0,) * len(params): 1}), True)
        self.one = RatFunc(self, self.ctx.from_dict({(0,) * len(params): 1}), self.zero.den, True)

    def __eq__(self, other) -> bool:
        return isinstance(other, RatFuncField) and other.params == self.params

    def __hash__(self) -> int:
        return hash(("QQ(...)", self.params))

    def __repr__(self) -> str:
        return f"QQ({', '.join(self.params)})"

    def __call__(self, value) -> "RatFunc":
        return self.convert(value)

    def gen(self, name: str) -> "RatFunc":
        i = self.params.index(name)
        return RatFunc(self, self.ctx.gens()[i], self.one.den, True)

    def gens(self) -> tuple["RatFunc", ...]:
        return tuple(self.gen(p) for p in self.params)

    def _poly(self, value) -> fmpq_mpoly:
        return self.ctx.from_dict({(0,) * len(self.params): fmpq(value)}) if value else self.ctx.from_dict({})

    def convert(self, value) -> "RatFunc":
        if isinstance(value, RatFunc):
            if value.field is self or value.field == self:
                return value if value.field is self else RatFunc(self, value.num, value.den, True)
            return self.from_fraction(value.num, value.den, value.field.params)
        if isinstance(value, (int, fmpz, fmpq)):
            return RatFunc(self, self._poly(value), self.one.den, True)
        if isinstance(value, str):
            return RatFunc(self, self._poly(fmpq(value)), self.one.den, True)
        raise TypeError(f"cannot convert {type(value).__name__} to {self!r}")

    def from_fraction(self, num: fmpq_mpoly, den: fmpq_mpoly, names: tuple[str, ...]) -> "RatFunc":
        """Re-home a fraction written over parameter names ``names``."""
        return RatFunc(self, self._rehome(num, names), self._rehome(den, names))

    def _rehome(self, p: fmpq_mpoly, names: tuple[str, ...]) -> fmpq_mpoly:
        pos = []
        for n in names:
            if n not in self.params:
                if any(e[names.index(n)] for e in p.to_dict()):
                    raise ArithmeticDomainError(f"parameter {n} is not in {self!r}")
                pos.append(None)
            else:
                pos.append(self.params.index(n))
        out = {}
        for exps, c in p.to_dict().items():
            e = [0] * len(self.params)
            for k, v in zip(pos, exps):
                if k is not None:
                    e[k] = v
            out[tuple(e)] = c
        return self.ctx.from_dict(out)

    def is_constant(self, c: "RatFunc") -> bool:
        return c.is_constant()

    def render(self, c: "RatFunc") -> str:
        return str(c)


class RatFunc:
    """An element of ``QQ(params)``; immutable."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: RatFuncField, num: fmpq_mpoly, den: fmpq_mpoly, reduced: bool = False):
        if not reduced:
            if den.is_zero():
                raise ArithmeticDomainError("division by zero rational function")
            if num.is_zero():
                den = field.ctx.from_dict({(0,) * len(field.params): 1})
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num = num / g
                    den = den / g
                lc = den.leading_coefficient()
                if lc != 1:
                    num = num / lc
                    den = den / lc
        self.field = field
        self.num = num
        self.den = den

    # -- helpers -------------------------------------------------------
    def _coerce(self, other) -> "RatFunc | None":
        if isinstance(other, RatFunc):
            if other.field is self.field or other.field == self.field:
                return other
            raise ArithmeticDomainError(f"mixed fields {self.field!r} and {other.field!r}")
        if isinstance(other, (int, fmpz, fmpq)):
            return self.field.convert(other)
        return None

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Rational:
        if not self.is_constant():
            raise ArithmeticDomainError(f"{self} is not constant")
        if self.num.is_zero():
            return fmpq(0)
        return self.num.leading_coefficient() / self.den.leading_coefficient()

    def numerator(self) -> fmpq_mpoly:
        return self.num

    def denominator(self) -> fmpq_mpoly:
        return self.den

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            return self
        if not self:
            return o
        if self.den == o.den:
            return RatFunc(self.field, self.num + o.num, self.den)
        return RatFunc(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den, True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, fmpz, fmpq)):
            if not other:
                return self.field.zero
            return RatFunc(self.field, self.num * other, self.den, True)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o or not self:
            return self.field.zero
        if self.den.is_one() and o.den.is_one():
            return RatFunc(self.field, self.num * o.num, self.den, True)
        return RatFunc(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self:
            raise ArithmeticDomainError("division by zero rational function")
        return RatFunc(self.field, self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ArithmeticDomainError("division by zero rational function")
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.field, self.num ** n, self.den ** n, True)

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.field == other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, fmpz, fmpq)):
            return self.den.is_one() and self.num == self.field._poly(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.constant_value())
        return hash((str(self.num), str(self.den)))

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def subs(self, values: dict[str, Rational]) -> Union["RatFunc", Rational]:
        """Substitute rational values for (some) parameters."""
        vals = {k: fmpq(v) for k, v in values.items() if k in self.field.params}
        num = self.num.subs(vals) if vals else self.num
        den = self.den.subs(vals) if vals else self.den
        if den.is_zero():
            raise ArithmeticDomainError("substitution annihilates a denominator")
        return RatFunc(self.field, num, den)


def ratfunc_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    """Apply ``op`` (one of ``+ - * /``) to two rational functions."""
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        return a / b
    raise ValueError(f"unknown operator {op!r}")


def make_field(params: Iterable[str]):
    """QQ if there are no parameters, else QQ(params)."""
    params = tuple(params)
    return RatFuncField(params) if params else QQ


def is_rational_field(field) -> bool:
    return isinstance(field, RationalField)


class Rng:
    """Seedable deterministic sampler for random substitutions.

    Backed by :class:`random.Random` (Mersenne Twister), which gives
    arbitrarily large uniform integers via ``randrange``.
    """

    def __init__(self, seed: int = 0):
        self.seed = seed
        self._random = random.Random(seed)

    def randrange(self, n: int) -> int:
        return self._random.randrange(n)


def sample_rational(range_size: int, rng: Rng) -> Rational:
    """Uniform integer in ``{0, ..., range_size - 1}`` as a rational."""
    if range_size < 1:
        raise ValueError("range_size must be positive")
    return fmpq(rng.randrange(range_size))
