"""Difference polynomials, transforms, prolongation and flattening.

A difference polynomial is an ordinary polynomial in the shifted unknowns
``s^j(v)`` (``j >= 0``) whose coefficients lie in QQ or QQ(params); the
shift acts as the identity on coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .arith import QQ, ArithmeticDomainError, make_field
from .poly import Poly, PolyRing, VarTable, block_order, GREVLEX, render_terms


@dataclass(frozen=True, order=True)
class DiffVar:
    """The transform ``s^shift(base)``."""

    base: str
    shift: int = 0

    def __post_init__(self):
        if self.shift < 0:
            raise ValueError("shifts must be non-negative")

    def __str__(self) -> str:
        if self.shift == 0:
            return self.base
        if self.shift == 1:
            return f"s({self.base})"
        return f"s^{self.shift}({self.base})"

    @property
    def flat_name(self) -> str:
        return f"{self.base}@{self.shift}"

    @classmethod
    def from_flat(cls, name: str) -> "DiffVar":
        base, _, shift = name.rpartition("@")
        return cls(base, int(shift))


# a monomial is a sorted tuple of (DiffVar, exponent) pairs
DiffMonomial = tuple


def _mono_mul(a: DiffMonomial, b: DiffMonomial) -> DiffMonomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


class DiffPoly:
    """A polynomial in shifted unknowns over QQ or QQ(params)."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms: Mapping[DiffMonomial, object]):
        self.field = field
        self.terms = {m: c for m, c in terms.items() if c}

    # -- constructors --------------------------------------------------
    @classmethod
    def constant(cls, field, c) -> "DiffPoly":
        return cls(field, {(): field.convert(c)})

    @classmethod
    def var(cls, field, base: str, shift: int = 0) -> "DiffPoly":
        return cls(field, {((DiffVar(base, shift), 1),): field.one})

    # -- queries -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[DiffVar]:
        return {v for m in self.terms for v, _ in m}

    def bases(self) -> set[str]:
        return {v.base for v in self.variables()}

    def ord(self, base: Optional[str] = None) -> int:
        """Largest shift of ``base`` (or of any unknown) occurring; -1 if none."""
        shifts = [v.shift for v in self.variables() if base is None or v.base == base]
        return max(shifts, default=-1)

    def total_degree(self, bases: Optional[Iterable[str]] = None) -> int:
        if not self.terms:
            return -1
        bases = None if bases is None else set(bases)
        return max(sum(e for v, e in m if bases is None or v.base in bases) for m in self.terms)

    # -- arithmetic ----------------------------------------------------
    def _lift(self, other) -> Optional["DiffPoly"]:
        if isinstance(other, DiffPoly):
            if other.field != self.field:
                raise ArithmeticDomainError("difference polynomials over different fields")
            return other
        try:
            return DiffPoly.constant(self.field, other)
        except (TypeError, ArithmeticError):
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out[m] + c if m in out else c
        return DiffPoly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly(self.field, {m: -c for m, c in self.terms.items()})

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
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out[m] + c1 * c2 if m in out else c1 * c2
        return DiffPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a difference polynomial")
        out = DiffPoly.constant(self.field, 1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "DiffPoly":
        return DiffPoly(self.field, {m: v * c for m, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        o = other if isinstance(other, DiffPoly) else self._lift(other)
        if o is None:
            return NotImplemented
        return self.field == o.field and self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- the shift -----------------------------------------------------
    def sigma(self, k: int = 1) -> "DiffPoly":
        """The ``k``-th transform: every ``s^j(v)`` becomes ``s^(j+k)(v)``."""
        if k < 0:
            raise ValueError("transform index must be non-negative")
        if k == 0:
            return self
        return DiffPoly(self.field, {
            tuple((DiffVar(v.base, v.shift + k), e) for v, e in m): c for m, c in self.terms.items()
        })

    def evaluate(self, values: Mapping[DiffVar, object]) -> "DiffPoly":
        """Substitute values for some shifted unknowns."""
        out: dict = {}
        for m, c in self.terms.items():
            rest = []
            for v, e in m:
                if v in values:
                    c = c * self.field.convert(values[v]) ** e
                else:
                    rest.append((v, e))
            if not c:
                continue
            key = tuple(rest)
            out[key] = out[key] + c if key in out else c
        return DiffPoly(self.field, out)

    # -- rendering -----------------------------------------------------
    def sorted_terms(self) -> list:
        def key(item):
            m, _ = item
            deg = sum(e for _, e in m)
            top = max((v.shift for v, _ in m), default=-1)
            vs = sorted(((-v.shift, v.base, -e) for v, e in m))
            return (-top, -deg, vs)
        return sorted(self.terms.items(), key=key)

    def __str__(self) -> str:
        terms = self.sorted_terms()
        names = []
        flat = []
        index: dict = {}
        for m, c in terms:
            for v, _ in m:
                if v not in index:
                    index[v] = len(names)
                    names.append(str(v))
        for m, c in terms:
            e = [0] * len(names)
            for v, k in m:
                e[index[v]] = k
            flat.append((tuple(e), c))
        return render_terms(flat, names)

    def __repr__(self) -> str:
        return f"DiffPoly({self})"


def ord_(p: DiffPoly, base: Optional[str] = None) -> int:
    return p.ord(base)


def sigma_apply(p: DiffPoly, k: int) -> DiffPoly:
    return p.sigma(k)


@dataclass
class DiffSystem:
    """Difference equations ``f = 0`` with declared unknowns and parameters.

    ``keep_vars`` are the unknowns to retain (x-block), ``elim_vars`` the ones
    to eliminate (u-block).  For a consistency question ``keep_vars`` is empty.
    """

    equations: list[DiffPoly]
    keep_vars: tuple[str, ...] = ()
    elim_vars: tuple[str, ...] = ()
    params: tuple[str, ...] = ()
    field: object = field(default=None)

    def __post_init__(self):
        self.keep_vars = tuple(self.keep_vars)
        self.elim_vars = tuple(self.elim_vars)
        self.params = tuple(self.params)
        if self.field is None:
            self.field = make_field(self.params)
        overlap = set(self.keep_vars) & set(self.elim_vars)
        if overlap:
            raise ValueError(f"variables declared both kept and eliminated: {sorted(overlap)}")
        clash = (set(self.keep_vars) | set(self.elim_vars)) & set(self.params)
        if clash:
            raise ValueError(f"names declared as both unknowns and parameters: {sorted(clash)}")
        unknowns = set(self.unknowns)
        for f in self.equations:
            if f.field != self.field:
                raise ValueError("equation coefficients are not in the system's field")
            stray = f.bases() - unknowns
            if stray:
                raise ValueError(f"undeclared unknowns {sorted(stray)}")

    @property
    def unknowns(self) -> tuple[str, ...]:
        return self.keep_vars + self.elim_vars

    def nonzero(self) -> list[DiffPoly]:
        return [f for f in self.equations if f]

    def ord(self, base: Optional[str] = None) -> int:
        return max((f.ord(base) for f in self.equations), default=-1)

    def with_roles(self, keep: Iterable[str] = (), eliminate: Optional[Iterable[str]] = None) -> "DiffSystem":
        keep = tuple(keep)
        if eliminate is None:
            eliminate = tuple(v for v in self.unknowns if v not in keep)
        return DiffSystem(list(self.equations), keep, tuple(eliminate), self.params, self.field)

    def as_consistency(self) -> "DiffSystem":
        """All unknowns moved into the eliminated block."""
        return self.with_roles((), self.unknowns)

    def __str__(self) -> str:
        lines = []
        if self.params:
            lines.append(f"params: {', '.join(self.params)};")
        if self.keep_vars:
            lines.append(f"keep: {', '.join(self.keep_vars)};")
        if self.elim_vars:
            lines.append(f"eliminate: {', '.join(self.elim_vars)};")
        lines.extend(f"{f};" for f in self.equations)
        return "\n".join(lines) + "\n"


def prolong(system: DiffSystem | Sequence[DiffPoly], length: int) -> list[DiffPoly]:
    """``s^0(F), ..., s^(length-1)(F)`` concatenated."""
    if length < 1:
        raise ValueError("prolongation length must be at least 1")
    eqs = system.equations if isinstance(system, DiffSystem) else list(system)
    return [f.sigma(i) for i in range(length) for f in eqs]


@dataclass
class FlatEmbedding:
    """A finite list of difference polynomials as ordinary polynomials.

    ``h`` maps each eliminated base to its maximal order (bases that do not
    occur are omitted) and ``H`` is the number of eliminated coordinates.
    """

    ring: PolyRing
    equations: list[Poly]
    h: dict[str, int]
    H: int
    kept: tuple[str, ...]
    eliminated: tuple[str, ...]

    def unflatten(self, p: Poly) -> DiffPoly:
        return unflatten(p, self.ring.field)


def _block_names(polys: Sequence[DiffPoly], bases: Sequence[str]) -> tuple[list[str], dict[str, int]]:
    h = {}
    for b in bases:
        o = max((f.ord(b) for f in polys), default=-1)
        if o >= 0:
            h[b] = o
    names = [DiffVar(b, j).flat_name for j in range(max(h.values(), default=-1), -1, -1)
             for b in bases if b in h and j <= h[b]]
    return names, h


def flatten(polys: DiffSystem | Sequence[DiffPoly], keep: Sequence[str] = (), eliminate: Sequence[str] = (),
            role: str = "elimination", field=None) -> FlatEmbedding:
    """Rename each ``s^j(v)`` to the polynomial variable ``v@j``.

    For ``role="elimination"`` the eliminated transforms form block 0 and the
    kept ones block 1 of a block order; for ``"consistency"`` all unknowns
    share one grevlex block.  Every coordinate ``s^j(u)`` with
    ``0 <= j <= ord_u`` is present, so ``H`` counts the ambient space.
    """
    if isinstance(polys, DiffSystem):
        keep, eliminate = polys.keep_vars, polys.elim_vars
        field = polys.field if field is None else field
        polys = polys.equations
    polys = [f for f in polys if f]
    if field is None:
        field = polys[0].field if polys else QQ
    if role == "consistency":
        eliminate = tuple(keep) + tuple(eliminate)
        keep = ()
    elif role != "elimination":
        raise ValueError(f"unknown role {role!r}")
    u_names, h = _block_names(polys, eliminate)
    x_names, _ = _block_names(polys, keep)
    names = u_names + x_names
    if u_names and x_names:
        ring = PolyRing(VarTable(tuple(names), (0,) * len(u_names) + (1,) * len(x_names)),
                        block_order("grevlex", "grevlex"), field)
    else:
        ring = PolyRing(VarTable(tuple(names)), GREVLEX, field)
    eqs = [to_poly(f, ring) for f in polys]
    return FlatEmbedding(ring, eqs, h, len(u_names), tuple(x_names), tuple(u_names))


def to_poly(f: DiffPoly, ring: PolyRing) -> Poly:
    idx = ring.vars._index
    n = ring.nvars
    out = {}
    conv = ring.field.convert
    for m, c in f.terms.items():
        e = [0] * n
        for v, k in m:
            try:
                e[idx[v.flat_name]] = k
            except KeyError:
                raise KeyError(f"{v} is not a variable of the flattened ring") from None
        out[tuple(e)] = conv(c)
    return Poly(ring, out)


def unflatten(p: Poly, field=None) -> DiffPoly:
    field = p.ring.field if field is None else field
    vars_ = [DiffVar.from_flat(n) for n in p.ring.names]
    out = {}
    for m, c in p.terms.items():
        mono = tuple(sorted((vars_[i], e) for i, e in enumerate(m) if e))
        out[mono] = field.convert(c)
    return DiffPoly(field, out)


class PartialSolutionError(ValueError):
    """Value table too short for the requested length."""


def partial_solution_check(system: DiffSystem, values: Mapping[str, Sequence], length: int) -> bool:
    """Do the first ``length`` transforms of the system vanish on ``values``?

    ``values[v][i]`` is the value of ``s^i(v)``; each table needs at least
    ``length + ord(system)`` entries.
    """
    eqs = system.nonzero()
    if not eqs:
        return True
    h = max(f.ord() for f in eqs)
    need = length + h
    for base in {b for f in eqs for b in f.bases()}:
        seq = values.get(base)
        if seq is None or len(seq) < need:
            raise PartialSolutionError(f"need {need} values for {base}")
    assignment = {DiffVar(b, i): v for b, seq in values.items() for i, v in enumerate(seq)}
    for s in range(length):
        for f in eqs:
            if f.sigma(s).evaluate(assignment):
                return False
    return True
