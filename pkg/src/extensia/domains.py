"""Finite semantic domains over a Herbrand universe.

Denotations are plain Python values:

* an individual is its position in the universe (an ``int``),
* a truth value is a ``TruthValue``,
* a predicate denotation of type ``r1 -> .. -> rn -> o`` is a ``Table``
  holding the fully uncurried function as a flat tuple of truth values, or
  a ``Suspended`` closure that tabulates itself on demand.

Flat positions are mixed-radix over the argument domains, so an argument
tuple ``(k1, .., kn)`` of element indices lives at
``k1*stride1 + .. + kn*striden``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import truth
from .errors import (
    BudgetExceeded,
    InfiniteUniverse,
    NonEnumerableType,
    NotInCone,
    TypeMismatch,
)
from .syntax.expr import Program
from .syntax.types import IOTA, O, Arrow, TypeExpr, arg_types, is_enumerable
from .truth import TruthValue

# Largest domain ``elements`` will materialise.
ENUMERATION_LIMIT = 2_000_000


@dataclass(frozen=True)
class Universe:
    individuals: tuple[str, ...]

    def __post_init__(self):
        if not self.individuals:
            raise ValueError("the universe must be nonempty")
        if len(set(self.individuals)) != len(self.individuals):
            raise ValueError("duplicate individuals in universe")

    def __len__(self) -> int:
        return len(self.individuals)

    @classmethod
    def of(cls, program: Program, filler: str = "c") -> Universe:
        """Herbrand universe of a function-free program (never empty)."""
        if program.has_function_symbols:
            names = ", ".join(program.signature.functions)
            raise InfiniteUniverse(f"function symbols ({names}) make the Herbrand universe infinite")
        return cls(tuple(program.signature.individuals) or (filler,))


class Table:
    """A fully tabulated predicate denotation."""

    __slots__ = ("type", "values", "shape", "_index")

    def __init__(self, type: TypeExpr, values: tuple, shape: tuple[int, ...], index: int | None = None):
        self.type = type
        self.values = values
        self.shape = shape
        self._index = index

    def __eq__(self, other) -> bool:
        return isinstance(other, Table) and self.type == other.type and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f"Table({self.type}, {list(self.values)})"

    def apply_index(self, k: int):
        if len(self.shape) == 1:
            return self.values[k]
        stride = len(self.values) // self.shape[0]
        return Table(self.type.result, self.values[k * stride : (k + 1) * stride], self.shape[1:])


class Suspended:
    """A predicate denotation given by a closure, memoised per argument index.

    The closure must be pure; forcing is idempotent and agrees with
    applying the closure argument by argument.
    """

    __slots__ = ("type", "fn", "domain", "memo")

    def __init__(self, type: TypeExpr, fn: Callable, domain: Domain):
        self.type = type
        self.fn = fn
        self.domain = domain
        self.memo: dict[int, object] = {}

    def apply(self, d):
        k = self.domain.index(d, self.type.arg)
        try:
            return self.memo[k]
        except KeyError:
            r = self.memo[k] = self.fn(d)
            return r

    def force(self) -> Table:
        dom = self.domain
        out: list = []
        for d in dom.elements(self.type.arg):
            r = self.apply(d)
            if isinstance(r, TruthValue):
                out.append(r)
            else:
                out.extend(force(r).values)
        return Table(self.type, tuple(out), dom.shape(self.type))

    def __repr__(self) -> str:
        return f"Suspended({self.type})"


def force(d):
    return d.force() if isinstance(d, Suspended) else d


class Domain:
    """The denotation spaces for a universe and a bound ``kappa`` on levels."""

    def __init__(self, universe: Universe, kappa: int):
        if kappa < 1:
            raise ValueError("kappa must be at least 1")
        self.universe = universe
        self.kappa = kappa
        self.truth = truth.values(kappa)
        self.truth_index = {v: i for i, v in enumerate(self.truth)}
        self._elements: dict[TypeExpr, tuple] = {}
        self._shapes: dict[TypeExpr, tuple[int, ...]] = {}

    def __repr__(self) -> str:
        return f"Domain({list(self.universe.individuals)}, kappa={self.kappa})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Domain) and (self.universe, self.kappa) == (other.universe, other.kappa)

    def __hash__(self) -> int:
        return hash((self.universe, self.kappa))

    # -- sizes and shapes -----------------------------------------------------

    def size(self, t: TypeExpr) -> int:
        if t == IOTA:
            return len(self.universe)
        if t == O:
            return len(self.truth)
        if isinstance(t, Arrow) and t.is_predicate:
            return self.size(t.result) ** self.size(t.arg)
        raise TypeMismatch(f"no finite domain for type {t}")

    def shape(self, t: TypeExpr) -> tuple[int, ...]:
        """Sizes of the argument domains of predicate type ``t``."""
        try:
            return self._shapes[t]
        except KeyError:
            s = self._shapes[t] = tuple(self.size(a) for a in arg_types(t))
            return s

    def strides(self, t: TypeExpr) -> tuple[int, ...]:
        shape = self.shape(t)
        out, acc = [], 1
        for n in reversed(shape):
            out.append(acc)
            acc *= n
        return tuple(reversed(out))

    def cell_count(self, t: TypeExpr) -> int:
        return math.prod(self.shape(t))

    # -- enumeration ----------------------------------------------------------

    def elements(self, t: TypeExpr) -> tuple:
        try:
            return self._elements[t]
        except KeyError:
            pass
        if not is_enumerable(t):
            raise NonEnumerableType(f"cannot enumerate the domain of {t}")
        n = self.size(t)
        if n > ENUMERATION_LIMIT:
            raise BudgetExceeded(f"domain of {t} has {n} elements")
        if t == IOTA:
            out: tuple = tuple(range(len(self.universe)))
        elif t == O:
            out = self.truth
        else:
            shape = self.shape(t)
            out = tuple(
                Table(t, vals, shape, i)
                for i, vals in enumerate(itertools.product(self.truth, repeat=math.prod(shape)))
            )
        self._elements[t] = out
        return out

    def cells(self, t: TypeExpr) -> Iterable[tuple]:
        """All argument tuples of predicate type ``t`` in flat-index order."""
        return itertools.product(*(self.elements(a) for a in arg_types(t)))

    def index(self, d, t: TypeExpr) -> int:
        if t == IOTA:
            return d
        if t == O:
            return self.truth_index[d]
        d = force(d)
        if d._index is None:
            k, base, ti = 0, len(self.truth), self.truth_index
            for v in d.values:
                k = k * base + ti[v]
            d._index = k
        return d._index

    def element(self, k: int, t: TypeExpr):
        if t == IOTA:
            return k
        if t == O:
            return self.truth[k]
        shape = self.shape(t)
        m = math.prod(shape)
        base = len(self.truth)
        digits = []
        for _ in range(m):
            k, r = divmod(k, base)
            digits.append(self.truth[r])
        return Table(t, tuple(reversed(digits)), shape)

    def cell_index(self, args: Sequence, t: TypeExpr) -> int:
        k = 0
        for d, a, n in zip(args, arg_types(t), self.shape(t)):
            k = k * n + self.index(d, a)
        return k

    def cell_args(self, k: int, t: TypeExpr) -> tuple:
        out = []
        for a, n in zip(reversed(arg_types(t)), reversed(self.shape(t))):
            k, r = divmod(k, n)
            out.append(self.element(r, a))
        return tuple(reversed(out))

    def table(self, t: TypeExpr, values: Iterable[TruthValue]) -> Table:
        values = tuple(values)
        if len(values) != self.cell_count(t):
            raise TypeMismatch(f"{t} needs {self.cell_count(t)} entries, got {len(values)}")
        return Table(t, values, self.shape(t))

    def constant(self, t: TypeExpr, v: TruthValue):
        if t == O:
            return v
        return Table(t, (v,) * self.cell_count(t), self.shape(t))

    # -- rendering ------------------------------------------------------------

    def render(self, d, t: TypeExpr) -> str:
        if t == IOTA:
            return self.universe.individuals[d]
        if t == O:
            return str(d)
        d = force(d)
        parts = []
        for k, v in enumerate(d.values):
            parts.append(f"{self.render_args(self.cell_args(k, t), t, bare=True)}:{v}")
        return "{" + ",".join(parts) + "}"

    def render_args(self, args: Sequence, t: TypeExpr, bare: bool = False) -> str:
        """Canonical key of an argument tuple, e.g. ``(a,b)`` or ``({a:T0,b:F0})``."""
        inner = ",".join(self.render(d, a) for d, a in zip(args, arg_types(t)))
        if bare and len(args) == 1:
            return inner
        return f"({inner})"

    def to_json(self, d, t: TypeExpr):
        """Nested ``{argument-key: value}`` objects down to truth values."""
        if t == IOTA:
            return self.universe.individuals[d]
        if t == O:
            return d.to_json()
        out = {}
        for x in self.elements(t.arg) if is_enumerable(t.arg) else ():
            out[self.render(x, t.arg)] = self.to_json(apply(self, d, x, t), t.result)
        return out


def apply(domain: Domain, f, d, t: TypeExpr | None = None):
    """Apply a predicate denotation to one argument."""
    if isinstance(f, Table):
        return f.apply_index(domain.index(d, f.type.arg))
    if isinstance(f, Suspended):
        return f.apply(d)
    raise TypeMismatch(f"cannot apply {f!r}")


def enumerate_domain(t: TypeExpr, universe: Universe, kappa: int) -> tuple:
    return Domain(universe, kappa).elements(t)


# -- pointwise orderings and operations ---------------------------------------


def _flat(d, t: TypeExpr) -> tuple:
    if t == O:
        if not isinstance(d, TruthValue):
            raise TypeMismatch(f"expected a truth value, got {d!r}")
        return (d,)
    d = force(d)
    if not isinstance(d, Table) or d.type != t:
        raise TypeMismatch(f"expected a denotation of type {t}, got {d!r}")
    return d.values


def _pointwise_rel(d1, d2, t, rel) -> bool:
    if t == IOTA:
        if not (isinstance(d1, int) and isinstance(d2, int)):
            raise TypeMismatch("expected individuals")
        return d1 == d2
    a, b = _flat(d1, t), _flat(d2, t)
    if len(a) != len(b):
        raise TypeMismatch("tables of different sizes")
    return all(rel(x, y) for x, y in zip(a, b))


def den_leq(d1, d2, t: TypeExpr) -> bool:
    return _pointwise_rel(d1, d2, t, truth.leq)


def den_sq_alpha(d1, d2, t: TypeExpr, alpha: int) -> bool:
    return _pointwise_rel(d1, d2, t, lambda x, y: truth.sq_alpha(x, y, alpha))


def den_eq_alpha(d1, d2, t: TypeExpr, alpha: int) -> bool:
    return _pointwise_rel(d1, d2, t, lambda x, y: truth.eq_alpha(x, y, alpha))


def _combine(ds, t: TypeExpr, domain: Domain | None, op) -> object:
    ds = [force(d) for d in ds]
    if t == IOTA:
        raise TypeMismatch("individuals have no lattice structure")
    if not ds:
        if t == O:
            return op([])
        if domain is None:
            raise TypeMismatch("an empty combination at a function type needs a domain")
        return domain.constant(t, op([]))
    flats = [_flat(d, t) for d in ds]
    values = [op(col) for col in zip(*flats)]
    return values[0] if t == O else Table(t, tuple(values), ds[0].shape)


def den_join(ds, t: TypeExpr, domain: Domain | None = None):
    return _combine(ds, t, domain, truth.join)


def den_meet(ds, t: TypeExpr, domain: Domain | None = None):
    return _combine(ds, t, domain, truth.meet)


def den_restrict(d, t: TypeExpr, alpha: int, kappa: int | None = None):
    if t == O:
        return truth.restrict(d, alpha, kappa)
    d = force(d)
    return Table(t, tuple(truth.restrict(v, alpha, kappa) for v in _flat(d, t)), d.shape)


def _stage_bound(ds, t, alpha, kappa, domain, op):
    ds = [force(d) for d in ds]
    if not ds:
        v = op([], alpha, kappa)
        if t == O:
            return v
        if domain is None:
            raise TypeMismatch("an empty bound at a function type needs a domain")
        return domain.constant(t, v)
    flats = [_flat(d, t) for d in ds]
    values = [op(col, alpha, kappa) for col in zip(*flats)]
    return values[0] if t == O else Table(t, tuple(values), ds[0].shape)


def den_lub_alpha(ds, t: TypeExpr, alpha: int, kappa: int | None = None, domain: Domain | None = None):
    return _stage_bound(ds, t, alpha, kappa, domain, truth.lub_alpha)


def den_glb_alpha(ds, t: TypeExpr, alpha: int, kappa: int | None = None, domain: Domain | None = None):
    return _stage_bound(ds, t, alpha, kappa, domain, truth.glb_alpha)


def check_alpha_monotone(d, t: TypeExpr, alpha: int, domain: Domain) -> bool:
    """Brute-force check that ``d`` maps ``[=_alpha``-related arguments to related results.

    Results of function type are checked recursively as well.
    """
    if t == O:
        return True
    if not isinstance(t, Arrow):
        raise TypeMismatch(f"{t} is not a predicate type")
    if not is_enumerable(t.arg):
        raise NonEnumerableType(f"cannot enumerate arguments of type {t.arg}")
    xs = domain.elements(t.arg)
    results = [apply(domain, d, x) for x in xs]
    if t.result != O and not all(check_alpha_monotone(r, t.result, alpha, domain) for r in results):
        return False
    if t.arg == IOTA:
        return True
    for x, rx in zip(xs, results):
        for y, ry in zip(xs, results):
            if den_sq_alpha(x, y, t.arg, alpha) and not den_sq_alpha(rx, ry, t.result, alpha):
                return False
    return True


__all__ = [
    "Domain",
    "NotInCone",
    "Suspended",
    "Table",
    "Universe",
    "apply",
    "check_alpha_monotone",
    "den_eq_alpha",
    "den_glb_alpha",
    "den_join",
    "den_leq",
    "den_lub_alpha",
    "den_meet",
    "den_restrict",
    "den_sq_alpha",
    "enumerate_domain",
    "force",
]
