"""Herbrand interpretations, expression evaluation and the consequence operator.

Expressions are compiled once into Python closures over a positional
environment; the closures read predicate tables from whatever
interpretation the evaluator currently holds, so the engine can swap
interpretations between iterations without recompiling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping

from . import truth
from .domains import Domain, Suspended, Table, Universe, apply, force
from .errors import InfiniteUniverse, SignatureMismatch, TypeMismatch, UnboundVariable
from .syntax.expr import (
    And,
    App,
    BoolConst,
    Eq,
    Exists,
    Expr,
    FunApp,
    IndConst,
    Lambda,
    Not,
    Or,
    PredConst,
    Program,
    Var,
    app_spine,
)
from .syntax.typecheck import annotate, check_enumerable, typecheck
from .syntax.types import IOTA, O, TypeExpr, arg_types
from .truth import FALSE, TRUE, TruthValue

# -- interpretations ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Interpretation:
    """A truth value for every cell of every predicate.

    ``tables[p]`` is the flat tuple of cell values of ``p`` in the
    domain's canonical cell order.
    """

    domain: Domain
    types: Mapping[str, TypeExpr]
    tables: Mapping[str, tuple]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Interpretation)
            and self.domain == other.domain
            and dict(self.types) == dict(other.types)
            and dict(self.tables) == dict(other.tables)
        )

    def __hash__(self) -> int:
        return hash(tuple(self.tables.values()))

    @classmethod
    def constant(cls, domain: Domain, types: Mapping[str, TypeExpr], v: TruthValue) -> Interpretation:
        return cls(domain, dict(types), {p: (v,) * domain.cell_count(t) for p, t in types.items()})

    @classmethod
    def bottom(cls, domain: Domain, types: Mapping[str, TypeExpr]) -> Interpretation:
        return cls.constant(domain, types, FALSE)

    def replace(self, tables: Mapping[str, tuple]) -> Interpretation:
        return Interpretation(self.domain, self.types, {p: tuple(tables[p]) for p in self.types})

    @property
    def predicates(self) -> list[str]:
        return list(self.types)

    def denotation(self, p: str):
        t = self.types[p]
        if t == O:
            return self.tables[p][0]
        return Table(t, self.tables[p], self.domain.shape(t))

    def value(self, p: str, *args) -> TruthValue:
        """Value of the cell ``p(args)``; arguments are denotations."""
        return self.tables[p][self.domain.cell_index(args, self.types[p])]

    def cells(self) -> Iterator[tuple[str, int, TruthValue]]:
        for p, vals in self.tables.items():
            for k, v in enumerate(vals):
                yield p, k, v

    def cell_count(self) -> int:
        return sum(len(v) for v in self.tables.values())

    def cell_key(self, p: str, k: int) -> str:
        t = self.types[p]
        return self.domain.render_args(self.domain.cell_args(k, t), t)

    def map(self, fn: Callable[[TruthValue], TruthValue]) -> Interpretation:
        return Interpretation(
            self.domain, self.types, {p: tuple(fn(v) for v in vals) for p, vals in self.tables.items()}
        )

    def to_json(self) -> dict:
        return {
            p: {self.cell_key(p, k): v.to_json() for k, v in enumerate(vals)}
            for p, vals in self.tables.items()
        }

    def labels(self) -> dict:
        return {
            p: {self.cell_key(p, k): truth.label(v) for k, v in enumerate(vals)}
            for p, vals in self.tables.items()
        }

    def __repr__(self) -> str:
        parts = []
        for p, vals in self.tables.items():
            if self.types[p] == O:
                parts.append(f"{p}: {vals[0]}")
            else:
                inner = ", ".join(f"{self.cell_key(p, k)}: {v}" for k, v in enumerate(vals))
                parts.append(f"{p}: {{{inner}}}")
        return "{" + "; ".join(parts) + "}"


@dataclass
class State:
    """Bindings of argument variables to denotations."""

    bindings: dict[Var, object] = field(default_factory=dict)

    def extend(self, var: Var, d) -> State:
        return State({**self.bindings, var: d})


def _check_same(i: Interpretation, j: Interpretation) -> None:
    if dict(i.types) != dict(j.types) or i.domain != j.domain:
        raise SignatureMismatch("interpretations over different signatures or domains")


def interp_leq(i: Interpretation, j: Interpretation) -> bool:
    _check_same(i, j)
    return all(v <= w for p in i.types for v, w in zip(i.tables[p], j.tables[p]))


def interp_sq_alpha(i: Interpretation, j: Interpretation, alpha: int) -> bool:
    _check_same(i, j)
    rel = truth.sq_alpha
    return all(rel(v, w, alpha) for p in i.types for v, w in zip(i.tables[p], j.tables[p]))


def interp_eq_alpha(i: Interpretation, j: Interpretation, alpha: int) -> bool:
    _check_same(i, j)
    rel = truth.eq_alpha
    return all(rel(v, w, alpha) for p in i.types for v, w in zip(i.tables[p], j.tables[p]))


def difference_level(i: Interpretation, j: Interpretation) -> int | None:
    """The least stage at which ``i`` and ``j`` are not ``=_alpha``, or None if equal."""
    _check_same(i, j)
    best = None
    for p in i.types:
        for v, w in zip(i.tables[p], j.tables[p]):
            if v != w:
                lvl = min(truth.order(v), truth.order(w))
                if best is None or lvl < best:
                    best = lvl
    return best


def interp_sq(i: Interpretation, j: Interpretation) -> bool:
    """The global ordering: equal, or strictly below at the first level where they differ."""
    alpha = difference_level(i, j)
    if alpha is None:
        return True
    return interp_sq_alpha(i, j, alpha)


# -- compiled evaluation --------------------------------------------------------

Compiled = Callable[[list], object]


class Evaluator:
    """Compiles typed expressions for one domain and signature."""

    def __init__(self, domain: Domain, types: Mapping[str, TypeExpr]):
        self.domain = domain
        self.types = dict(types)
        self.kappa = domain.kappa
        self._tables: Mapping[str, tuple] = {}
        self._denotations: dict[str, object] = {}
        self._ind_index = {name: k for k, name in enumerate(domain.universe.individuals)}

    @property
    def tables(self) -> Mapping[str, tuple]:
        return self._tables

    @tables.setter
    def tables(self, tables: Mapping[str, tuple]) -> None:
        self._tables = tables
        self._denotations = {}

    def load(self, interp: Interpretation) -> None:
        self.tables = interp.tables

    def denotation(self, p: str):
        try:
            return self._denotations[p]
        except KeyError:
            t = self.types[p]
            vals = self._tables[p]
            d = vals[0] if t == O else Table(t, tuple(vals), self.domain.shape(t))
            self._denotations[p] = d
            return d

    def compile(self, e: Expr, scope: dict[str, int]) -> Compiled:
        method = getattr(self, "_c_" + type(e).__name__)
        return method(e, scope)

    # constants and variables

    def _c_BoolConst(self, e: BoolConst, scope):
        v = TRUE if e.value else FALSE
        return lambda env: v

    def _c_IndConst(self, e: IndConst, scope):
        try:
            k = self._ind_index[e.name]
        except KeyError:
            raise TypeMismatch(f"{e.name} is not in the universe") from None
        return lambda env: k

    def _c_PredConst(self, e: PredConst, scope):
        name = e.name
        return lambda env: self.denotation(name)

    def _c_Var(self, e: Var, scope):
        try:
            slot = scope[e.name]
        except KeyError:
            raise UnboundVariable(f"variable {e.name} is not bound") from None
        return lambda env: env[slot]

    def _c_FunApp(self, e: FunApp, scope):
        raise InfiniteUniverse(f"function symbol {e.fn} cannot be evaluated over a finite universe")

    # application

    def _c_App(self, e: App, scope):
        head, args = app_spine(e)
        arg_fns = [self.compile(a, scope) for a in args]
        dom = self.domain
        if isinstance(head, PredConst):
            name = head.name
            t = self.types[name]
            atypes = arg_types(t)[: len(args)]
            strides = dom.strides(t)[: len(args)]
            if all(a == IOTA for a in atypes):
                pairs = list(zip(arg_fns, strides))
                if len(pairs) == 1:
                    (f0, s0), = pairs
                    if len(args) == len(arg_types(t)):
                        return lambda env: self._tables[name][f0(env) * s0]
                if len(args) == len(arg_types(t)):
                    return lambda env: self._tables[name][sum(f(env) * s for f, s in pairs)]
            index = dom.index
            spec = list(zip(arg_fns, atypes, strides))
            if len(args) == len(arg_types(t)):
                return lambda env: self._tables[name][sum(index(f(env), a) * s for f, a, s in spec)]
            rest_type = t
            for _ in args:
                rest_type = rest_type.result
            width = strides[-1]
            shape = dom.shape(rest_type)

            def partial(env):
                off = sum(index(f(env), a) * s for f, a, s in spec)
                return Table(rest_type, tuple(self._tables[name][off : off + width]), shape)

            return partial
        head_fn = self.compile(head, scope)
        if isinstance(head, Var) and len(arg_fns) == 1:
            f0 = arg_fns[0]

            def app1(env):
                fn = head_fn(env)
                if isinstance(fn, Table) and len(fn.shape) == 1 and fn.type.arg == IOTA:
                    return fn.values[f0(env)]
                return apply(dom, fn, f0(env))

            return app1

        def app(env):
            fn = head_fn(env)
            for f in arg_fns:
                fn = apply(dom, fn, f(env))
            return fn

        return app

    def _c_Lambda(self, e: Lambda, scope):
        slot = _next_slot(scope)
        body = self.compile(e.body, {**scope, e.var.name: slot})
        t = e.type
        if t is None:
            raise TypeMismatch("expression must be type-annotated before compiling")
        dom = self.domain
        padding = [None] * (_depth(e.body) + 1)

        def make(env):
            snap = list(env[:slot])

            def call(d):
                return body(snap + [d] + padding)

            return Suspended(t, call, dom)

        return make

    # connectives

    def _c_And(self, e: And, scope):
        return self._connective(e, scope, truth.meet, FALSE)

    def _c_Or(self, e: Or, scope):
        return self._connective(e, scope, truth.join, TRUE)

    def _connective(self, e, scope, op, absorbing):
        left = self.compile(e.left, scope)
        right = self.compile(e.right, scope)
        t = e.type
        if t == O:
            if op is truth.meet:

                def conj(env):
                    a = left(env)
                    if a == absorbing:
                        return a
                    b = right(env)
                    return a if a < b else b

                return conj

            def disj(env):
                a = left(env)
                if a == absorbing:
                    return a
                b = right(env)
                return a if a > b else b

            return disj
        dom = self.domain

        def pointwise(env):
            a, b = left(env), right(env)
            return Suspended(t, lambda d: _combine2(dom, apply(dom, a, d), apply(dom, b, d), op), dom)

        return pointwise

    def _c_Not(self, e: Not, scope):
        body = self.compile(e.body, scope)
        kappa = self.kappa
        neg = truth.neg
        return lambda env: neg(body(env), kappa, saturate=True)

    def _c_Eq(self, e: Eq, scope):
        left = self.compile(e.left, scope)
        right = self.compile(e.right, scope)
        return lambda env: TRUE if left(env) == right(env) else FALSE

    def _c_Exists(self, e: Exists, scope):
        slot = _next_slot(scope)
        body = self.compile(e.body, {**scope, e.var.name: slot})
        elements = self.domain.elements(e.var.vtype)

        def exists(env):
            best = FALSE
            for d in elements:
                env[slot] = d
                v = body(env)
                if v > best:
                    best = v
                    if best == TRUE:
                        break
            return best

        return exists


def _combine2(dom: Domain, a, b, op):
    if isinstance(a, TruthValue):
        return op((a, b))
    a, b = force(a), force(b)
    return Table(a.type, tuple(op((x, y)) for x, y in zip(a.values, b.values)), a.shape)


def _next_slot(scope: dict[str, int]) -> int:
    return max(scope.values(), default=-1) + 1


def _depth(e: Expr) -> int:
    """Maximum binder nesting, i.e. the environment size a compiled body needs."""
    if isinstance(e, (Lambda, Exists)):
        return 1 + _depth(e.body)
    if isinstance(e, App):
        return max(_depth(e.fn), _depth(e.arg))
    if isinstance(e, (And, Or, Eq)):
        return max(_depth(e.left), _depth(e.right))
    if isinstance(e, Not):
        return _depth(e.body)
    return 0


# -- programs -------------------------------------------------------------------


@dataclass
class _CompiledClause:
    params: int  # leading lambdas peeled off
    body: Compiled
    env_size: int


class ProgramSemantics:
    """A typed, compiled program over a fixed domain."""

    def __init__(self, program: Program, domain: Domain | None = None, kappa: int | None = None):
        typed = typecheck(program)
        check_enumerable(typed)
        if domain is None:
            if kappa is None:
                raise ValueError("need a domain or a kappa")
            domain = Domain(Universe.of(typed), kappa)
        elif typed.has_function_symbols:
            Universe.of(typed)  # raises InfiniteUniverse
        self.program = typed
        self.domain = domain
        self.types = dict(typed.signature.predicates)
        self.evaluator = Evaluator(domain, self.types)
        self.clauses: dict[str, list[_CompiledClause]] = {p: [] for p in self.types}
        for c in typed.clauses:
            self.clauses[c.head].append(self._compile_clause(c.head, c.body))
        self._cell_args: dict[str, list[tuple]] = {}

    def _compile_clause(self, head: str, body: Expr) -> _CompiledClause:
        n = len(arg_types(self.types[head]))
        scope: dict[str, int] = {}
        k = 0
        while k < n and isinstance(body, Lambda):
            scope = {**scope, body.var.name: k}
            body = body.body
            k += 1
        size = k + _depth(body) + 1
        return _CompiledClause(k, self.evaluator.compile(body, scope), size)

    @property
    def kappa(self) -> int:
        return self.domain.kappa

    def cell_args(self, p: str) -> list[tuple]:
        try:
            return self._cell_args[p]
        except KeyError:
            out = self._cell_args[p] = list(self.domain.cells(self.types[p]))
            return out

    def cell_count(self) -> int:
        return sum(self.domain.cell_count(t) for t in self.types.values())

    def bottom(self) -> Interpretation:
        return Interpretation.bottom(self.domain, self.types)

    def interpretation(self, tables: Mapping[str, tuple]) -> Interpretation:
        return Interpretation(self.domain, self.types, {p: tuple(tables[p]) for p in self.types})

    def clause_values(self, p: str, k: int) -> Iterator[TruthValue]:
        """Value of each clause body of ``p`` at cell ``k`` under the loaded tables."""
        args = self.cell_args(p)[k]
        dom = self.domain
        for c in self.clauses[p]:
            env = list(args[: c.params]) + [None] * c.env_size
            v = c.body(env)
            for d in args[c.params :]:
                v = apply(dom, v, d)
            yield v

    def cell_value(self, p: str, k: int) -> TruthValue:
        best = FALSE
        for v in self.clause_values(p, k):
            if v > best:
                best = v
                if best == TRUE:
                    break
        return best

    def step(self, interp: Interpretation) -> Interpretation:
        """One application of the immediate consequence operator."""
        self.evaluator.load(interp)
        out = {}
        for p, t in self.types.items():
            out[p] = tuple(self.cell_value(p, k) for k in range(self.domain.cell_count(t)))
        return Interpretation(self.domain, self.types, out)

    def is_model(self, m: Interpretation) -> bool:
        self.evaluator.load(m)
        for p, vals in m.tables.items():
            for k, current in enumerate(vals):
                if any(v > current for v in self.clause_values(p, k)):
                    return False
        return True

    def evaluate(self, e: Expr, interp: Interpretation, state: State | None = None):
        bindings = list((state or State()).bindings.items())
        typed = annotate(e, self.program.signature, {v.name: v for v, _ in bindings})
        scope = {v.name: k for k, (v, _) in enumerate(bindings)}
        fn = self.evaluator.compile(typed, scope)
        self.evaluator.load(interp)
        env = [d for _, d in bindings] + [None] * (_depth(typed) + 1)
        return fn(env)


_CACHE: dict[tuple[int, int], tuple[Program, Domain, ProgramSemantics]] = {}


def semantics_for(program: Program, domain: Domain) -> ProgramSemantics:
    key = (id(program), id(domain))
    hit = _CACHE.get(key)
    if hit is not None and hit[0] is program and hit[1] is domain:
        return hit[2]
    if len(_CACHE) > 64:
        _CACHE.clear()
    sem = ProgramSemantics(program, domain)
    _CACHE[key] = (program, domain, sem)
    return sem


def evaluate(e: Expr, program: Program, interp: Interpretation, state: State | None = None):
    """Denotation of ``e`` under ``interp`` (and the bindings of ``state``)."""
    return semantics_for(program, interp.domain).evaluate(e, interp, state)


def tp_step(program: Program, interp: Interpretation) -> Interpretation:
    return semantics_for(program, interp.domain).step(interp)


def is_model(program: Program, m: Interpretation) -> bool:
    return semantics_for(program, m.domain).is_model(m)


def total_cells(domain: Domain, types: Mapping[str, TypeExpr]) -> int:
    return sum(math.prod(domain.shape(t)) for t in types.values())
