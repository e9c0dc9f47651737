"""Core expressions, clauses and programs.

Nodes are immutable. ``typecheck`` returns copies whose ``type`` field is
filled in; the field is ignored by equality so that annotated and bare
trees compare structurally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .types import TypeExpr


def _type_field():
    return field(default=None, compare=False, repr=False)


class Expr:
    __slots__ = ()
    type: TypeExpr | None


@dataclass(frozen=True)
class BoolConst(Expr):
    value: bool
    type: TypeExpr | None = _type_field()


@dataclass(frozen=True)
class IndConst(Expr):
    name: str
    type: TypeExpr | None = _type_field()


@dataclass(frozen=True)
class PredConst(Expr):
    name: str
    type: TypeExpr | None = _type_field()


@dataclass(frozen=True)
class Var(Expr):
    """An argument variable; individual or predicate according to ``vtype``."""

    name: str
    vtype: TypeExpr
    type: TypeExpr | None = _type_field()

    @property
    def is_predicate(self) -> bool:
        return self.vtype.is_predicate


@dataclass(frozen=True)
class FunApp(Expr):
    fn: str
    args: tuple[Expr, ...]
    type: TypeExpr | None = _type_field()


@dataclass(frozen=True)
class App(Expr):
    fn: Expr
    arg: Expr
    type: TypeExpr | None = _type_field()


@dataclass(frozen=True)
class Lambda(Expr):
    var: Var
    body: Expr
    type: TypeExpr | None = _type_field()


@dataclass(frozen=True)
class And(Expr):
    left: Expr
    right: Expr
    type: TypeExpr | None = _type_field()


@dataclass(frozen=True)
class Or(Expr):
    left: Expr
    right: Expr
    type: TypeExpr | None = _type_field()


@dataclass(frozen=True)
class Not(Expr):
    body: Expr
    type: TypeExpr | None = _type_field()


@dataclass(frozen=True)
class Eq(Expr):
    left: Expr
    right: Expr
    type: TypeExpr | None = _type_field()


@dataclass(frozen=True)
class Exists(Expr):
    var: Var
    body: Expr
    type: TypeExpr | None = _type_field()


TRUE_E = BoolConst(True)
FALSE_E = BoolConst(False)


def children(e: Expr) -> tuple[Expr, ...]:
    if isinstance(e, (App,)):
        return (e.fn, e.arg)
    if isinstance(e, (And, Or, Eq)):
        return (e.left, e.right)
    if isinstance(e, (Lambda, Exists)):
        return (e.body,)
    if isinstance(e, Not):
        return (e.body,)
    if isinstance(e, FunApp):
        return e.args
    return ()


def subexpressions(e: Expr) -> Iterator[Expr]:
    yield e
    for c in children(e):
        yield from subexpressions(c)


def free_vars(e: Expr) -> set[Var]:
    if isinstance(e, Var):
        return {e}
    if isinstance(e, (Lambda, Exists)):
        return {v for v in free_vars(e.body) if v.name != e.var.name}
    out: set[Var] = set()
    for c in children(e):
        out |= free_vars(c)
    return out


def app_spine(e: Expr) -> tuple[Expr, list[Expr]]:
    """Split ``((h a1) a2) .. an`` into ``h`` and ``[a1, .., an]``."""
    args = []
    while isinstance(e, App):
        args.append(e.arg)
        e = e.fn
    args.reverse()
    return e, args


def apply(head: Expr, *args: Expr) -> Expr:
    for a in args:
        head = App(head, a)
    return head


def conjoin(parts: list[Expr]) -> Expr:
    """Left-nested conjunction; the empty conjunction is ``true``."""
    if not parts:
        return TRUE_E
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


@dataclass(frozen=True)
class Clause:
    head: str
    body: Expr


@dataclass(frozen=True)
class Signature:
    """Declared constants. Dict order is declaration order and is significant."""

    predicates: dict[str, TypeExpr]
    individuals: tuple[str, ...] = ()
    functions: dict[str, int] = field(default_factory=dict)

    def pred_type(self, name: str) -> TypeExpr:
        return self.predicates[name]


@dataclass(frozen=True)
class Program:
    signature: Signature
    clauses: tuple[Clause, ...]

    def clauses_for(self, name: str) -> list[Clause]:
        return [c for c in self.clauses if c.head == name]

    @property
    def predicates(self) -> list[str]:
        return list(self.signature.predicates)

    @property
    def has_function_symbols(self) -> bool:
        return bool(self.signature.functions)
