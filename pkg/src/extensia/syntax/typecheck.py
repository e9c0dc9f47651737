from __future__ import annotations

from dataclasses import replace

from ..errors import HTypeError, NonEnumerableType
from .expr import (
    And,
    App,
    BoolConst,
    Clause,
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
    Signature,
    Var,
    subexpressions,
)
from .types import IOTA, O, Arrow, TypeExpr, arg_types, is_enumerable


def _show(e: Expr) -> str:
    from .core import pretty

    text = pretty(e)
    return text if len(text) <= 60 else text[:57] + "..."


def _expect(e: Expr, actual: TypeExpr, expected: TypeExpr) -> None:
    if actual != expected:
        raise HTypeError(f"{_show(e)}: expected type {expected}, found {actual}")


def annotate(e: Expr, sig: Signature, scope: dict[str, Var] | None = None) -> Expr:
    """Return ``e`` with every node's ``type`` filled in, or raise ``HTypeError``."""
    return _annotate(e, sig, dict(scope or {}))


def _annotate(e: Expr, sig: Signature, scope: dict[str, Var]) -> Expr:
    if isinstance(e, BoolConst):
        return replace(e, type=O)
    if isinstance(e, IndConst):
        if e.name in sig.predicates or e.name in sig.functions:
            raise HTypeError(f"{e.name} is not an individual constant")
        return replace(e, type=IOTA)
    if isinstance(e, PredConst):
        if e.name not in sig.predicates:
            raise HTypeError(f"undeclared predicate constant {e.name}")
        return replace(e, type=sig.predicates[e.name])
    if isinstance(e, Var):
        bound = scope.get(e.name)
        if bound is None:
            raise HTypeError(f"free variable {e.name}")
        if bound.vtype != e.vtype:
            raise HTypeError(f"variable {e.name} bound at {bound.vtype} but used at {e.vtype}")
        return replace(e, type=e.vtype)
    if isinstance(e, FunApp):
        if e.fn not in sig.functions:
            raise HTypeError(f"undeclared function symbol {e.fn}")
        if sig.functions[e.fn] != len(e.args):
            raise HTypeError(f"{_show(e)}: {e.fn} takes {sig.functions[e.fn]} arguments")
        args = tuple(_annotate(a, sig, scope) for a in e.args)
        for a in args:
            _expect(a, a.type, IOTA)
        return replace(e, args=args, type=IOTA)
    if isinstance(e, App):
        fn = _annotate(e.fn, sig, scope)
        arg = _annotate(e.arg, sig, scope)
        if not isinstance(fn.type, Arrow) or not fn.type.is_predicate:
            raise HTypeError(f"{_show(e)}: {_show(e.fn)} of type {fn.type} cannot be applied")
        _expect(e.arg, arg.type, fn.type.arg)
        return replace(e, fn=fn, arg=arg, type=fn.type.result)
    if isinstance(e, (Lambda, Exists)):
        if not e.var.vtype.is_argument:
            raise HTypeError(f"{_show(e)}: cannot bind a variable of type {e.var.vtype}")
        body = _annotate(e.body, sig, {**scope, e.var.name: e.var})
        var = replace(e.var, type=e.var.vtype)
        if isinstance(e, Exists):
            _expect(e.body, body.type, O)
            return replace(e, var=var, body=body, type=O)
        if not body.type.is_predicate:
            raise HTypeError(f"{_show(e)}: lambda body has non-predicate type {body.type}")
        return replace(e, var=var, body=body, type=Arrow(e.var.vtype, body.type))
    if isinstance(e, (And, Or)):
        left = _annotate(e.left, sig, scope)
        right = _annotate(e.right, sig, scope)
        if not left.type.is_predicate:
            raise HTypeError(f"{_show(e)}: operands must have a predicate type, found {left.type}")
        _expect(e.right, right.type, left.type)
        return replace(e, left=left, right=right, type=left.type)
    if isinstance(e, Not):
        body = _annotate(e.body, sig, scope)
        _expect(e.body, body.type, O)
        return replace(e, body=body, type=O)
    if isinstance(e, Eq):
        left = _annotate(e.left, sig, scope)
        right = _annotate(e.right, sig, scope)
        _expect(e.left, left.type, IOTA)
        _expect(e.right, right.type, IOTA)
        return replace(e, left=left, right=right, type=O)
    raise HTypeError(f"not an expression: {e!r}")


def typecheck(p: Program) -> Program:
    """Annotate every clause body; each must be closed and match its head's type."""
    sig = p.signature
    for name, t in sig.predicates.items():
        if not t.is_predicate:
            raise HTypeError(f"predicate {name} declared with non-predicate type {t}")
    clauses = []
    for c in p.clauses:
        if c.head not in sig.predicates:
            raise HTypeError(f"clause for undeclared predicate {c.head}")
        body = _annotate(c.body, sig, {})
        expected = sig.predicates[c.head]
        if body.type != expected:
            raise HTypeError(f"clause for {c.head}: body has type {body.type}, head has {expected}")
        clauses.append(Clause(c.head, body))
    return Program(sig, tuple(clauses))


def check_enumerable(p: Program) -> None:
    """Reject programs whose tables or quantifier ranges cannot be enumerated.

    Cells of a predicate range over its argument domains, and ``\\`` or
    ``exists`` range over their variable's domain; all of these must be
    ``i``, ``o`` or ``i^n -> o``.
    """
    for name, t in p.signature.predicates.items():
        for a in arg_types(t):
            if not is_enumerable(a):
                raise NonEnumerableType(
                    f"predicate {name} : {t} takes an argument of type {a}, "
                    "which has a predicate-typed argument itself"
                )
    for c in p.clauses:
        for e in subexpressions(c.body):
            if isinstance(e, (Lambda, Exists)) and not is_enumerable(e.var.vtype):
                raise NonEnumerableType(
                    f"in clause for {c.head}: variable {e.var.name} ranges over "
                    f"non-enumerable type {e.var.vtype}"
                )
