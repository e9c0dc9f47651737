"""Type inference for surface programs and their translation to core clauses."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count

from ..errors import CompileError
from .expr import (
    And,
    BoolConst,
    Clause,
    Eq,
    Exists,
    Expr,
    FunApp,
    IndConst,
    Lambda,
    Not,
    PredConst,
    Program,
    Signature,
    Var,
    apply,
    conjoin,
)
from .surface import SAtom, SClause, SConst, SEq, SFun, SNot, SurfaceProgram, SVar, term_vars
from .types import IOTA, O, Arrow, TypeExpr, arg_types, pred_type

# -- inference terms ----------------------------------------------------------
# A type under inference is "i", a _PredT or a _TVar.


@dataclass(eq=False)
class _TVar:
    id: int
    ref: object = None


@dataclass(eq=False)
class _PredT:
    args: list = field(default_factory=list)


class _Inference:
    def __init__(self):
        self.fresh_ids = count()

    def fresh(self) -> _TVar:
        return _TVar(next(self.fresh_ids))

    def find(self, t):
        while isinstance(t, _TVar) and t.ref is not None:
            t = t.ref
        return t

    def occurs(self, v: _TVar, t) -> bool:
        t = self.find(t)
        if t is v:
            return True
        if isinstance(t, _PredT):
            return any(self.occurs(v, a) for a in t.args)
        return False

    def unify(self, a, b, where: str):
        a, b = self.find(a), self.find(b)
        if a is b:
            return
        if isinstance(a, _TVar):
            if self.occurs(a, b):
                raise CompileError(f"{where}: infinite type (a predicate applied to itself?)")
            a.ref = b
            return
        if isinstance(b, _TVar):
            self.unify(b, a, where)
            return
        if a == "i" and b == "i":
            return
        if isinstance(a, _PredT) and isinstance(b, _PredT):
            if len(a.args) != len(b.args):
                raise CompileError(
                    f"{where}: arity mismatch ({len(a.args)} vs {len(b.args)} arguments)"
                )
            for x, y in zip(a.args, b.args):
                self.unify(x, y, where)
            return
        raise CompileError(f"{where}: cannot use an individual as a predicate or vice versa")

    def from_type(self, t: TypeExpr):
        if t == IOTA:
            return "i"
        return _PredT([self.from_type(a) for a in arg_types(t)])

    def resolve(self, t) -> TypeExpr:
        """Ground an inferred type; unconstrained variables default to ``i``."""
        t = self.find(t)
        if isinstance(t, _TVar) or t == "i":
            return IOTA
        return pred_type([self.resolve(a) for a in t.args])


def _where(node) -> str:
    line = getattr(node, "line", 0)
    return f"line {line}" if line else "clause"


@dataclass
class _Typing:
    predicates: dict[str, object]  # name -> inference type, in order of appearance
    individuals: list[str]
    functions: dict[str, int]
    clause_vars: list[dict[str, object]]


def _infer(sp: SurfaceProgram, inf: _Inference) -> _Typing:
    pred_names: list[str] = list(sp.annotations)
    for c in sp.clauses:
        _collect_predicates(c, pred_names)
    known = set(pred_names)
    predicates = {name: inf.fresh() for name in pred_names}
    for name, t in sp.annotations.items():
        inf.unify(predicates[name], inf.from_type(t), f"annotation of {name}")

    individuals: list[str] = []
    functions: dict[str, int] = {}
    clause_vars = []

    def term_type(t, env):
        if isinstance(t, SVar):
            return env.setdefault(t.name, inf.fresh())
        if isinstance(t, SConst):
            if t.name in known:
                return predicates[t.name]
            if t.name not in individuals:
                individuals.append(t.name)
            return "i"
        if isinstance(t, SFun):
            if t.name in known:
                raise CompileError(f"{_where(t)}: predicate {t.name} used as a function symbol")
            if functions.setdefault(t.name, len(t.args)) != len(t.args):
                raise CompileError(f"{_where(t)}: function {t.name} used with differing arities")
            for a in t.args:
                inf.unify(term_type(a, env), "i", _where(t))
            return "i"
        raise TypeError(t)

    def literal(lit, env):
        if isinstance(lit, SNot):
            literal(lit.body, env)
        elif isinstance(lit, SEq):
            inf.unify(term_type(lit.left, env), "i", _where(lit))
            inf.unify(term_type(lit.right, env), "i", _where(lit))
        elif isinstance(lit, SAtom):
            if isinstance(lit.head, SConst) and lit.head.name in ("true", "false") and not lit.args:
                return
            head = term_type(lit.head, env)
            inf.unify(head, _PredT([term_type(a, env) for a in lit.args]), _where(lit))
        else:
            raise TypeError(lit)

    for c in sp.clauses:
        env: dict[str, object] = {}
        literal(c.head, env)
        for lit in c.body:
            literal(lit, env)
        clause_vars.append(env)
    return _Typing(predicates, individuals, functions, clause_vars)


def _collect_predicates(c: SClause, names: list[str]) -> None:
    def add(n):
        if n not in names and n not in ("true", "false"):
            names.append(n)

    add(c.head.head.name)

    def walk(lit):
        if isinstance(lit, SNot):
            walk(lit.body)
        elif isinstance(lit, SAtom) and isinstance(lit.head, SConst):
            add(lit.head.name)

    for lit in c.body:
        walk(lit)


# -- equality helpers ---------------------------------------------------------


def type_tag(t: TypeExpr) -> str:
    """Compact name fragment for a type: ``i -> i -> o`` is ``iio``."""
    if t == IOTA:
        return "i"
    if t == O:
        return "o"
    out = []
    while isinstance(t, Arrow):
        a = t.arg
        out.append(type_tag(a) if a == IOTA or a == O else f"p{type_tag(a)}q")
        t = t.result
    return "".join(out) + "o"


def subset_name(t: TypeExpr) -> str:
    return f"subset_{type_tag(t)}"


def equal_name(t: TypeExpr) -> str:
    return f"equal_{type_tag(t)}"


def equality_helpers(t: TypeExpr) -> list[tuple[str, TypeExpr, Expr]]:
    """Core definitions of ``subset`` and ``equal`` at predicate type ``t``."""
    rel = pred_type([t, t])
    p, q = Var("P", t), Var("Q", t)
    xs = [Var(f"X{k}", a) for k, a in enumerate(arg_types(t), 1)]
    inner: Expr = And(apply(p, *xs), Not(apply(q, *xs)))
    for x in reversed(xs):
        inner = Exists(x, inner)
    subset_body = Lambda(p, Lambda(q, Not(inner)))
    sub = PredConst(subset_name(t))
    equal_body = Lambda(p, Lambda(q, And(apply(sub, p, q), apply(sub, q, p))))
    return [(subset_name(t), rel, subset_body), (equal_name(t), rel, equal_body)]


# -- translation --------------------------------------------------------------


def compile_surface(sp: SurfaceProgram, wadge_mode: bool = False) -> Program:
    """Translate a surface program to core clauses, one per surface clause.

    Predicate constants in head argument positions are rewritten into an
    extensional equality test when ``wadge_mode`` is set and rejected
    otherwise.
    """
    inf = _Inference()
    typing = _infer(sp, inf)
    pred_types = {name: inf.resolve(t) for name, t in typing.predicates.items()}
    needed: list[TypeExpr] = []
    clauses = []
    for c, env in zip(sp.clauses, typing.clause_vars):
        var_types = {name: inf.resolve(t) for name, t in env.items()}
        clauses.append(_compile_clause(c, pred_types, var_types, wadge_mode, needed))

    predicates = dict(pred_types)
    for t in needed:
        for name, rel, body in equality_helpers(t):
            if name in predicates:
                raise CompileError(f"predicate {name} clashes with a generated equality helper")
            predicates[name] = rel
            clauses.append(Clause(name, body))
    sig = Signature(predicates, tuple(typing.individuals), dict(typing.functions))
    return Program(sig, tuple(clauses))


def _compile_clause(c: SClause, pred_types, var_types, wadge_mode, needed) -> Clause:
    name = c.head.head.name
    head_type = pred_types[name]
    param_types = arg_types(head_type)
    taken = set(var_types)
    fresh_counter = count(1)

    def fresh(prefix: str) -> str:
        while True:
            candidate = f"{prefix}{next(fresh_counter)}"
            if candidate not in taken:
                taken.add(candidate)
                return candidate

    def term(t) -> Expr:
        if isinstance(t, SVar):
            return Var(t.name, var_types[t.name])
        if isinstance(t, SConst):
            if t.name in pred_types:
                return PredConst(t.name)
            return IndConst(t.name)
        return FunApp(t.name, tuple(term(a) for a in t.args))

    def literal(lit) -> Expr:
        if isinstance(lit, SNot):
            return Not(literal(lit.body))
        if isinstance(lit, SEq):
            return Eq(term(lit.left), term(lit.right))
        if isinstance(lit.head, SConst) and not lit.args and lit.head.name in ("true", "false"):
            return BoolConst(lit.head.name == "true")
        return apply(term(lit.head), *(term(a) for a in lit.args))

    params: list[Var] = []
    tests: list[Expr] = []
    bound: set[str] = set()
    for arg, ptype in zip(c.head.args, param_types):
        if isinstance(arg, SVar) and arg.name not in bound:
            bound.add(arg.name)
            params.append(Var(arg.name, ptype))
            continue
        if ptype == IOTA:
            v = Var(fresh("X"), IOTA)
            params.append(v)
            tests.append(Eq(v, term(arg)))
            continue
        is_const = isinstance(arg, SConst)
        if not wadge_mode:
            what = f"predicate constant {arg.name}" if is_const else f"repeated variable {arg.name}"
            raise CompileError(
                f"line {c.line}: {what} in a head argument of {name} needs --wadge mode"
            )
        v = Var(fresh("P"), ptype)
        params.append(v)
        if ptype not in needed:
            needed.append(ptype)
        tests.append(apply(PredConst(equal_name(ptype)), v, term(arg)))

    param_names = {v.name for v in params}
    local: list[str] = []
    for n in term_vars(c.head) + [n for lit in c.body for n in term_vars(lit)]:
        if n not in param_names and n not in local:
            local.append(n)

    body = conjoin(tests + [literal(lit) for lit in c.body])
    for n in reversed(local):
        body = Exists(Var(n, var_types[n]), body)
    for v in reversed(params):
        body = Lambda(v, body)
    return Clause(name, body)


__all__ = ["compile_surface", "equality_helpers", "equal_name", "subset_name", "type_tag"]
