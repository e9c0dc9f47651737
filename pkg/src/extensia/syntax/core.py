"""Concrete text form of core programs, with a parser and a printer.

    individual a, b.
    pred subset : (i -> o) -> (i -> o) -> o.
    subset <- \\P:i -> o. \\Q:i -> o. ~(exists X:i. P X /\\ ~Q X).

Lower-case names are constants (predicate, function or individual by
declaration), capitalised names are variables bound by ``\\`` or
``exists``.  Binding strength from loosest: binders, ``\\/``, ``/\\``,
``~``, ``=``, application.  Declarations must precede clauses.
"""

from __future__ import annotations

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
)
from .lexer import TokenStream
from .types import IOTA, O, Arrow, TypeExpr, arrow, function_arity

_KEYWORDS = {"true", "false", "exists", "pred", "individual", "function"}


def parse_type(text: str) -> TypeExpr:
    ts = TokenStream(text)
    t = _type(ts)
    if not ts.done:
        ts.fail("trailing input after type")
    return t


def _type(ts: TokenStream) -> TypeExpr:
    tok = ts.peek()
    if ts.accept("("):
        left = _type(ts)
        ts.expect(")")
    elif ts.accept("i"):
        left = IOTA
    elif ts.accept("o"):
        left = O
    else:
        ts.fail(f"expected a type, found {tok.text!r}")
    if ts.accept("->"):
        return Arrow(left, _type(ts))
    return left


class _ExprParser:
    def __init__(self, ts: TokenStream, predicates: dict, functions: dict, individuals: list):
        self.ts = ts
        self.predicates = predicates
        self.functions = functions
        self.individuals = individuals

    def expr(self, scope: dict) -> Expr:
        if self.ts.at("\\") or self.ts.at("exists"):
            return self.binder(scope)
        return self.disjunction(scope)

    def binder(self, scope: dict) -> Expr:
        is_lambda = self.ts.next().text == "\\"
        name = self.ts.expect_kind("VAR", "a variable").text
        self.ts.expect(":")
        var = Var(name, _type(self.ts))
        self.ts.expect(".")
        body = self.expr({**scope, name: var})
        return Lambda(var, body) if is_lambda else Exists(var, body)

    def disjunction(self, scope):
        left = self.conjunction(scope)
        while self.ts.accept("\\/"):
            left = Or(left, self.conjunction(scope))
        return left

    def conjunction(self, scope):
        left = self.unary(scope)
        while self.ts.accept("/\\"):
            left = And(left, self.unary(scope))
        return left

    def unary(self, scope):
        if self.ts.accept("~"):
            return Not(self.unary(scope))
        if self.ts.at("\\") or self.ts.at("exists"):
            return self.binder(scope)
        left = self.application(scope)
        if self.ts.accept("="):
            return Eq(left, self.application(scope))
        return left

    def _starts_atom(self) -> bool:
        tok = self.ts.peek()
        if tok.kind == "VAR":
            return True
        if tok.kind == "IDENT":
            return tok.text not in ("exists", "pred", "individual", "function")
        return tok.kind == "SYM" and tok.text == "("

    def application(self, scope):
        head = self.atom(scope)
        while self._starts_atom():
            head = App(head, self.atom(scope))
        return head

    def atom(self, scope):
        ts = self.ts
        tok = ts.next()
        if tok.kind == "VAR":
            if tok.text not in scope:
                ts.fail(f"unbound variable {tok.text}", tok)
            return scope[tok.text]
        if tok.kind == "SYM" and tok.text == "(":
            e = self.expr(scope)
            ts.expect(")")
            return e
        if tok.kind == "IDENT":
            name = tok.text
            if name == "true":
                return BoolConst(True)
            if name == "false":
                return BoolConst(False)
            if name in _KEYWORDS:
                ts.fail(f"unexpected keyword {name!r}", tok)
            if name in self.predicates:
                return PredConst(name)
            if name in self.functions:
                ts.expect("(")
                args = [self.expr(scope)]
                while ts.accept(","):
                    args.append(self.expr(scope))
                ts.expect(")")
                return FunApp(name, tuple(args))
            if name not in self.individuals:
                self.individuals.append(name)
            return IndConst(name)
        ts.fail(f"unexpected {tok.text or 'end of input'!r}", tok)


def parse_expr(text: str, signature: Signature, scope: dict | None = None) -> Expr:
    """Parse one core expression against an existing signature."""
    ts = TokenStream(text)
    individuals = list(signature.individuals)
    parser = _ExprParser(ts, signature.predicates, signature.functions, individuals)
    e = parser.expr(dict(scope or {}))
    if not ts.done:
        ts.fail(f"unexpected {ts.peek().text!r} after expression")
    return e


def parse_core(text: str) -> Program:
    ts = TokenStream(text)
    predicates: dict[str, TypeExpr] = {}
    functions: dict[str, int] = {}
    individuals: list[str] = []
    clauses = []
    parser = _ExprParser(ts, predicates, functions, individuals)
    while not ts.done:
        tok = ts.peek()
        if ts.accept("individual"):
            while True:
                name = ts.expect_kind("IDENT", "an individual constant").text
                if name not in individuals:
                    individuals.append(name)
                if not ts.accept(","):
                    break
            ts.expect(".")
        elif ts.accept("pred") or ts.accept("function"):
            name = ts.expect_kind("IDENT", "a name").text
            ts.expect(":")
            t = _type(ts)
            ts.expect(".")
            if tok.text == "pred":
                if not t.is_predicate:
                    ts.fail(f"{name} declared with non-predicate type {t}", tok)
                predicates[name] = t
            else:
                if not t.is_functional or t == IOTA:
                    ts.fail(f"{name} declared with non-function type {t}", tok)
                functions[name] = function_arity(t)
        else:
            head = ts.expect_kind("IDENT", "a clause head").text
            if head not in predicates:
                ts.fail(f"undeclared predicate {head}", tok)
            ts.expect("<-")
            body = parser.expr({})
            ts.expect(".")
            clauses.append(Clause(head, body))
    return Program(Signature(predicates, tuple(individuals), functions), tuple(clauses))


# -- printing -----------------------------------------------------------------

_BINDER, _OR, _AND, _NOT, _EQ, _APP, _ATOM = range(7)


def _render(e: Expr) -> tuple[str, int]:
    if isinstance(e, BoolConst):
        return ("true" if e.value else "false"), _ATOM
    if isinstance(e, (IndConst, PredConst)):
        return e.name, _ATOM
    if isinstance(e, Var):
        return e.name, _ATOM
    if isinstance(e, FunApp):
        return f"{e.fn}({', '.join(_pp(a, _BINDER) for a in e.args)})", _ATOM
    if isinstance(e, App):
        return f"{_pp(e.fn, _APP)} {_pp(e.arg, _ATOM)}", _APP
    if isinstance(e, Eq):
        return f"{_pp(e.left, _APP)} = {_pp(e.right, _APP)}", _EQ
    if isinstance(e, Not):
        return f"~{_pp(e.body, _NOT)}", _NOT
    if isinstance(e, And):
        return f"{_pp(e.left, _AND)} /\\ {_pp(e.right, _NOT)}", _AND
    if isinstance(e, Or):
        return f"{_pp(e.left, _OR)} \\/ {_pp(e.right, _AND)}", _OR
    if isinstance(e, Lambda):
        return f"\\{e.var.name}:{e.var.vtype}. {_pp(e.body, _BINDER)}", _BINDER
    if isinstance(e, Exists):
        return f"exists {e.var.name}:{e.var.vtype}. {_pp(e.body, _BINDER)}", _BINDER
    raise TypeError(f"not an expression: {e!r}")


def _pp(e: Expr, context: int) -> str:
    text, level = _render(e)
    return f"({text})" if level < context else text


def pretty(x) -> str:
    """Render an expression or a whole program in the core text form."""
    if isinstance(x, Program):
        return _pretty_program(x)
    return _pp(x, _BINDER)


def _pretty_program(p: Program) -> str:
    sig = p.signature
    lines = []
    if sig.individuals:
        lines.append(f"individual {', '.join(sig.individuals)}.")
    for name, n in sig.functions.items():
        lines.append(f"function {name} : {arrow(*([IOTA] * (n + 1)))}.")
    for name, t in sig.predicates.items():
        lines.append(f"pred {name} : {t}.")
    for c in p.clauses:
        lines.append(f"{c.head} <- {pretty(c.body)}.")
    return "\n".join(lines) + "\n"
