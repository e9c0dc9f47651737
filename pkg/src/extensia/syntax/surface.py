"""Prolog-like surface programs.

    singer(sally).
    band(B) :- singer(S), B(S), guitarist(G), B(G).
    two_singers(B) :- B(S1), B(S2), singer(S1), singer(S2), not(S1 = S2).
    pred phi : (i -> o) -> o.

Literals are atoms ``p(t, ..)`` or ``V(t, ..)``, equalities ``t = t``
and negations ``not L``.  Terms are variables, constants, or function
terms ``f(t, ..)``.  A ``pred`` line pins the type of a predicate when
usage alone cannot decide it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count

from ..errors import ParseError
from .core import _type
from .lexer import TokenStream
from .types import TypeExpr


@dataclass(frozen=True)
class SVar:
    name: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SConst:
    name: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SFun:
    name: str
    args: tuple
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SAtom:
    """``head(args)``; the head is a constant or, in bodies, a variable."""

    head: SVar | SConst
    args: tuple = ()
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SEq:
    left: object
    right: object
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SNot:
    body: object
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SClause:
    head: SAtom
    body: tuple = ()
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SurfaceProgram:
    clauses: tuple[SClause, ...]
    annotations: dict[str, TypeExpr] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.clauses)


def term_vars(t) -> list[str]:
    """Variable names of a term or literal, in order of first appearance."""
    out: list[str] = []

    def walk(x):
        if isinstance(x, SVar):
            if x.name not in out:
                out.append(x.name)
        elif isinstance(x, SFun):
            for a in x.args:
                walk(a)
        elif isinstance(x, SAtom):
            walk(x.head)
            for a in x.args:
                walk(a)
        elif isinstance(x, SEq):
            walk(x.left)
            walk(x.right)
        elif isinstance(x, SNot):
            walk(x.body)

    walk(t)
    return out


class _SurfaceParser:
    def __init__(self, text: str):
        self.ts = TokenStream(text)
        self.anon = count(1)

    def program(self) -> SurfaceProgram:
        clauses, annotations = [], {}
        ts = self.ts
        while not ts.done:
            if ts.at("pred") and ts.peek(1).kind == "IDENT" and ts.at(":", 2):
                ts.next()
                name = ts.next().text
                ts.expect(":")
                t = _type(ts)
                ts.expect(".")
                if not t.is_predicate:
                    ts.fail(f"{name} annotated with non-predicate type {t}")
                annotations[name] = t
                continue
            clauses.append(self.clause())
        return SurfaceProgram(tuple(clauses), annotations)

    def clause(self) -> SClause:
        ts = self.ts
        tok = ts.peek()
        if tok.kind != "IDENT":
            ts.fail(f"expected a clause head, found {tok.text or 'end of input'!r}")
        head = self.atom_or_term()
        if not isinstance(head, SAtom):
            ts.fail("clause head must be an atom", tok)
        body = []
        if ts.accept(":-"):
            body.append(self.literal())
            while ts.accept(","):
                body.append(self.literal())
        ts.expect(".")
        return SClause(head, tuple(body), tok.line)

    def literal(self):
        ts = self.ts
        tok = ts.peek()
        if ts.accept("not") or ts.accept("~"):
            return SNot(self.literal(), tok.line, tok.column)
        if ts.accept("("):
            lit = self.literal()
            ts.expect(")")
            return lit
        left = self.atom_or_term()
        if ts.accept("="):
            right = self.term()
            return SEq(self._as_term(left), right, tok.line, tok.column)
        if isinstance(left, SAtom):
            return left
        if isinstance(left, SVar):
            return SAtom(left, (), left.line, left.column)
        ts.fail("expected a literal", tok)

    def _as_term(self, x):
        if isinstance(x, SAtom):
            if isinstance(x.head, SVar):
                self.ts.fail("a variable cannot be applied inside an equality")
            return SFun(x.head.name, x.args, x.line, x.column)
        return x

    def atom_or_term(self):
        """A name with optional argument list. Bare names become zero-argument atoms."""
        ts = self.ts
        tok = ts.next()
        if tok.kind == "VAR":
            head = self._var(tok)
        elif tok.kind == "IDENT":
            head = SConst(tok.text, tok.line, tok.column)
        else:
            ts.fail(f"unexpected {tok.text or 'end of input'!r}", tok)
        if ts.accept("("):
            args = [self.term()]
            while ts.accept(","):
                args.append(self.term())
            ts.expect(")")
            return SAtom(head, tuple(args), tok.line, tok.column)
        if isinstance(head, SConst):
            return SAtom(head, (), tok.line, tok.column)
        return head

    def _var(self, tok) -> SVar:
        name = tok.text
        if name == "_":
            name = f"_G{next(self.anon)}"
        return SVar(name, tok.line, tok.column)

    def term(self):
        ts = self.ts
        tok = ts.next()
        if tok.kind == "VAR":
            return self._var(tok)
        if tok.kind != "IDENT":
            ts.fail(f"expected a term, found {tok.text or 'end of input'!r}", tok)
        if ts.accept("("):
            args = [self.term()]
            while ts.accept(","):
                args.append(self.term())
            ts.expect(")")
            return SFun(tok.text, tuple(args), tok.line, tok.column)
        return SConst(tok.text, tok.line, tok.column)


def parse_surface(text: str) -> SurfaceProgram:
    """Parse Prolog-like clause text. Raises ``ParseError`` with a position."""
    return _SurfaceParser(text).program()


__all__ = [
    "ParseError",
    "SAtom",
    "SClause",
    "SConst",
    "SEq",
    "SFun",
    "SNot",
    "SVar",
    "SurfaceProgram",
    "parse_surface",
    "term_vars",
]
