"""Simple types of the language.

    functional  s ::= i | i -> s
    predicate   p ::= o | r -> p
    argument    r ::= i | p

Every predicate type decomposes uniquely as ``r1 -> ... -> rn -> o``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import HTypeError


class TypeExpr:
    __slots__ = ()

    @property
    def is_functional(self) -> bool:
        return False

    @property
    def is_predicate(self) -> bool:
        return False

    @property
    def is_argument(self) -> bool:
        return isinstance(self, Iota) or self.is_predicate


@dataclass(frozen=True)
class Iota(TypeExpr):
    @property
    def is_functional(self) -> bool:
        return True

    def __str__(self) -> str:
        return "i"


@dataclass(frozen=True)
class Omicron(TypeExpr):
    @property
    def is_predicate(self) -> bool:
        return True

    def __str__(self) -> str:
        return "o"


@dataclass(frozen=True)
class Arrow(TypeExpr):
    arg: TypeExpr
    result: TypeExpr

    def __post_init__(self):
        if self.result.is_functional:
            if self.arg != IOTA:
                raise HTypeError(f"functional types only take i arguments, got {self.arg}")
        elif self.result.is_predicate:
            if not self.arg.is_argument:
                raise HTypeError(f"{self.arg} cannot be a predicate argument type")
        else:
            raise HTypeError(f"bad result type {self.result}")

    @property
    def is_functional(self) -> bool:
        return self.result.is_functional

    @property
    def is_predicate(self) -> bool:
        return self.result.is_predicate

    def __str__(self) -> str:
        arg = f"({self.arg})" if isinstance(self.arg, Arrow) else str(self.arg)
        return f"{arg} -> {self.result}"


IOTA = Iota()
O = Omicron()


def arrow(*types: TypeExpr) -> TypeExpr:
    """Right-associated arrow: ``arrow(a, b, c) == a -> (b -> c)``."""
    result = types[-1]
    for t in reversed(types[:-1]):
        result = Arrow(t, result)
    return result


def pred_type(arg_types) -> TypeExpr:
    return arrow(*arg_types, O)


def arg_types(t: TypeExpr) -> tuple[TypeExpr, ...]:
    """The argument types ``r1..rn`` of a predicate type ``r1 -> .. -> rn -> o``."""
    if not t.is_predicate:
        raise HTypeError(f"{t} is not a predicate type")
    out = []
    while isinstance(t, Arrow):
        out.append(t.arg)
        t = t.result
    return tuple(out)


def arity(t: TypeExpr) -> int:
    return len(arg_types(t))


def function_arity(t: TypeExpr) -> int:
    n = 0
    while isinstance(t, Arrow):
        n += 1
        t = t.result
    return n


def is_first_order_predicate(t: TypeExpr) -> bool:
    """``i^n -> o`` for some n >= 0 (including plain ``o``)."""
    return t.is_predicate and all(a == IOTA for a in arg_types(t))


def is_enumerable(t: TypeExpr) -> bool:
    """Types whose denotation the solver tabulates: ``i``, ``o`` and ``i^n -> o``."""
    return t == IOTA or is_first_order_predicate(t)
