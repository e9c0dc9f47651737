"""The infinite-valued truth domain and its stage relations.

Truth values form the chain

    F0 < F1 < F2 < ... < 0 < ... < T2 < T1 < T0

where the subscript is the *order* (how far removed from plain truth or
falsity a value is) and ``0`` has infinite order.  A configuration bounds
levels by ``kappa``: the truncated domain ``V_kappa`` holds the levels
``0 .. kappa-1`` and ``0`` then stands for every order ``>= kappa``.  With
that reading ``V_kappa`` is itself a basic model, so the stage operators
below accept an optional ``kappa`` and fall back to ``0`` where the next
level does not exist.

``TruthValue`` is an ``int`` subclass whose integer value respects the
chain order, so ``<``, ``min`` and ``max`` are the lattice operations.
"""

from __future__ import annotations

import math
from enum import Enum
from functools import lru_cache
from typing import Iterable

from .errors import LevelOverflow, NotInCone, ParseError

INFINITY = math.inf

# Codes: F_i -> -_SPAN + i, 0 -> 0, T_i -> _SPAN - i.
_SPAN = 1 << 40


class Sign(str, Enum):
    FALSE = "F"
    ZERO = "0"
    TRUE = "T"


class TruthValue(int):
    __slots__ = ()

    @property
    def sign(self) -> Sign:
        if self < 0:
            return Sign.FALSE
        if self > 0:
            return Sign.TRUE
        return Sign.ZERO

    @property
    def level(self) -> int | None:
        if self < 0:
            return int(self) + _SPAN
        if self > 0:
            return _SPAN - int(self)
        return None

    @property
    def is_true(self) -> bool:
        return self > 0

    @property
    def is_false(self) -> bool:
        return self < 0

    def __repr__(self) -> str:
        if self == 0:
            return "0"
        return f"{self.sign.value}{self.level}"

    __str__ = __repr__

    def to_json(self) -> dict:
        if self == 0:
            return {"sign": "0"}
        return {"sign": self.sign.value, "level": self.level}

    @classmethod
    def from_json(cls, data: dict) -> TruthValue:
        sign = data["sign"]
        if sign == "0":
            return ZERO
        if sign == "T":
            return T(int(data["level"]))
        if sign == "F":
            return F(int(data["level"]))
        raise ValueError(f"bad truth value sign {sign!r}")

    @classmethod
    def parse(cls, text: str) -> TruthValue:
        text = text.strip()
        if text == "0":
            return ZERO
        if len(text) >= 2 and text[0] in "TF" and text[1:].isdigit():
            level = int(text[1:])
            return T(level) if text[0] == "T" else F(level)
        raise ParseError(f"not a truth value: {text!r}")


@lru_cache(maxsize=None)
def T(level: int) -> TruthValue:
    if not 0 <= level < _SPAN:
        raise ValueError(f"truth level out of range: {level}")
    return TruthValue(_SPAN - level)


@lru_cache(maxsize=None)
def F(level: int) -> TruthValue:
    if not 0 <= level < _SPAN:
        raise ValueError(f"truth level out of range: {level}")
    return TruthValue(level - _SPAN)


ZERO = TruthValue(0)
TRUE = T(0)
FALSE = F(0)


def values(kappa: int) -> tuple[TruthValue, ...]:
    """All of ``V_kappa`` in chain order (``2*kappa + 1`` values)."""
    if kappa < 1:
        raise ValueError("kappa must be at least 1")
    return (
        tuple(F(i) for i in range(kappa))
        + (ZERO,)
        + tuple(T(i) for i in reversed(range(kappa)))
    )


def order(v: TruthValue) -> int | float:
    level = v.level
    return INFINITY if level is None else level


def leq(v: TruthValue, w: TruthValue) -> bool:
    return v <= w


def meet(xs: Iterable[TruthValue]) -> TruthValue:
    return min(xs, default=TRUE)


def join(xs: Iterable[TruthValue]) -> TruthValue:
    return max(xs, default=FALSE)


def in_range(v: TruthValue, kappa: int) -> bool:
    return v == 0 or v.level < kappa


def saturate(v: TruthValue, kappa: int) -> TruthValue:
    """Map ``v`` into ``V_kappa``: levels ``>= kappa`` become ``0``."""
    return v if v == 0 or v.level < kappa else ZERO


def neg(v: TruthValue, kappa: int | None = None, *, saturate: bool = False) -> TruthValue:
    """Negation as failure: ``F_a -> T_(a+1)``, ``T_a -> F_(a+1)``, ``0 -> 0``.

    With a ``kappa`` the result must stay inside ``V_kappa``; otherwise
    ``LevelOverflow`` is raised, or ``0`` is returned when ``saturate`` is set.
    """
    if v == 0:
        return ZERO
    level = v.level + 1
    if kappa is not None and level >= kappa:
        if saturate:
            return ZERO
        raise LevelOverflow(f"~{v} needs level {level}, but kappa is {kappa}")
    return T(level) if v < 0 else F(level)


def sq_alpha(v: TruthValue, w: TruthValue, alpha: int) -> bool:
    """The stage preorder ``v [=_alpha w``."""
    ov, ow = order(v), order(w)
    if v == w and ov < alpha:
        return True
    if v == F(alpha) and ow >= alpha:
        return True
    if w == T(alpha) and ov >= alpha:
        return True
    return ov > alpha and ow > alpha


def eq_alpha(v: TruthValue, w: TruthValue, alpha: int) -> bool:
    return v == w or (order(v) > alpha and order(w) > alpha)


def sq_alpha_strict(v: TruthValue, w: TruthValue, alpha: int) -> bool:
    return sq_alpha(v, w, alpha) and not eq_alpha(v, w, alpha)


def _check_alpha(alpha: int, kappa: int | None) -> None:
    if alpha < 0 or (kappa is not None and alpha >= kappa):
        raise ValueError(f"stage {alpha} outside 0..{kappa}")


def _next_false(alpha: int, kappa: int | None) -> TruthValue:
    return F(alpha + 1) if kappa is None or alpha + 1 < kappa else ZERO


def _next_true(alpha: int, kappa: int | None) -> TruthValue:
    return T(alpha + 1) if kappa is None or alpha + 1 < kappa else ZERO


def restrict(v: TruthValue, alpha: int, kappa: int | None = None) -> TruthValue:
    """``v|_alpha``: keep values of order <= alpha, push the rest to F_(alpha+1)."""
    _check_alpha(alpha, kappa)
    if order(v) <= alpha:
        return v
    return _next_false(alpha, kappa)


def in_cone(xs: Iterable[TruthValue], alpha: int) -> bool:
    """Whether ``xs`` lies in one cone ``(x]_alpha``.

    Two values are ``=_beta`` for every ``beta < alpha`` exactly when they
    are equal or both have order ``>= alpha``.
    """
    distinct = set(xs)
    return len(distinct) <= 1 or all(order(x) >= alpha for x in distinct)


def glb_alpha(xs: Iterable[TruthValue], alpha: int, kappa: int | None = None) -> TruthValue:
    xs = list(xs)
    _check_alpha(alpha, kappa)
    if not xs:
        return T(alpha)
    if not in_cone(xs, alpha):
        raise NotInCone(f"{sorted(set(xs))} is not inside a single cone at stage {alpha}")
    m = min(xs)
    return m if order(m) <= alpha else _next_true(alpha, kappa)


def lub_alpha(xs: Iterable[TruthValue], alpha: int, kappa: int | None = None) -> TruthValue:
    xs = list(xs)
    _check_alpha(alpha, kappa)
    if not xs:
        return F(alpha)
    if not in_cone(xs, alpha):
        raise NotInCone(f"{sorted(set(xs))} is not inside a single cone at stage {alpha}")
    j = max(xs)
    return j if order(j) <= alpha else _next_false(alpha, kappa)


def collapse(v: TruthValue) -> TruthValue:
    """Project onto three values: any T becomes T0, any F becomes F0."""
    if v > 0:
        return TRUE
    if v < 0:
        return FALSE
    return ZERO


def label(v: TruthValue) -> str:
    if v > 0:
        return "True"
    if v < 0:
        return "False"
    return "Undef"
