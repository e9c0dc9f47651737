"""Exception hierarchy shared by every stage of the pipeline.

The CLI maps the families below onto exit codes, so new errors should
subclass the family that describes how a caller is expected to react.
"""

from __future__ import annotations


class ExtensiaError(Exception):
    """Base class for all library errors."""


# -- front end (exit code 2) ------------------------------------------------


class FrontEndError(ExtensiaError):
    pass


class ParseError(FrontEndError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line else ""
        super().__init__(f"{where}{message}")
        self.message = message


class CompileError(FrontEndError):
    pass


class HTypeError(FrontEndError):
    """A program or expression is not well typed."""


# -- semantic restrictions (exit code 3) ------------------------------------


class RestrictionError(ExtensiaError):
    pass


class InfiniteUniverse(RestrictionError):
    """Function symbols make the Herbrand universe infinite."""


class NonEnumerableType(RestrictionError):
    """A type whose denotation cannot be tabulated (third order or above)."""


class NotNormalFragment(RestrictionError):
    """Program is outside the first-order normal fragment."""


# -- resource limits (exit code 4) ------------------------------------------


class ResourceError(ExtensiaError):
    pass


class LevelOverflow(ResourceError):
    """A truth level reached the configured bound on levels."""


class BudgetExceeded(ResourceError):
    pass


# -- misuse of the semantic operations ---------------------------------------


class DomainError(ExtensiaError):
    pass


class NotInCone(DomainError):
    """Set passed to a stage bound does not lie in a single cone (x]_alpha."""


class TypeMismatch(DomainError):
    pass


class SignatureMismatch(DomainError):
    pass


class EmptySet(DomainError):
    pass


class UnboundVariable(DomainError):
    pass


# -- internal invariants (exit code 5) ---------------------------------------


class InvariantViolation(ExtensiaError):
    """Something the theory guarantees did not happen: a bug, not bad input."""


class StageDivergence(InvariantViolation):
    pass


class MonotonicityViolation(InvariantViolation):
    pass


class FixpointViolation(InvariantViolation):
    pass


class NoModels(InvariantViolation):
    pass
