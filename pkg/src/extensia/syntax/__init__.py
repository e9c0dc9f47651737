"""Types, expressions, parsers and the surface-to-core compiler."""

from .compile import compile_surface, equal_name, subset_name
from .core import parse_core, parse_expr, parse_type, pretty
from .expr import Clause, Program, Signature
from .surface import SurfaceProgram, parse_surface
from .typecheck import annotate, check_enumerable, typecheck
from .types import IOTA, O, Arrow, TypeExpr, arrow

__all__ = [
    "IOTA",
    "O",
    "Arrow",
    "Clause",
    "Program",
    "Signature",
    "SurfaceProgram",
    "TypeExpr",
    "annotate",
    "arrow",
    "check_enumerable",
    "compile_surface",
    "equal_name",
    "parse_core",
    "parse_expr",
    "parse_surface",
    "parse_type",
    "pretty",
    "subset_name",
    "typecheck",
]
