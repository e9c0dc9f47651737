"""Brute-force and classical reference computations.

None of this shares code with the staged engine beyond the evaluator
used to decide whether an interpretation is a model:

* ``brute_min_model`` enumerates every interpretation, keeps the models
  and takes their greatest lower bound;
* ``wfs_alternating_fixpoint`` computes the well-founded model of a
  ground normal program with the alternating fixpoint of the
  Gelfond-Lifschitz reduct.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass
from typing import Iterator

from . import truth
from .domains import Domain, Table, Universe, check_alpha_monotone
from .engine import glb_interpretations
from .errors import BudgetExceeded, InvariantViolation, NoModels, NotNormalFragment
from .semantics import Interpretation, ProgramSemantics
from .syntax.expr import Program
from .syntax.surface import SAtom, SConst, SEq, SFun, SNot, SurfaceProgram, SVar, term_vars
from .syntax.typecheck import typecheck
from .syntax.types import arg_types, is_first_order_predicate

DEFAULT_BUDGET = 10**7


def default_budget() -> int:
    env = os.environ.get("EXTENSIA_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


# -- enumeration ------------------------------------------------------------------


def admissible_tables(domain: Domain, t, kappa: int) -> list:
    """Every admissible value for a predicate of type ``t``."""
    n = domain.cell_count(t)
    candidates = itertools.product(domain.truth, repeat=n)
    if is_first_order_predicate(t):
        return list(candidates)
    out = []
    shape = domain.shape(t)
    for vals in candidates:
        table = Table(t, vals, shape)
        if all(check_alpha_monotone(table, t, a, domain) for a in range(kappa)):
            out.append(vals)
    return out


def interpretation_count(program: Program, kappa: int) -> int:
    dom = Domain(Universe.of(program), kappa)
    cells = sum(dom.cell_count(t) for t in program.signature.predicates.values())
    return len(dom.truth) ** cells


def enumerate_interpretations(
    program: Program, kappa: int, budget: int | None = None
) -> Iterator[Interpretation]:
    """All interpretations over ``V_kappa`` in canonical order.

    Higher-order predicates only range over tables that are
    alpha-monotone at every stage.
    """
    budget = default_budget() if budget is None else budget
    typed = typecheck(program)
    dom = Domain(Universe.of(typed), kappa)
    types = dict(typed.signature.predicates)
    count = interpretation_count(typed, kappa)
    if count > budget:
        raise BudgetExceeded(f"{count} interpretations exceed the budget of {budget}")
    names = list(types)
    choices = [admissible_tables(dom, types[p], kappa) for p in names]
    for combo in itertools.product(*choices):
        yield Interpretation(dom, types, dict(zip(names, combo)))


def all_models(program: Program, kappa: int, budget: int | None = None) -> list[Interpretation]:
    sem = ProgramSemantics(program, kappa=kappa)
    return [m for m in enumerate_interpretations(program, kappa, budget) if sem.is_model(m)]


def brute_min_model(program: Program, kappa: int, budget: int | None = None) -> Interpretation:
    """Greatest lower bound of every model, checked to be a model itself."""
    models = all_models(program, kappa, budget)
    if not models:
        raise NoModels("no interpretation is a model; the all-T0 interpretation always should be")
    glb = glb_interpretations(models)
    if not ProgramSemantics(program, glb.domain).is_model(glb):
        raise InvariantViolation("the greatest lower bound of the models is not a model")
    return glb


# -- ground normal programs --------------------------------------------------------


@dataclass(frozen=True)
class GroundRule:
    head: str
    pos: tuple[str, ...] = ()
    neg: tuple[str, ...] = ()

    def __str__(self) -> str:
        body = list(self.pos) + [f"not {a}" for a in self.neg]
        return f"{self.head} :- {', '.join(body)}." if body else f"{self.head}."


@dataclass(frozen=True)
class GroundNormalProgram:
    rules: tuple[GroundRule, ...]
    atoms: tuple[str, ...]

    def __str__(self) -> str:
        return "\n".join(str(r) for r in self.rules)


def atom_name(pred: str, args: tuple[str, ...]) -> str:
    return f"{pred}({','.join(args)})" if args else pred


def _normal_parts(sp: SurfaceProgram):
    """Predicate arities and individual constants, or NotNormalFragment."""
    arities: dict[str, int] = {}
    constants: list[str] = []

    def note_pred(name, n, where):
        if arities.setdefault(name, n) != n:
            raise NotNormalFragment(f"{where}: {name} used with different arities")

    def check_term(t, where):
        if isinstance(t, SFun):
            raise NotNormalFragment(f"{where}: function symbol {t.name}")
        if isinstance(t, SConst) and t.name not in constants:
            constants.append(t.name)

    def check_atom(a, where):
        if not isinstance(a, SAtom) or isinstance(a.head, SVar):
            raise NotNormalFragment(f"{where}: higher-order call")
        note_pred(a.head.name, len(a.args), where)
        for t in a.args:
            check_term(t, where)

    for c in sp.clauses:
        where = f"line {c.line}"
        check_atom(c.head, where)
        for lit in c.body:
            inner = lit.body if isinstance(lit, SNot) else lit
            if isinstance(inner, SNot):
                raise NotNormalFragment(f"{where}: nested negation")
            if isinstance(inner, SEq):
                check_term(inner.left, where)
                check_term(inner.right, where)
            else:
                check_atom(inner, where)
    for name in arities:
        if name in constants:
            raise NotNormalFragment(f"predicate {name} passed as an argument")
    return arities, [c for c in constants if c not in ("true", "false")]


def ground(sp: SurfaceProgram, universe: Universe | tuple[str, ...] | None = None) -> GroundNormalProgram:
    """Instantiate a first-order normal program over a finite universe.

    Equalities are decided during instantiation, so they never reach the
    ground rules.
    """
    arities, constants = _normal_parts(sp)
    arities.pop("true", None)
    arities.pop("false", None)
    if universe is None:
        universe = tuple(constants) or ("c",)
    elif isinstance(universe, Universe):
        universe = universe.individuals
    rules: list[GroundRule] = []
    for c in sp.clauses:
        names = term_vars(c.head)
        for lit in c.body:
            for n in term_vars(lit):
                if n not in names:
                    names.append(n)
        for values in itertools.product(universe, repeat=len(names)):
            env = dict(zip(names, values))
            rule = _instantiate(c, env)
            if rule is not None:
                rules.append(rule)
    atoms = tuple(
        atom_name(p, args) for p, n in arities.items() for args in itertools.product(universe, repeat=n)
    )
    return GroundNormalProgram(tuple(rules), atoms)


def _term_value(t, env) -> str:
    return env[t.name] if isinstance(t, SVar) else t.name


def _instantiate(c, env) -> GroundRule | None:
    pos: list[str] = []
    neg: list[str] = []
    for lit in c.body:
        negated = isinstance(lit, SNot)
        inner = lit.body if negated else lit
        if isinstance(inner, SEq):
            holds = _term_value(inner.left, env) == _term_value(inner.right, env)
            if holds == negated:
                return None
            continue
        name = inner.head.name
        if name in ("true", "false") and not inner.args:
            if (name == "true") == negated:
                return None
            continue
        atom = atom_name(name, tuple(_term_value(t, env) for t in inner.args))
        (neg if negated else pos).append(atom)
    head = atom_name(c.head.head.name, tuple(_term_value(t, env) for t in c.head.args))
    return GroundRule(head, tuple(pos), tuple(neg))


def _least_model_of_reduct(g: GroundNormalProgram, assumed: frozenset) -> frozenset:
    """Least model of the program with ``not a`` read as true iff ``a`` is not assumed."""
    rules = [r for r in g.rules if not any(a in assumed for a in r.neg)]
    true: set[str] = set()
    changed = True
    while changed:
        changed = False
        for r in rules:
            if r.head not in true and all(a in true for a in r.pos):
                true.add(r.head)
                changed = True
    return frozenset(true)


def wfs_alternating_fixpoint(g: GroundNormalProgram) -> dict[str, str]:
    """Well-founded model as ``{atom: "True" | "False" | "Undef"}``."""
    true: frozenset = frozenset()
    while True:
        possible = _least_model_of_reduct(g, true)
        nxt = _least_model_of_reduct(g, possible)
        if nxt == true:
            break
        true = nxt
    possible = _least_model_of_reduct(g, true)
    atoms = list(g.atoms) + sorted({r.head for r in g.rules} - set(g.atoms))
    return {
        a: "True" if a in true else ("Undef" if a in possible else "False") for a in atoms
    }


def atom_labels(m: Interpretation) -> dict[str, str]:
    """Collapsed labels of a first-order interpretation keyed like ground atoms."""
    out = {}
    for p, vals in m.tables.items():
        t = m.types[p]
        for k, v in enumerate(vals):
            args = tuple(m.domain.render(d, a) for d, a in zip(m.domain.cell_args(k, t), arg_types(t)))
            out[atom_name(p, args)] = truth.label(v)
    return out


# -- random corpus -----------------------------------------------------------------


def random_normal_program(rng: random.Random, max_atoms: int = 6, max_rules: int = 10) -> str:
    """A random propositional normal program in surface syntax."""
    n_atoms = rng.randint(1, max_atoms)
    atoms = [f"a{i}" for i in range(n_atoms)]
    lines = []
    for _ in range(rng.randint(1, max_rules)):
        head = rng.choice(atoms)
        body = []
        for _ in range(rng.randint(0, 3)):
            a = rng.choice(atoms)
            body.append(f"not {a}" if rng.random() < 0.5 else a)
        lines.append(f"{head} :- {', '.join(body)}." if body else f"{head}.")
    return "\n".join(lines) + "\n"


def random_corpus(n: int = 60, seed: int = 20130901, max_atoms: int = 6, max_rules: int = 10) -> list[str]:
    rng = random.Random(seed)
    return [random_normal_program(rng, max_atoms, max_rules) for _ in range(n)]


__all__ = [
    "DEFAULT_BUDGET",
    "admissible_tables",
    "GroundNormalProgram",
    "GroundRule",
    "all_models",
    "atom_labels",
    "brute_min_model",
    "enumerate_interpretations",
    "ground",
    "interpretation_count",
    "random_corpus",
    "random_normal_program",
    "wfs_alternating_fixpoint",
]
