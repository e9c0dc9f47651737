"""Staged computation of the minimum model.

Stage ``alpha`` starts with every unsettled cell at ``F_alpha`` and
applies the consequence operator to those cells until two consecutive
iterates agree on every value of order ``<= alpha``.  Cells whose value
then has order exactly ``alpha`` are settled; the rest are reset to
``F_(alpha+1)`` for the next stage.  Cells that never settle get ``0``.

Only unsettled cells are recomputed.  A settled cell has order below the
current stage and the operator is alpha-monotone, so its value cannot
move any more; the final fixed-point assertion double-checks this.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import truth
from .domains import Domain, Universe
from .errors import (
    EmptySet,
    FixpointViolation,
    LevelOverflow,
    MonotonicityViolation,
    SignatureMismatch,
    StageDivergence,
)
from .semantics import Interpretation, ProgramSemantics
from .syntax.expr import Program
from .syntax.typecheck import typecheck
from .syntax.types import O, TypeExpr, is_first_order_predicate
from .truth import ZERO, F

DEFAULT_CELL_BUDGET = 50_000


@dataclass
class EngineConfig:
    kappa_max: int | None = None  # None picks auto_kappa
    stage_iteration_cap: int | None = None  # None means 2 * cells + 2
    trace: bool = False
    cell_budget: int = DEFAULT_CELL_BUDGET
    check_fixpoint: bool = True

    def __post_init__(self):
        if self.kappa_max is not None and self.kappa_max < 1:
            raise ValueError("kappa_max must be at least 1")


@dataclass(frozen=True)
class TraceEvent:
    stage: int
    iteration: int
    changed: int
    stabilized: tuple[str, ...] = ()

    def __str__(self) -> str:
        line = f"stage {self.stage} iteration {self.iteration}: {self.changed} changed"
        if self.stabilized:
            line += f"; stabilized {', '.join(self.stabilized)}"
        return line


@dataclass
class SolveResult:
    model: Interpretation
    # per predicate, the stage at which each cell settled (None: left at 0)
    stabilized_at: dict[str, tuple[int | None, ...]]
    stages_used: int
    kappa: int
    complete: bool = True
    trace: list[TraceEvent] = field(default_factory=list)

    @property
    def cells(self) -> int:
        return self.model.cell_count()


def _is_first_order(types: dict[str, TypeExpr]) -> bool:
    return all(is_first_order_predicate(t) for t in types.values())


def _cell_total(program: Program, universe: Universe, kappa: int) -> int:
    dom = Domain(universe, kappa)
    return sum(dom.cell_count(t) for t in program.signature.predicates.values())


def auto_kappa(program: Program, cell_budget: int = DEFAULT_CELL_BUDGET) -> int:
    """A level bound for ``program``.

    For first-order programs the cell count ``N`` does not depend on the
    bound and every productive stage settles at least one cell, so
    ``N + 1`` levels always suffice.  For higher-order programs the cell
    count grows with the bound; we take first-order cells plus
    higher-order predicates plus one, then shrink until the cell space
    fits ``cell_budget`` (never below 2).
    """
    universe = Universe.of(program)
    types = program.signature.predicates
    if _is_first_order(types):
        return _cell_total(program, universe, 1) + 1
    dom = Domain(universe, 1)
    fo_cells = sum(dom.cell_count(t) for t in types.values() if is_first_order_predicate(t))
    higher = sum(1 for t in types.values() if not is_first_order_predicate(t))
    kappa = max(2, fo_cells + higher + 1)
    while kappa > 2 and _cell_total(program, universe, kappa) > cell_budget:
        kappa -= 1
    return kappa


def least_model(program: Program, cfg: EngineConfig | None = None) -> SolveResult:
    cfg = cfg or EngineConfig()
    typed = typecheck(program)
    Universe.of(typed)
    explicit = cfg.kappa_max is not None
    kappa = cfg.kappa_max if explicit else auto_kappa(typed, cfg.cell_budget)
    sem = ProgramSemantics(typed, Domain(Universe.of(typed), kappa))
    return _solve(sem, cfg, explicit)


def _solve(sem: ProgramSemantics, cfg: EngineConfig, explicit: bool) -> SolveResult:
    kappa = sem.kappa
    dom = sem.domain
    current: dict[str, list] = {p: [truth.FALSE] * dom.cell_count(t) for p, t in sem.types.items()}
    settled: dict[str, list] = {p: [None] * len(v) for p, v in current.items()}
    pending = [(p, k) for p, vals in current.items() for k in range(len(vals))]
    total = len(pending)
    cap = cfg.stage_iteration_cap or 2 * total + 2
    trace: list[TraceEvent] = []
    sq_alpha, eq_alpha, order = truth.sq_alpha, truth.eq_alpha, truth.order
    evaluator = sem.evaluator
    stages = 0
    productive = True

    for alpha in range(kappa):
        stages = alpha + 1
        iteration = 0
        while True:
            iteration += 1
            if iteration > cap:
                raise StageDivergence(f"stage {alpha} did not settle within {cap} iterations")
            evaluator.tables = current
            updates = [sem.cell_value(p, k) for p, k in pending]
            changed = 0
            stable = True
            for (p, k), new in zip(pending, updates):
                old = current[p][k]
                if old == new:
                    continue
                if not sq_alpha(old, new, alpha):
                    raise MonotonicityViolation(
                        f"stage {alpha}: cell {p}{_key(sem, p, k)} moved from {old} to {new}"
                    )
                changed += 1
                if stable and not eq_alpha(old, new, alpha):
                    stable = False
            # apply after the sweep so every cell saw the same iterate
            for (p, k), new in zip(pending, updates):
                current[p][k] = new
            if cfg.trace:
                trace.append(TraceEvent(alpha, iteration, changed))
            if stable:
                break

        newly = [(p, k) for p, k in pending if order(current[p][k]) == alpha]
        for p, k in newly:
            settled[p][k] = alpha
        if cfg.trace and newly:
            last = trace[-1]
            names = tuple(f"{p}{_key(sem, p, k)}" for p, k in newly)
            trace[-1] = TraceEvent(last.stage, last.iteration, last.changed, names)
        newly_set = set(newly)
        pending = [c for c in pending if c not in newly_set]
        productive = bool(newly)
        if not pending or not productive:
            break
        if alpha + 1 < kappa:
            reset = F(alpha + 1)
            for p, k in pending:
                current[p][k] = reset

    complete = not pending or not productive
    if pending and not complete and explicit and _is_first_order(sem.types):
        raise LevelOverflow(
            f"{len(pending)} cells still unsettled after {kappa} stages; raise kappa"
        )
    for p, k in pending:
        current[p][k] = ZERO

    model = sem.interpretation(current)
    if cfg.check_fixpoint:
        again = sem.step(model)
        if again != model:
            bad = [
                f"{p}{model.cell_key(p, k)}: {v} -> {w}"
                for p in model.types
                for k, (v, w) in enumerate(zip(model.tables[p], again.tables[p]))
                if v != w
            ]
            raise FixpointViolation("result is not a fixed point: " + "; ".join(bad[:5]))
    return SolveResult(
        model=model,
        stabilized_at={p: tuple(v) for p, v in settled.items()},
        stages_used=stages,
        kappa=kappa,
        complete=complete,
        trace=trace,
    )


def _key(sem: ProgramSemantics, p: str, k: int) -> str:
    t = sem.types[p]
    if t == O:
        return ""
    return sem.domain.render_args(sem.domain.cell_args(k, t), t)


def collapse(m: Interpretation) -> Interpretation:
    """Three-valued projection: every T level becomes T0 and every F level F0."""
    return m.map(truth.collapse)


def meet_interpretations(ms: list[Interpretation]) -> Interpretation:
    """Pointwise meet in the truth order."""
    if len(ms) == 1:
        return ms[0]
    return ms[0].replace({p: tuple(map(min, *(m.tables[p] for m in ms))) for p in ms[0].types})


def glb_interpretations(ms) -> Interpretation:
    """Greatest lower bound of a set of interpretations in the global ordering.

    Stage by stage: keep the members that agree with every earlier stage
    result up to that stage, take their stage-``alpha`` bound cellwise, and
    finally meet all stage results pointwise.
    """
    ms = list(ms)
    if not ms:
        raise EmptySet("the greatest lower bound of no interpretations is not defined here")
    first = ms[0]
    for m in ms[1:]:
        if m.domain != first.domain or dict(m.types) != dict(first.types):
            raise SignatureMismatch("interpretations over different signatures or domains")
    kappa = first.domain.kappa
    stage_results: list[Interpretation] = []
    survivors = ms
    for alpha in range(kappa):
        if alpha > 0:
            prev = stage_results[-1]
            beta = alpha - 1
            survivors = [
                m
                for m in survivors
                if all(truth.eq_alpha(v, w, beta) for p in m.types for v, w in zip(m.tables[p], prev.tables[p]))
            ]
        if survivors:
            tables = {
                p: tuple(
                    truth.glb_alpha(col, alpha, kappa) for col in zip(*(m.tables[p] for m in survivors))
                )
                for p in first.types
            }
            stage_results.append(first.replace(tables))
        else:
            stage_results.append(meet_interpretations(stage_results))
    return meet_interpretations(stage_results)


def cell_total(program: Program, kappa: int) -> int:
    return _cell_total(program, Universe.of(program), kappa)


__all__ = [
    "EngineConfig",
    "SolveResult",
    "TraceEvent",
    "auto_kappa",
    "cell_total",
    "collapse",
    "glb_interpretations",
    "least_model",
    "meet_interpretations",
]
