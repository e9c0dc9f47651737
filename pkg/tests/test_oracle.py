from __future__ import annotations

import random

import pytest

from conftest import compile_text, fixture_text
from extensia.domains import Universe
from extensia.engine import EngineConfig, collapse, glb_interpretations, least_model
from extensia.errors import BudgetExceeded, NotNormalFragment
from extensia.oracle import (
    all_models,
    atom_labels,
    brute_min_model,
    enumerate_interpretations,
    ground,
    interpretation_count,
    random_corpus,
    random_normal_program,
    wfs_alternating_fixpoint,
)
from extensia.semantics import interp_sq, is_model, tp_step
from extensia.syntax import parse_core, parse_surface, typecheck
from extensia.truth import F, T


def values(m):
    return {p: v[0] if len(v) == 1 else v for p, v in m.tables.items()}


class TestEnumeration:
    def test_counts(self):
        one = compile_text("p :- p.")
        assert len(list(enumerate_interpretations(one, 2))) == 5
        assert len(list(enumerate_interpretations(one, 1))) == 3
        two = compile_text("p :- q.")
        assert len(list(enumerate_interpretations(two, 1))) == 9
        assert interpretation_count(two, 2) == 25

    def test_empty_signature(self):
        prog = typecheck(parse_core(""))
        assert len(list(enumerate_interpretations(prog, 2))) == 1

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            next(enumerate_interpretations(compile_text("p :- q.\nr :- s."), 3, budget=100))

    def test_budget_from_environment(self, monkeypatch):
        monkeypatch.setenv("EXTENSIA_BUDGET", "4")
        with pytest.raises(BudgetExceeded):
            next(enumerate_interpretations(compile_text("p :- p."), 2))

    def test_higher_order_tables_are_restricted(self):
        prog = typecheck(parse_core("individual a.\npred phi : (i -> o) -> o.\nphi <- \\P:i -> o. P a."))
        # 5**5 raw tables, far fewer of them alpha-monotone at every stage
        count = len(list(enumerate_interpretations(prog, 2)))
        assert 0 < count < 5**5


class TestBruteMin:
    def test_intro(self, intro_program):
        assert brute_min_model(intro_program, 4) == least_model(intro_program, EngineConfig(kappa_max=4)).model

    def test_fact(self):
        assert values(brute_min_model(compile_text("p."), 2)) == {"p": T(0)}

    def test_negated_missing_atom(self):
        assert values(brute_min_model(compile_text("p :- not q."), 2)) == {"p": T(1), "q": F(0)}

    def test_glb_of_model_samples_is_model(self):
        prog = compile_text("p :- not q.\nq :- not p.\nr :- p, not r.")
        models = all_models(prog, 2)
        rng = random.Random(3)
        for _ in range(100):
            sample = rng.sample(models, rng.randint(1, 3))
            assert is_model(prog, glb_interpretations(sample))

    def test_least_pre_fixed_point(self):
        prog = compile_text("p :- not q.\nq :- not p.\nr :- p, not r.")
        mp = least_model(prog, EngineConfig(kappa_max=2)).model
        for m in enumerate_interpretations(prog, 2):
            if interp_sq(tp_step(prog, m), m):
                assert interp_sq(mp, m)


class TestGround:
    def test_instantiation(self):
        g = ground(parse_surface("p(X) :- not q(X)."), Universe(("a", "b")))
        assert [str(r) for r in g.rules] == ["p(a) :- not q(a).", "p(b) :- not q(b)."]

    def test_propositional_unchanged(self):
        text = "p.\nr :- not p.\ns :- not q."
        assert str(ground(parse_surface(text))) == text

    def test_equalities_decided(self):
        g = ground(parse_surface("d(X, Y) :- not X = Y.\nc(a).\nc(b)."))
        assert [str(r) for r in g.rules if r.head.startswith("d")] == ["d(a,b).", "d(b,a)."]

    @pytest.mark.parametrize("text", ["band(B) :- B(a).", "p(s(X)) :- p(X).", "p :- not not q."])
    def test_rejects(self, text):
        with pytest.raises(NotNormalFragment):
            ground(parse_surface(text))


class TestWellFounded:
    def test_intro(self):
        labels = wfs_alternating_fixpoint(ground(parse_surface(fixture_text("intro.pl"))))
        assert labels == {"p": "True", "r": "False", "s": "True", "q": "False"}

    def test_liar(self):
        assert wfs_alternating_fixpoint(ground(parse_surface("p :- not p."))) == {"p": "Undef"}

    def test_positive(self):
        assert wfs_alternating_fixpoint(ground(parse_surface("p :- q.\nq."))) == {"p": "True", "q": "True"}

    def test_win(self):
        labels = wfs_alternating_fixpoint(ground(parse_surface(fixture_text("win.pl"))))
        assert {k: v for k, v in labels.items() if k.startswith("win")} == {
            "win(a)": "Undef", "win(b)": "Undef", "win(c)": "True", "win(d)": "False",
        }

    def test_matches_engine_on_win(self):
        text = fixture_text("win.pl")
        labels = wfs_alternating_fixpoint(ground(parse_surface(text)))
        assert atom_labels(collapse(least_model(compile_text(text)).model)) == labels


class TestCorpus:
    def test_deterministic(self):
        assert random_corpus(10) == random_corpus(10)
        assert random_corpus(5, seed=1) != random_corpus(5)

    def test_shape(self):
        for text in random_corpus(60):
            sp = parse_surface(text)
            assert 1 <= len(sp.clauses) <= 10
            g = ground(sp)
            assert len(g.atoms) <= 6

    def test_generator_respects_limits(self):
        rng = random.Random(0)
        text = random_normal_program(rng, max_atoms=2, max_rules=3)
        assert len(text.strip().splitlines()) <= 3
