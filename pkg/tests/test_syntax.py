from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import compile_text, fixture_text
from extensia.errors import CompileError, HTypeError, NonEnumerableType, ParseError
from extensia.syntax import (
    IOTA,
    O,
    Arrow,
    Signature,
    annotate,
    arrow,
    check_enumerable,
    parse_core,
    parse_expr,
    parse_surface,
    parse_type,
    pretty,
    typecheck,
)
from extensia.syntax.expr import Eq, Exists, Lambda, Not, PredConst, free_vars, subexpressions
from extensia.syntax.types import arg_types, arity

PI = arrow(IOTA, O)


class TestTypes:
    def test_parse(self):
        assert parse_type("i -> o") == Arrow(IOTA, O)
        assert parse_type("(i -> o) -> o") == arrow(PI, O)
        assert str(parse_type("(i -> o) -> i -> o")) == "(i -> o) -> i -> o"

    def test_unique_decomposition(self):
        t = parse_type("(i -> o) -> i -> i -> o")
        assert arg_types(t) == (PI, IOTA, IOTA) and arity(t) == 3

    def test_rejects_bad_arrow(self):
        with pytest.raises((HTypeError, ParseError, ValueError)):
            parse_type("o -> i")


class TestParseSurface:
    def test_single_fact(self):
        sp = parse_surface("p(a).")
        assert len(sp.clauses) == 1 and sp.clauses[0].body == ()

    def test_band_and_database(self):
        text = "\n".join(fixture_text("band.pl").splitlines()[:5])
        assert len(parse_surface(text).clauses) == 5

    def test_incomplete_clause(self):
        with pytest.raises(ParseError) as info:
            parse_surface("p(X) :-")
        assert info.value.line == 1

    def test_error_position(self):
        with pytest.raises(ParseError) as info:
            parse_surface("p(a).\nq(b) :- r(.\n")
        assert info.value.line == 2

    def test_comments_and_negation_forms(self):
        sp = parse_surface("% c\np :- not q, ~r.\n")
        assert len(sp.clauses[0].body) == 2


class TestCompile:
    def test_fact_with_constant(self):
        prog = compile_text("p(a).")
        (clause,) = prog.clauses
        assert clause.head == "p"
        body = clause.body
        assert isinstance(body, Lambda) and body.var.vtype == IOTA
        assert isinstance(body.body, Eq)
        assert prog.signature.predicates["p"] == PI

    def test_wadge_head_rewrite(self):
        prog = compile_text("phi(p).\np(a).", wadge=True)
        (phi,) = prog.clauses_for("phi")
        assert prog.signature.predicates["phi"] == arrow(PI, O)
        assert pretty(phi.body) == "\\P1:i -> o. equal_io P1 p"
        assert {"equal_io", "subset_io"} <= set(prog.signature.predicates)

    def test_wadge_without_flag_is_error(self):
        with pytest.raises(CompileError, match="--wadge"):
            compile_text(fixture_text("wadge.pl"))

    def test_single_singer_band(self, band_program):
        (ssb,) = band_program.clauses_for("single_singer_band")
        assert any(isinstance(e, Not) for e in subexpressions(ssb.body))
        (two,) = band_program.clauses_for("two_singers")
        bound = [e.var.name for e in subexpressions(two.body) if isinstance(e, Exists)]
        assert bound == ["S1", "S2"]
        typecheck(band_program)

    def test_body_variables_are_existential(self):
        prog = compile_text("p(X) :- q(X, Y).\nq(a, b).")
        (p,) = prog.clauses_for("p")
        assert isinstance(p.body, Lambda) and isinstance(p.body.body, Exists)

    def test_repeated_head_variable(self):
        prog = compile_text("same(X, X).\nq(a).")
        (c,) = prog.clauses_for("same")
        assert pretty(c.body) == "\\X:i. \\X1:i. X1 = X"

    def test_function_symbols_compile(self):
        prog = compile_text(fixture_text("functions.pl"))
        assert prog.has_function_symbols

    def test_annotation_overrides_default(self):
        prog = compile_text("pred p : (i -> o) -> o.\np(Q) :- true.")
        assert prog.signature.predicates["p"] == arrow(PI, O)

    def test_inconsistent_arity(self):
        with pytest.raises((CompileError, HTypeError)):
            compile_text("p(a).\np(a, b).")

    def test_helper_name_clash(self):
        with pytest.raises(CompileError):
            compile_text("phi(p).\np(a).\nequal_io(a).", wadge=True)


class TestTypecheck:
    def test_subset_type(self):
        prog = typecheck(parse_core(fixture_text("subset.core")))
        assert prog.signature.predicates["subset"] == arrow(PI, PI, O)

    def test_equality_lambda(self):
        sig = Signature({}, ("a",), {})
        assert annotate(parse_expr("\\X:i. X = X", sig), sig).type == PI

    def test_self_application(self):
        sig = Signature({"p": PI}, ("a",), {})
        with pytest.raises(HTypeError):
            annotate(parse_expr("p p", sig), sig)

    def test_body_type_must_match_head(self):
        with pytest.raises(HTypeError):
            typecheck(parse_core("individual a.\npred p : i -> o.\np <- true."))

    def test_non_enumerable_quantifier(self):
        text = "individual a.\npred p : ((i -> o) -> o) -> o.\np <- \\R:(i -> o) -> o. true."
        with pytest.raises(NonEnumerableType):
            check_enumerable(typecheck(parse_core(text)))


def _round_trip(prog):
    again = parse_core(pretty(prog))
    assert again == prog
    assert pretty(again) == pretty(prog)


class TestRoundTrip:
    def test_subset(self):
        _round_trip(typecheck(parse_core(fixture_text("subset.core"))))

    def test_true_fact(self):
        _round_trip(parse_core("pred p : o.\np <- true."))

    def test_compiled_wadge(self, wadge_program):
        _round_trip(wadge_program)

    @pytest.mark.parametrize("name", ["intro.pl", "band.pl", "win.pl", "liar.pl"])
    def test_fixtures(self, name):
        _round_trip(compile_text(fixture_text(name)))


ATOMS = ["p", "q", "r"]


@st.composite
def surface_programs(draw):
    lines = []
    for _ in range(draw(st.integers(1, 5))):
        head = draw(st.sampled_from(ATOMS))
        arg = draw(st.sampled_from(["", "(a)", "(X)", "(b)"]))
        body = []
        for _ in range(draw(st.integers(0, 3))):
            lit = draw(st.sampled_from(ATOMS)) + draw(st.sampled_from(["(a)", "(X)", "(Y)"]))
            body.append(("not " if draw(st.booleans()) else "") + lit)
        head_text = head + ("(X)" if arg == "" else arg)
        lines.append(head_text + (" :- " + ", ".join(body) if body else "") + ".")
    return "\n".join(lines)


class TestCompileProperties:
    @given(surface_programs())
    def test_output_typechecks_closed_and_round_trips(self, text):
        prog = compile_text(text)
        typecheck(prog)
        for c in prog.clauses:
            assert not free_vars(c.body)
        _round_trip(prog)

    @given(surface_programs())
    def test_wadge_mode_is_identity_without_constant_heads(self, text):
        plain = compile_text(text)
        assert compile_text(text, wadge=True) == plain
        names = {e.name for c in plain.clauses for e in subexpressions(c.body) if isinstance(e, PredConst)}
        assert not any(n.startswith(("equal_", "subset_")) for n in names)
