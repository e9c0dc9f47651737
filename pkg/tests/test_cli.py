from __future__ import annotations

import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from conftest import FIXTURES
from extensia.cli import EXIT_FRONTEND, EXIT_RESOURCE, EXIT_RESTRICTION, EXIT_USAGE, main

SCHEMA = json.loads(resources.files("extensia").joinpath("schema/solve.schema.json").read_text())


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def fx(name):
    return FIXTURES / name


class TestSolve:
    def test_intro_collapsed(self):
        code, out = run("solve", fx("intro.pl"), "--collapse")
        assert code == 0
        assert out.splitlines() == ["p: True", "r: False", "s: True", "q: False"]

    def test_intro_levels(self):
        code, out = run("solve", fx("intro.pl"))
        assert out.splitlines() == ["p: T0", "r: F1", "s: T1", "q: F0"]

    def test_wadge(self):
        code, out = run("solve", fx("wadge.pl"), "--wadge", "--kappa", "3", "--pred", "q")
        assert code == 0 and out.splitlines() == ["q(a): T0", "q(b): 0"]

    def test_json_matches_schema_and_human_output(self):
        code, out = run("solve", fx("win.pl"), "--json")
        data = json.loads(out)
        jsonschema.validate(data, SCHEMA)
        _, human = run("solve", fx("win.pl"))
        lines = [f"{p}{k}: {v['sign']}{v.get('level', '')}" for p, cells in data["model"].items() for k, v in cells.items()]
        assert lines == human.splitlines()
        assert data["stats"]["cells"] == 20 and data["stats"]["kappa"] == 21

    def test_json_zero(self):
        data = json.loads(run("solve", fx("liar.pl"), "--json")[1])
        jsonschema.validate(data, SCHEMA)
        assert data["model"]["p"]["()"] == {"sign": "0"}
        assert data["collapsed"]["p"]["()"] == "Undef"

    def test_trace_goes_to_stderr(self, capsys):
        code, out = run("solve", fx("intro.pl"), "--trace")
        err = capsys.readouterr().err
        assert "stabilized p, q" in err and "stage" not in out

    def test_unknown_pred(self):
        assert run("solve", fx("intro.pl"), "--pred", "nope")[0] == EXIT_FRONTEND


class TestOtherCommands:
    def test_check(self):
        code, out = run("check", fx("band.pl"))
        assert code == 0 and "band : (i -> o) -> o" in out

    def test_check_json(self):
        data = json.loads(run("check", fx("intro.pl"), "--json")[1])
        assert data["clauses"] == 3 and data["predicates"]["q"] == "o"

    def test_print_core_round_trips(self, tmp_path):
        core = run("check", fx("wadge.pl"), "--wadge", "--print-core")[1]
        path = tmp_path / "w.core"
        path.write_text(core)
        assert run("check", path, "--core", "--print-core")[1] == core

    def test_query(self):
        code, out = run("query", fx("band.pl"), "--kappa", "3",
                        "single_singer_band (\\X:i. X = sally \\/ X = george)")
        assert code == 0 and out == "T2\n"
        code, out = run("query", fx("band.pl"), "--kappa", "3", "--collapse",
                        "single_singer_band (\\X:i. X = sally \\/ X = steve \\/ X = george)")
        assert out == "False\n"

    def test_query_table(self):
        assert run("query", fx("intro.pl"), "\\X:i. true")[0] == EXIT_FRONTEND
        code, out = run("query", fx("win.pl"), "--table", "\\X:i. win X")
        assert code == 0 and out == "{a:0,b:0,c:T1,d:F0}\n"

    def test_wfs(self):
        code, out = run("wfs", fx("intro.pl"))
        assert out.splitlines() == ["p: True", "r: False", "s: True", "q: False"]

    def test_oracle_min(self):
        code, out = run("oracle-min", fx("intro.pl"), "--kappa", "3")
        assert code == 0 and out.splitlines() == ["p: T0", "r: F1", "s: T1", "q: F0"]
        assert run("oracle-min", fx("intro.pl"), "--kappa", "3", "--budget", "10")[0] == EXIT_RESOURCE


class TestExitCodes:
    def test_function_symbols(self, capsys):
        assert run("solve", fx("functions.pl"))[0] == EXIT_RESTRICTION
        assert "InfiniteUniverse" in capsys.readouterr().err

    def test_wadge_flag_missing(self):
        assert run("solve", fx("wadge.pl"))[0] == EXIT_FRONTEND

    def test_syntax_error(self, tmp_path):
        bad = tmp_path / "bad.pl"
        bad.write_text("p(X) :-")
        assert run("check", bad)[0] == EXIT_FRONTEND

    def test_level_overflow(self):
        assert run("solve", fx("intro.pl"), "--kappa", "1")[0] == EXIT_RESOURCE

    def test_missing_file(self):
        assert run("solve", fx("missing.pl"))[0] == EXIT_USAGE

    @pytest.mark.parametrize("argv", [[], ["solve"], ["solve", "x.pl", "--kappa", "zero"], ["frobnicate"]])
    def test_usage(self, argv):
        with pytest.raises(SystemExit) as info:
            main(argv, out=io.StringIO())
        assert info.value.code == EXIT_USAGE


def test_repeat_runs_are_byte_identical():
    cmd = [sys.executable, "-m", "extensia.cli", "solve", str(fx("wadge.pl")), "--wadge", "--kappa", "3", "--json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
    jsonschema.validate(json.loads(first), SCHEMA)
