import json
import math
import subprocess
import sys
from fractions import Fraction as F

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dsgenus import casson_gordon as cgmod
from dsgenus.cli import EXIT_INCOMPLETE, EXIT_INPUT, EXIT_OK, main
from dsgenus.dsl import (E_EVEN_P, E_GCD, E_NONSQUARE, E_NONUNIMODULAR, E_PARSE, E_Q_RANGE,
                         ParseError, parse_knot)
from dsgenus.knots import KnotSpec, SeifertMatrix, TwoBridgeKnot
from dsgenus.report import FIELDS, build_report, load_schema


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.setattr(cgmod, "_cache_dir", None)
    monkeypatch.setenv(cgmod.CACHE_ENV, str(tmp_path / "env-cache"))
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestParser:
    def test_examples(self):
        assert parse_knot("2b(9/4)").summands == (TwoBridgeKnot(9, 4),)
        assert len(parse_knot("2b(9/4)^3").summands) == 3
        assert parse_knot("2b(9/2)").summands == (TwoBridgeKnot(9, 2),)
        assert len(parse_knot("2b(9/4)^110").summands) == 110

    def test_whitespace_and_mixed(self):
        K = parse_knot("  2 b ( 9 / 4 ) ^ 2 #seifert( [[-1, 1], [0,-1]] )  ribbon ")
        assert len(K.summands) == 3 and K.ribbon
        assert isinstance(K.summands[2], SeifertMatrix)
        assert parse_knot("unknot") == KnotSpec(())
        assert parse_knot("unknot ribbon").ribbon

    @pytest.mark.parametrize("text,code", [
        ("2b(8/3)", E_EVEN_P),
        ("2b(9/3)", E_GCD),
        ("2b(9/10)", E_Q_RANGE),
        ("2b(9/0)", E_Q_RANGE),
        ("seifert([[1,2,3],[0,1,0]])", E_NONSQUARE),
        ("seifert([[1,0],[0]])", E_NONSQUARE),
        ("seifert([[1,0],[0,1]])", E_NONUNIMODULAR),
        ("2b(9/4", E_PARSE),
        ("2b(9/4) #", E_PARSE),
        ("trefoil", E_PARSE),
        ("2b(9/4)^0", E_PARSE),
        ("", E_PARSE),
        ("2b(9/4) $", E_PARSE),
    ])
    def test_errors(self, text, code):
        with pytest.raises(ParseError) as info:
            parse_knot(text)
        assert info.value.code == code
        assert 0 <= info.value.position <= len(text)

    def test_error_position(self):
        with pytest.raises(ParseError) as info:
            parse_knot("2b(9/4) # 2b(9/4) $")
        assert info.value.position == 18


two_bridge = st.integers(1, 15).flatmap(
    lambda k: st.sampled_from([q for q in range(1, 2 * k + 1) if math.gcd(q, 2 * k + 1) == 1])
    .map(lambda q: TwoBridgeKnot(2 * k + 1, q)))
seifert = st.sampled_from([
    SeifertMatrix(((-1, 1), (0, -1))),
    SeifertMatrix(((1, 1), (0, 1))),
    SeifertMatrix(((-1, 1, 0, 0), (0, -1, 0, 0), (0, 0, 1, 1), (0, 0, 0, 2))),
])
specs = st.builds(lambda s, r: KnotSpec(tuple(s), ribbon=r or None),
                  st.lists(st.one_of(two_bridge, seifert), max_size=6), st.booleans())


@settings(max_examples=300, deadline=None)
@given(specs)
def test_round_trip(spec):
    assert parse_knot(str(spec)) == spec


class TestBound:
    def test_j_ribbon(self, capsys):
        code, out, _ = run(capsys, "bound", "2b(9/4)", "--ribbon")
        data = json.loads(out)
        assert code == EXIT_OK
        assert data["theta_lower"]["ceiling"] == 1 and data["superslice_lower"] == 1
        assert data["double_slice_top_upper"] == 1 and data["status"] == "complete"

    def test_unknot(self, capsys):
        code, out, _ = run(capsys, "bound", "unknot")
        data = json.loads(out)
        assert code == EXIT_OK
        assert data["superslice_lower"] == data["superslice_top_upper"] == 0
        assert data["theta_lower"]["value"] == "0/1" and data["theta_lower"]["ceiling"] == 0

    def test_closed_form(self, capsys):
        code, out, _ = run(capsys, "bound", "2b(9/4)^110")
        data = json.loads(out)
        assert code == EXIT_OK and data["status"] == "complete"
        assert data["theta_lower"]["method"] == "closed-form"
        assert F(data["theta_lower"]["value"]) >= 1

    def test_input_error(self, capsys):
        code, out, err = run(capsys, "bound", "2b(8/3)")
        assert code == EXIT_INPUT and out == "" and E_EVEN_P in err
        assert run(capsys, "bound")[0] == EXIT_INPUT
        assert run(capsys, "bound", "unknot", "--max-pairs", "0")[0] == EXIT_INPUT

    def test_incomplete(self, capsys):
        code, out, err = run(capsys, "bound", "2b(9/4)^2 # 2b(3/1)", "--max-pairs", "1")
        data = json.loads(out)
        assert code == EXIT_INCOMPLETE and data["status"] == "incomplete"
        assert data["theta_lower"]["usable"] is False and "caps" in err

    def test_key_order_and_schema(self, capsys):
        schema = load_schema()
        for argv in (["2b(9/4)"], ["2b(9/4)^2", "--verbose"], ["seifert([[-1,1],[0,-1]])"],
                     ["unknot"], ["2b(9/4)^2 # 2b(3/1)", "--max-pairs", "1"]):
            _, out, _ = run(capsys, "bound", *argv)
            data = json.loads(out)
            assert list(data) == list(FIELDS)
            jsonschema.validate(data, schema)

    def test_verbose_table(self, capsys):
        _, out, _ = run(capsys, "bound", "2b(9/4)", "--verbose")
        rows = json.loads(out)["theta1_intervals"]
        assert {(r["G1"], r["G2"]) for r in rows} == {("0", "0"), ("Z3", "0"), ("0", "Z3")}
        row = next(r for r in rows if r["G1"] == r["G2"] == "0")
        assert row["theta1_lower"] == "1/1" and row["theta1_upper"] == "2/1"

    def test_deterministic(self, capsys):
        a = run(capsys, "bound", "2b(9/4)^2", "--threads", "1")[1]
        b = run(capsys, "bound", "2b(9/4)^2", "--threads", "2")[1]
        assert a == b

    def test_trefoil(self, capsys):
        data = json.loads(run(capsys, "bound", "seifert([[-1,1],[0,-1]])")[1])
        assert (data["signature"], data["determinant"], data["alexander_degree"]) == (-2, 3, 1)
        assert data["superslice_top_upper"] == 1

    def test_report_rationals_reduced(self):
        data = build_report(parse_knot("2b(9/4)^2"))
        assert data["theta_lower"]["value"] == "2/9"


class TestTable:
    def test_examples(self, capsys):
        code, out, _ = run(capsys, "cg-table", "9", "4", "9")
        assert code == EXIT_OK
        assert out == "0\t0/1\n1\t5/9\n2\t11/9\n3\t1/1\n4\t-1/9\n5\t-1/9\n6\t1/1\n7\t11/9\n8\t5/9\n"
        assert run(capsys, "cg-table", "3", "1", "3")[1] == "0\t0/1\n1\t-1/3\n2\t-1/3\n"
        assert run(capsys, "cg-table", "9", "4", "3")[1] == "0\t0/1\n3\t1/1\n6\t1/1\n"

    def test_matches_cache_file(self, capsys, cache_dir):
        target = cache_dir / "explicit"
        code, out, _ = run(capsys, "cg-table", "9", "4", "9", "--cache-dir", str(target))
        assert code == EXIT_OK
        files = list(target.iterdir())
        assert len(files) == 1 and files[0].read_bytes() == out.encode("utf-8")
        assert not (cache_dir / "env-cache").exists()

    def test_global_cache_flag(self, capsys, cache_dir):
        target = cache_dir / "global"
        run(capsys, "--cache-dir", str(target), "cg-table", "7", "3", "7")
        assert len(list(target.iterdir())) == 1

    @pytest.mark.parametrize("argv", [
    ("8", "2", "8"), ("0", "1", "1"), ("9", "3", "9"), ("9", "4", "4"), ("x", "1", "1")])
    def test_bad_parameters(self, capsys, argv):
        code, out, _ = run(capsys, "cg-table", *argv)
        assert code == EXIT_INPUT and out == ""


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dsgenus", "cg-table", "3", "1", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.splitlines()[1] == "1\t-1/3"
