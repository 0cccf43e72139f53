import pytest
from hypothesis import given
from hypothesis import strategies as st

from diffelim.diffring import DiffSystem
from diffelim.frontend import fixtures
from diffelim.frontend.parser import ParseError, parse, parse_expr, render, tokenize

from strategies import diff_polys, dvar


def test_headers_and_equation_forms():
    sys = parse("params: a;\nkeep: x;\neliminate: y;\ns(x) = a*x*y;\ny^2 - 1;\n")
    assert sys.params == ("a",) and sys.keep_vars == ("x",) and sys.elim_vars == ("y",)
    x, y = dvar("x", field=sys.field), dvar("y", field=sys.field)
    a = sys.field.gen("a")
    assert sys.equations == [x.sigma(1) - (x * y).scale(a), y * y - 1]


def test_vars_header_defaults_to_eliminated():
    sys = parse("vars: x, y, z;\nkeep: y;\nx + y + z;\n")
    assert sys.keep_vars == ("y",)
    assert sys.elim_vars == ("x", "z")


def test_shift_forms():
    sys = parse("eliminate: x;\ns^2(x) - σ(s(x)) + s(x^2);\n")
    x = dvar("x")
    assert sys.equations == [x.sigma(2) - x.sigma(2) + x.sigma(1) ** 2]


def test_s_can_be_an_ordinary_name():
    sys = parse("keep: s;\neliminate: x;\ns(x) - s*x;\n")
    s, x = dvar("s"), dvar("x")
    assert sys.equations == [x.sigma(1) - s * x]


def test_division_by_numbers_and_parameters():
    sys = parse("params: a;\neliminate: x;\nx/3 - 1/(2*a);\n")
    x, a = dvar("x", field=sys.field), sys.field.gen("a")
    assert sys.equations == [x.scale(sys.field.convert(1) / 3) - (1 / (2 * a))]


def test_comments_and_whitespace():
    sys = parse("# header\n  eliminate : x ;  # trailing\n\n x - 1 ;\n")
    assert sys.equations == [dvar("x") - 1]


@pytest.mark.parametrize("text, line, col", [
    ("eliminate: x;\nx + y;\n", 2, 5),
    ("eliminate: x;\nx + ;\n", 2, 5),
    ("eliminate: x;\nx $ 1;\n", 2, 3),
    ("eliminate: x;\n1/x;\n", 2, 2),
    ("eliminate: x;\nx^y;\n", 2, 3),
    ("eliminate: x\nx;\n", 2, 1),
    ("params: a;\neliminate: x;\ns(a) - x;\n", 3, 2),
])
def test_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert (info.value.line, info.value.col) == (line, col)
    assert f"line {line}, column {col}" in str(info.value)


@pytest.mark.parametrize("text", [
    "eliminate: x;\nx - 1",
    "keep: x;\neliminate: x;\nx;\n",
    "params: x;\neliminate: x;\nx;\n",
    "eliminate: x, ;\nx;\n",
    "eliminate: x;\nx;\nkeep: y;\n",
    "eliminate: x;\n1/0;\n",
])
def test_malformed_input_is_rejected(text):
    with pytest.raises(ParseError):
        parse(text)


def test_tokenizer_positions():
    toks = tokenize("x +\n  s(y)")
    assert [(t.text, t.line, t.col) for t in toks if t.kind != "END"] == [
        ("x", 1, 1), ("+", 1, 3), ("s", 2, 3), ("(", 2, 4), ("y", 2, 5), (")", 2, 6)]


@pytest.mark.parametrize("name", fixtures.names())
def test_every_fixture_round_trips(name):
    sys = fixtures.load(name)
    again = parse(render(sys))
    assert again == sys


@pytest.mark.parametrize("name", sorted(fixtures.GENERATED))
def test_generated_fixtures_match_checked_in_files(name):
    assert fixtures.GENERATED[name]() == fixtures.load(name)


@given(st.lists(diff_polys(), min_size=1, max_size=3))
def test_random_systems_round_trip(fs):
    sys = DiffSystem(fs, ("x",), ("y",))
    assert parse(render(sys)) == sys


def test_parse_expr_uses_system_declarations():
    sys = fixtures.load("fibonacci")
    e = parse_expr("s^2(A) - A", sys)
    assert e == dvar("A", 2) - dvar("A")
    with pytest.raises(ParseError):
        parse_expr("C", sys)
