import pytest

from susyva.coeff import I, Q, param
from susyva.lca import BUILTINS, LcaPresentation, build_named
from susyva.parse import ParseError, parse_algebra, parse_scalar_expr, tokenize


def load(text):
    return LcaPresentation.from_text(text)


def test_virasoro_file():
    p = load("central C; even L; bracket L L = (d + 2*l)*L + (C/12)*l^3;")
    va = p.algebra()
    L, C = p.index("L"), p.index("C")
    assert va.bracket_raw(va.gen("L"), va.gen("L")) == {
        0: {((L, 1),): 1}, 1: {((L, 0),): 2}, 3: {((C, 0),): Q(1, 12)}}


def test_missing_generator_is_located():
    with pytest.raises(ParseError) as e:
        load("even L;\nbracket L = L;")
    assert (e.value.line, e.value.col) == (2, 11)
    assert "second generator" in str(e.value)


@pytest.mark.parametrize("text, message", [
    ("even L; odd L;", "duplicate"),
    ("even L; bracket L M = L;", "undeclared"),
    ("even L; odd G; bracket L L = G;", "parity mismatch"),
    ("even L; bracket L L = L; bracket L L = L;", "duplicate bracket"),
    ("even L; bracket L L = (d + 2*l*L;", "expected"),
    ("even L bracket L L = L;", ""),
])
def test_errors(text, message):
    with pytest.raises(ParseError) as e:
        load(text)
    assert message in str(e.value)


def test_comments_and_whitespace():
    toks = [t[1] for t in tokenize("even L; # comment\n  odd G;") if t[0] != "eof"]
    assert toks == ["even", "L", ";", "odd", "G", ";"]


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_render_round_trip(name):
    p = build_named(name)
    text = p.render()
    q = load(text)
    assert q == p
    assert q.render() == text


def test_parameters_and_substitution():
    p = LcaPresentation.from_text("param k; even a; central K; bracket a a = k*K*l;",
                                  {"k": 3})
    va = p.algebra()
    assert va.bracket_raw(va.gen("a"), va.gen("a")) == {1: {((p.index("K"), 0),): 3}}


def test_scalar_expressions():
    k = param("k")
    assert parse_scalar_expr("(k - 2)/k") == (k - 2) / k
    assert parse_scalar_expr("3/2 + i") == Q(3, 2) + I
    with pytest.raises(ParseError):
        parse_scalar_expr("l + 1")


def test_algebra_file_fields():
    af = parse_algebra("param c; even L; central C; derive D L = L; sef D L; grading L = 2;")
    assert af.params == ["c"]
    assert [g[0] for g in af.gens] == ["L", "C"]
    assert "D" in af.derives and af.sef["D"][0][1] == "L"
