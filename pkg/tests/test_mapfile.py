import pytest
from hypothesis import given

from collatz_f import RHO, equal
from collatz_f.catalogue import builtin_maps
from collatz_f.mapfile import MapParseError, dump, dumps, load, loads
from collatz_f.syntax import SyntaxError_, parse_map, resolve_name

from conftest import maps

RHO_TEXT = """congruential v1
modulus 3
piece 0: 2 0 3
piece 1: 4 -1 3
piece 2: 4 1 3
"""


def test_rho_text():
    assert dumps(RHO) == RHO_TEXT
    assert loads(RHO_TEXT) == RHO


@pytest.mark.parametrize("name", list(builtin_maps()))
def test_builtin_round_trip(name, tmp_path):
    f = builtin_maps()[name]
    path = tmp_path / f"{name}.cmap"
    dump(f, path)
    assert equal(load(path), f)


@given(maps)
def test_round_trip_random(f):
    assert loads(dumps(f)) == f


def test_comments_and_blank_lines():
    text = "# rho\n\n" + RHO_TEXT.replace("piece 1:", "piece 1 :  ") + "  # done\n"
    assert loads(text) == RHO


@pytest.mark.parametrize("text, lineno, match", [
    ("", 1, "empty"),
    ("congruential v2\n", 1, "header"),
    ("congruential v1\nmod 3\n", 2, "modulus"),
    ("congruential v1\nmodulus 0\n", 2, "positive"),
    (RHO_TEXT.replace("piece 2", "piece 1"), 5, "duplicate"),
    (RHO_TEXT.replace("piece 2", "piece 7"), 5, "out of range"),
    (RHO_TEXT.replace("piece 2: 4 1 3\n", ""), 2, "missing piece"),
    (RHO_TEXT.replace("4 -1 3", "4 1 3"), 4, "integral|divide"),       # (4n+1)/3 not integral on 3N+1
    (RHO_TEXT.replace("2 0 3", "4 0 6"), 3, "reduced"),        # not reduced
    (RHO_TEXT.replace("4 1 3", "4 x 3"), 5, "piece"),
    ("congruential v1\nmodulus 1\npiece 0: 1 -1 1\n", 3, "negative"),  # 0 ↦ -1
])
def test_parse_errors_carry_line_numbers(text, lineno, match):
    with pytest.raises(MapParseError, match=match) as exc:
        loads(text)
    assert exc.value.lineno == lineno
    assert str(exc.value).startswith(f"line {lineno}:")


# -- map expressions -------------------------------------------------------------


def test_expressions():
    assert parse_map("rho") == RHO
    assert equal(parse_map("compose(lambda, inv(rho))"), parse_map("alpha"))
    assert parse_map("star(id, alpha)") == parse_map("x1") == parse_map("xk:1")
    assert equal(parse_map("mu(alpha, alpha)"), parse_map("star(alpha, alpha)"))


def test_map_file_names(tmp_path):
    dump(RHO, tmp_path / "r.cmap")
    assert resolve_name(str(tmp_path / "r.cmap")) == RHO
    assert resolve_name("@r.cmap", tmp_path) == RHO
    with pytest.raises(SyntaxError_, match="cannot read"):
        resolve_name("@nope.cmap", tmp_path)


@pytest.mark.parametrize("text", ["", "sigma", "inv(rho, rho)", "star(rho)", "rho rho", "inv(rho"])
def test_bad_expressions(text):
    with pytest.raises(SyntaxError_):
        parse_map(text)
