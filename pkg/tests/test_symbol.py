import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wiener_dirichlet.dirichlet import DirichletPoly
from wiener_dirichlet.symbol import (Symbol, SymbolParseError, format_symbol, parse_any, parse_dirichlet_poly,
                                     parse_symbol)


def test_parse_full_form():
    sym = parse_symbol("2*s + (0.5+0i) + 1*2^-s")
    assert sym.c0 == 2
    assert sym.c1 == 0.5
    assert sym.phi0[2] == 1


def test_bare_s():
    sym = parse_symbol("s")
    assert sym.c0 == 1
    assert not sym.phi0


def test_remark_symbol():
    sym = parse_symbol("s + 3 + 4*2^-s + 1*4^-s")
    assert (sym.c0, sym.c1, sym.phi0[2], sym.phi0[4]) == (1, 3, 4, 1)


def test_duplicate_frequencies_merge():
    sym = parse_symbol("s + 1*2^-s + (0.5-1i)*2^-s + 2 + 1")
    assert sym.phi0[2] == complex(1.5, -1)
    assert sym.c1 == 3


def test_purely_imaginary_and_negative_parts():
    sym = parse_symbol("s + (0-2.5i) + (-1+0.25i)*3^-s")
    assert sym.c1 == -2.5j
    assert sym.phi0[3] == complex(-1, 0.25)


def test_no_s_term_gives_c0_zero():
    sym = parse_symbol("3 + 1*2^-s")
    assert sym.c0 == 0


@pytest.mark.parametrize("text, offset", [
    ("s + + 3", 4),
    ("s + 1*0^-s", 6),
    ("1.5*s", 0),
    ("s + s", 4),
    ("s + 2*3^-t", 7),
    ("", 0),
])
def test_rejections_carry_byte_offset(text, offset):
    with pytest.raises(SymbolParseError) as info:
        parse_symbol(text)
    assert info.value.offset == offset


def test_offset_counts_bytes_not_characters():
    with pytest.raises(SymbolParseError) as info:
        parse_symbol("s + é")
    assert info.value.offset == 4
    with pytest.raises(SymbolParseError) as info:
        parse_symbol("é + 1")
    assert info.value.offset == 0


def test_dirichlet_poly_rejects_s():
    assert parse_dirichlet_poly("1 + 2*6^-s") == DirichletPoly({1: 1, 6: 2})
    with pytest.raises(SymbolParseError):
        parse_dirichlet_poly("s + 1")
    assert isinstance(parse_any("2 + 1*3^-s"), DirichletPoly)
    assert isinstance(parse_any("s"), Symbol)


def test_symbol_validation():
    with pytest.raises(ValueError):
        Symbol(-1, DirichletPoly())


finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)
coeff = st.builds(complex, finite, finite)


@given(c0=st.integers(0, 5), c1=coeff, terms=st.dictionaries(st.integers(2, 500), coeff, max_size=6))
@settings(max_examples=200, deadline=None)
def test_round_trip(c0, c1, terms):
    sym = Symbol.build(c0, c1, terms)
    assert parse_symbol(format_symbol(sym)) == sym
