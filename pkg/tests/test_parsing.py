# tests/test_parsing.py
from fractions import Fraction

import pytest

from app.core.exceptions import ParseError
from app.core.fields import extension_field, ground_field
from app.core.parsing import format_element, parse_element, parse_poly, parse_puiseux, parse_ratfun, parse_tail
from app.core.polynomials import PolyA, RatF


@pytest.mark.parametrize("text, column", [
    ("t^^2", 3),
    ("t+x", 3),
    ("(t+1", 5),
    ("t^(1/2)", 3),
    ("t/t", 2),
    ("t$1", 2),
    ("", 1),
])
def test_errores_con_columna(text, column):
    with pytest.raises(ParseError) as info:
        parse_poly(text, ground_field(2))
    assert info.value.column == column
    assert info.value.exit_code == 2
    assert info.value.to_dict()["column"] == column


def test_multiplicacion_implicita(F3):
    assert parse_poly("2t", F3) == parse_poly("2*t", F3) == PolyA(F3, [0, 2])
    assert parse_poly("-t+1", F3) == PolyA(F3, [1, 2])
    assert parse_poly("(t+1)^2", F3) == PolyA(F3, [1, 2, 1])


def test_constantes_reducidas(F2):
    assert parse_poly("3t+2", F2) == PolyA(F2, [0, 1])


def test_simbolo_a_en_f4(F4):
    assert parse_poly("a*t+1", F4) == PolyA(F4, [1, 2])
    assert parse_element("a", F4) == 2
    assert parse_element("a^2", F4) == 3
    with pytest.raises(ParseError):
        parse_poly("a*t", ground_field(2))


def test_w_como_alias_de_a_en_f4(F4):
    assert parse_element("w", F4) == parse_element("a", F4) == 2
    assert parse_poly("w*t+w^2", F4) == parse_poly("a*t+a^2", F4) == PolyA(F4, [3, 2])
    assert parse_puiseux("w*pi", F4).coefficient(Fraction(1)) == 2
    assert format_element(2, F4) == "a"


def test_w_es_el_generador_de_la_extension():
    """Sobre 𝔽_4 ⊂ 𝔽_16, a es el generador de 𝔽_4 y w el de 𝔽_16"""
    L = extension_field(4, 2)
    assert parse_element("w", L) == L.generator
    assert parse_element("a", L) == L.ground.generator
    assert parse_element("w", L) != parse_element("a", L)


def test_formato_con_otro_simbolo():
    L = extension_field(2, 4)
    assert format_element(L.generator, L) == "w"
    assert format_element(L.generator, L, "u") == "u"
    assert format_element(L.add(L.generator, 1), L, "u") == "u+1"


def test_elemento_de_extension():
    L = extension_field(2, 2)
    assert parse_element("w", L) == L.generator
    assert parse_element("w^2", L) == L.add(L.generator, 1)
    assert parse_element("w^3", L) == 1


@pytest.mark.parametrize("q, text", [(2, "t^3+t+1"), (3, "2t^2+t+2"), (4, "a*t^2+(a+1)*t+a"), (9, "a*t+2")])
def test_formato_reparseable(q, text):
    F = ground_field(q)
    p = parse_poly(text, F)
    assert parse_poly(p.to_string(), F) == p


def test_formato_descendente(F2):
    assert parse_poly("1+t+t^2", F2).to_string() == "t^2+t+1"


def test_ratfun(F2):
    x = parse_ratfun("(t^3+1)/t", F2)
    assert x == RatF(PolyA(F2, [1, 0, 0, 1]), PolyA(F2, [0, 1]))
    assert parse_ratfun("t^(-2)", F2) == RatF(PolyA.one(F2), PolyA(F2, [0, 0, 1]))
    assert parse_ratfun("pi", F2) == RatF(PolyA.one(F2), PolyA(F2, [0, 1]))


def test_ratfun_division_por_cero(F2):
    with pytest.raises(ParseError) as info:
        parse_ratfun("1/0", F2)
    assert info.value.column == 2


def test_tail(F2):
    u = parse_tail("t+1+pi^2", F2)
    assert u.poly_part == PolyA(F2, [1, 1])
    assert u.tail == (0, 1)


def test_tail_rechaza_otros_denominadores(F2):
    with pytest.raises(ParseError):
        parse_tail("1/(t+1)", F2)


def test_puiseux_con_precision(F2):
    x = parse_puiseux("pi^(1/2)+t;prec=3", F2)
    assert x.valuation() == -1
    assert x.coefficient(Fraction(1, 2)) == 1
    assert x.precision_value == 3


def test_puiseux_marcador_invalido(F2):
    with pytest.raises(ParseError):
        parse_puiseux("pi;prez=3", F2)
