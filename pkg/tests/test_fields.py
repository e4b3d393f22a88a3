# tests/test_fields.py
import pytest
from sympy import GF, Poly, symbols

from app.core import dense
from app.core.exceptions import SizeCapExceeded, UnsupportedField
from app.core.fields import (FieldDesc, build_extension, embed, extension_field, find_roots, ground_field,
                             is_irreducible, least_irreducible, parse_prime_power, split_roots)


@pytest.mark.parametrize("q, expected", [(2, (2, 1)), (7, (7, 1)), (8, (2, 3)), (9, (3, 2)), (16, (2, 4)),
                                         (25, (5, 2))])
def test_parse_prime_power(q, expected):
    assert parse_prime_power(q) == expected


@pytest.mark.parametrize("q", [0, 1, 6, 12, 36])
def test_campo_no_soportado(q):
    with pytest.raises(UnsupportedField):
        ground_field(q)


def test_codigos_de_f4(F4):
    """a = código 2 con a² = a + 1"""
    a = F4.generator
    assert a == 2
    assert F4.mul(a, a) == F4.add(a, 1) == 3
    assert F4.mul(a, 3) == 1
    assert F4.add(2, 3) == 1


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
def test_axiomas_de_campo(q):
    F = ground_field(q)
    elements = list(F.elements())
    assert len(elements) == q
    for a in elements:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, q - 1) == 1
        for b in elements:
            assert F.mul(a, b) == F.mul(b, a)
            assert F.sub(F.add(a, b), b) == a


def test_inverso_de_cero(F3):
    with pytest.raises(ZeroDivisionError):
        F3.inv(0)


def test_extension_canonica_es_determinista():
    L = extension_field(2, 3)
    assert L.order == 8
    assert L.modulus == least_irreducible(ground_field(2), 3)
    assert extension_field(2, 3) is L
    assert all(L.in_ground(c) for c in range(2))
    assert not L.in_ground(L.generator)


def test_build_extension():
    base = FieldDesc.of(2)
    assert build_extension(base, 2).modulus == (1, 1, 1)
    assert build_extension(base, 3) == build_extension(base, 3)
    assert build_extension(base, 3).modulus == (1, 1, 0, 1)
    assert build_extension(base, 3).field is extension_field(2, 3)
    assert build_extension(base, 1).modulus is None
    with pytest.raises(ValueError):
        build_extension(base, 0)
    with pytest.raises(SizeCapExceeded):
        build_extension(base, 21)


def test_extension_supera_el_tope():
    with pytest.raises(SizeCapExceeded):
        extension_field(2, 10, cap=2 ** 8)


def test_frobenius_fija_el_campo_base(L4):
    for a in range(4):
        assert L4.frobenius(a) == a
    w = L4.generator
    assert L4.frobenius(w) != w
    assert L4.frobenius(w, times=2) == w


def test_least_irreducible_coincide_con_sympy():
    """El módulo canónico de 𝔽_{3^m} es irreducible según sympy"""
    x = symbols("x")
    for m in (2, 3, 4):
        coeffs = least_irreducible(ground_field(3), m)
        assert Poly(list(reversed(coeffs)), x, domain=GF(3)).is_irreducible
        assert is_irreducible(ground_field(3), coeffs)


def test_split_roots_y_find_roots():
    L = extension_field(2, 2)
    roots = split_roots([1, 1, 1], L)
    assert roots == sorted(roots)
    assert len(roots) == 2
    assert all(dense.evaluate(L, [1, 1, 1], r) == 0 for r in roots)
    # x² + 1 = (x + 1)² sobre 𝔽_2: raíz doble
    assert find_roots([1, 0, 1], ground_field(2)) == [1, 1]
    assert split_roots([1, 0, 1], ground_field(2)) == [1]


def test_split_roots_sin_raices():
    """x² + x + 1 no tiene raíces en 𝔽_2"""
    assert split_roots([1, 1, 1], ground_field(2)) == []


def test_embed_es_homomorfismo():
    src, dst = extension_field(2, 2), extension_field(2, 4)
    emb = embed(src, dst)
    for a in src.elements():
        assert emb.preimage(emb(a)) == a
        for b in src.elements():
            assert emb(src.mul(a, b)) == dst.mul(emb(a), emb(b))
            assert emb(src.add(a, b)) == dst.add(emb(a), emb(b))


def test_embed_sin_encaje():
    with pytest.raises(ValueError):
        embed(extension_field(2, 2), extension_field(2, 3))
