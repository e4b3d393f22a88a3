# tests/test_polynomials.py
import random
from fractions import Fraction

import pytest
from sympy import Poly, divisors, mobius, symbols

from app.core.exceptions import BothZero, NotMonic, ZeroInput
from app.core.fields import ground_field
from app.core.polynomials import (MINUS_INFINITY, PolyA, RatF, crt_combine, factor_monic, gcd, inverse_mod,
                                  log_abs, monic_divisors, monic_irreducibles, norm, ord_at, v_inf, xgcd)
from app.core.series import PuiseuxElement, TailElement


def _sympy_factors(N: PolyA):
    """Factorización de referencia con sympy (solo campos primos)"""
    p = N.field.p
    f = Poly(list(reversed(N.coeffs)), symbols("x"), modulus=p)
    _, factors = f.factor_list()
    return sorted((tuple(c % p for c in reversed(g.all_coeffs())), n) for g, n in factors)


def _random_monic(rng, F, degree):
    return PolyA(F, [rng.randrange(F.order) for _ in range(degree)] + [1])


def test_grado_del_cero(F2):
    zero = PolyA.zero(F2)
    assert zero.degree is MINUS_INFINITY
    assert zero.degree < 0
    assert PolyA.one(F2).degree == 0


def test_aritmetica_basica(poly):
    t1 = poly("t+1", 2)
    assert t1 ** 2 == poly("t^2+1", 2)
    q, r = divmod(poly("t^3+1", 2), t1)
    assert q == poly("t^2+t+1", 2)
    assert r.is_zero()
    assert poly("2t+1", 3) - poly("t", 3) == poly("t+1", 3)


def test_xgcd_bezout(poly):
    a, b = poly("t^4+t+1", 2), poly("t^2+1", 2)
    g, s, t = xgcd(a, b)
    assert g.is_monic()
    assert s * a + t * b == g
    assert g == gcd(a, b)


def test_xgcd_de_ceros(F2):
    with pytest.raises(BothZero):
        xgcd(PolyA.zero(F2), PolyA.zero(F2))


def test_inverse_mod_y_crt(poly):
    m1, m2 = poly("t^2+t+1", 2), poly("t^3+t+1", 2)
    inv = inverse_mod(poly("t", 2), m1)
    assert (inv * poly("t", 2)) % m1 == PolyA.one(m1.field)
    r1, r2 = poly("t", 2), poly("t^2+1", 2)
    x, modulus = crt_combine(r1, m1, r2, m2)
    assert modulus == m1 * m2
    assert x % m1 == r1
    assert x % m2 == r2


def test_factor_monic_ordenado(poly):
    assert factor_monic(poly("t^3+1", 2)) == [(poly("t+1", 2), 1), (poly("t^2+t+1", 2), 1)]
    assert factor_monic(poly("t^4", 3)) == [(poly("t", 3), 4)]
    assert factor_monic(poly("1", 3)) == []


def test_factor_monic_requiere_monico(poly):
    with pytest.raises(NotMonic):
        factor_monic(poly("2t+1", 3))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_factor_monic_coincide_con_sympy(p):
    F = ground_field(p)
    rng = random.Random(p)
    for _ in range(20):
        N = _random_monic(rng, F, rng.randint(1, 6))
        ours = sorted((P.coeffs, n) for P, n in factor_monic(N))
        assert ours == _sympy_factors(N)


@pytest.mark.parametrize("q, n", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)])
def test_numero_de_irreducibles(q, n):
    """(1/n) Σ_{d|n} μ(d) q^{n/d} irreducibles mónicos de grado n"""
    expected = sum(mobius(d) * q ** (n // d) for d in divisors(n)) // n
    assert len(monic_irreducibles(ground_field(q), n)) == expected


def test_monic_divisors_y_norma(poly):
    N = poly("t^2+t", 2)
    assert monic_divisors(N) == [poly("1", 2), poly("t", 2), poly("t+1", 2), N]
    assert norm(N) == 4


# ===== CUERPO DE FRACCIONES =====

def test_ratf_normalizado(poly):
    x = RatF(poly("t^2+t", 2), poly("t", 2))
    assert x == poly("t+1", 2)
    y = RatF(poly("t", 3), poly("2t+2", 3))
    assert y.den.is_monic()
    assert y == RatF(poly("2t", 3), poly("t+1", 3))


def test_valuaciones(poly):
    x = RatF(poly("t^3+1", 2), poly("t", 2))
    assert v_inf(x) == -2
    assert log_abs(x) == Fraction(2)
    y = RatF(poly("t^2", 2), poly("t+1", 2))
    assert ord_at(y, poly("t", 2)) == 2
    assert ord_at(y, poly("t+1", 2)) == -1
    with pytest.raises(ZeroInput):
        v_inf(RatF(PolyA.zero(x.field)))


# ===== SERIES =====

def test_puiseux_monomios(F2):
    half = PuiseuxElement.monomial(F2, Fraction(1, 2))
    assert half.e == 2
    assert half * half == PuiseuxElement.monomial(F2, Fraction(1))
    assert (half * half).e == 1
    assert half.valuation() == Fraction(1, 2)


def test_puiseux_desde_ratf(F2, poly):
    """1/(t+1) = π + π² + π³ + … sobre 𝔽_2"""
    x = PuiseuxElement.from_ratf(RatF(PolyA.one(F2), poly("t+1", 2)))
    assert x.valuation() == 1
    assert x.coefficient(Fraction(3)) == 1
    assert not x.is_exact()


def test_tail_desde_ratf(F2, poly):
    x = RatF(PolyA.one(F2), poly("t+1", 2))
    u = TailElement.from_ratf(x, 4)
    assert u.poly_part.is_zero()
    assert u.tail == (1, 1, 1)
    assert u.is_canonical(4)
    assert u.to_ratf() == RatF(poly("t^2+t+1", 2), poly("t^3", 2))


def test_tail_truncate(poly):
    u = TailElement(poly("t+1", 2), [1, 0, 1])
    assert u.truncate(2) == TailElement(poly("t+1", 2), [1])
    assert u.truncate(0) == TailElement(poly("t", 2))
    assert u.add_monomial(2, 1).tail == (1, 1, 1)
