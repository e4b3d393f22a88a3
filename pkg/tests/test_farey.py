# tests/test_farey.py
from fractions import Fraction

import pytest

from app.core.exceptions import NotInUnitBall, PreconditionViolated, SmallD
from app.core.fields import extension_field, ground_field
from app.core.polynomials import PolyA, RatF
from app.core.series import PuiseuxElement, TailElement
from app.modules.arith.models.cn_matrix import CNMatrix
from app.modules.farey.models.farey import FareyBall, FareyFraction
from app.modules.farey.services import farey_service
from app.modules.omega.models.omega_point import OmegaPoint
from app.modules.omega.services import omega_service


@pytest.mark.parametrize("q, M, size", [(2, 1, 3), (3, 1, 7), (2, 2, 11)])
def test_tamano_de_fm(q, M, size):
    fractions = farey_service.enumerate_fm(ground_field(q), M)
    assert len(fractions) == size
    assert len(set(fractions)) == size
    assert fractions[0] == FareyFraction(PolyA.zero(ground_field(q)), PolyA.one(ground_field(q)))


def test_fm_de_orden_uno_sobre_f2():
    assert [str(c) for c in farey_service.enumerate_fm(ground_field(2), 1)] == ["0/1", "1/t", "1/t+1"]


def test_m_invalido(F2):
    with pytest.raises(PreconditionViolated):
        farey_service.enumerate_fm(F2, 0)


def test_fraccion_invalida(poly):
    with pytest.raises(PreconditionViolated):
        FareyFraction(poly("t", 2), poly("t^2+t", 2))
    with pytest.raises(PreconditionViolated):
        FareyFraction(PolyA.zero(ground_field(2)), poly("t", 2))
    with pytest.raises(PreconditionViolated):
        FareyFraction(poly("1", 3), poly("2t", 3))


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("M", [1, 2])
def test_volumen_total(q, M):
    """Σ q^{−(deg f + M + 1)} = 1/q: las bolas cubren la bola abierta unidad"""
    balls = [FareyBall(c, M) for c in farey_service.enumerate_fm(ground_field(q), M)]
    assert sum(Fraction(1, q ** b.radius_valuation) for b in balls) == Fraction(1, q)
    assert farey_service.balls_disjoint([b.center for b in balls], M) == []


def test_locate_ball_ejemplos(poly):
    zero = RatF(PolyA.zero(ground_field(2)))
    assert str(farey_service.locate_ball(zero, 3)) == "0/1"
    zeta = RatF(poly("t^2+1", 2), poly("t^3", 2))
    assert str(farey_service.locate_ball(zeta, 1)) == "1/t"
    zeta = RatF(poly("t+1", 2), poly("t^2", 2))
    assert str(farey_service.locate_ball(zeta, 1)) == "1/t+1"


def test_locate_ball_con_cola(F2):
    """ζ = π + π³ como TailElement"""
    zeta = TailElement(PolyA.zero(F2), [1, 0, 1])
    assert str(farey_service.locate_ball(zeta, 1)) == "1/t"


def test_locate_ball_fuera_de_la_bola(poly):
    with pytest.raises(NotInUnitBall):
        farey_service.locate_ball(RatF(poly("t", 2), poly("t+1", 2)), 1)


@pytest.mark.parametrize("q, M, depth", [(2, 1, 3), (2, 2, 3), (3, 1, 2)])
def test_verify_partition(q, M, depth):
    report = farey_service.verify_partition(ground_field(q), M, depth)
    assert report.failures == []
    assert report.fractions_checked == sum(q ** (2 * d) for d in range(1, depth + 1))


def test_conteo_ejemplos(poly):
    center = FareyFraction(poly("1", 2), poly("t", 2))
    one, zero = poly("1", 2), PolyA.zero(ground_field(2))
    assert farey_service.count_in_ball(poly("t^2", 2), one, zero, 1, center, check=True) == 1
    assert farey_service.count_in_ball(poly("t^3", 2), one, zero, 1, center, check=True) == 2


def test_conteo_con_congruencia_y_coprimalidad(poly):
    center = FareyFraction(poly("1", 3), poly("t+1", 3))
    d, e = poly("t^4+t+2", 3), poly("t", 3)
    r = poly("1", 3)
    assert farey_service.count_in_ball(d, e, r, 1, center, check=True) == 3
    assert farey_service.count_in_ball(d, e, r, 1, center, check=True, coprime=True) == 6


def test_conteo_bajo_uno(poly):
    center = FareyFraction(poly("1", 2), poly("t", 2))
    with pytest.raises(PreconditionViolated):
        farey_service.count_in_ball(poly("t", 2), poly("1", 2), PolyA.zero(ground_field(2)), 1, center)


def _w_point() -> OmegaPoint:
    """z = w ∈ 𝔽₄ ∖ 𝔽₂ con |z| = |z|_i = 1"""
    return OmegaPoint.certify(PuiseuxElement(extension_field(2, 2), {0: 2}))


def test_representante_de_farey(poly):
    z = _w_point()
    gamma = CNMatrix(a=poly("1", 2), b=poly("t+1", 2), d=poly("t^3", 2))
    rep = farey_service.farey_representative(z, gamma)
    assert rep.M == 2
    assert rep.delta.is_gamma()
    assert -2 <= omega_service.im_abs(rep.z_hat) <= rep.upper_bound
    assert rep.center == farey_service.locate_ball(RatF(gamma.b, gamma.d), 2)


def test_representante_d_pequeno(poly):
    gamma = CNMatrix(a=poly("t", 2), b=PolyA.zero(ground_field(2)), d=poly("1", 2))
    with pytest.raises(SmallD):
        farey_service.farey_representative(_w_point(), gamma)


def test_representante_fuera_del_dominio(poly):
    z = OmegaPoint.certify(PuiseuxElement(extension_field(2, 2), {1: 2}))
    gamma = CNMatrix(a=poly("1", 2), b=poly("1", 2), d=poly("t^3", 2))
    with pytest.raises(PreconditionViolated):
        farey_service.farey_representative(z, gamma)
