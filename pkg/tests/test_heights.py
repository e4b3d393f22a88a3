# tests/test_heights.py
from fractions import Fraction

import pytest

from app.core.exceptions import PreconditionViolated, ZeroPolynomial
from app.core.fields import extension_field, ground_field
from app.core.parsing import parse_ratfun
from app.core.polynomials import PolyA, RatF
from app.core.series import PuiseuxElement
from app.modules.arith.services import arith_service
from app.modules.heights.models.place import PlaceF
from app.modules.heights.services import heights_service
from app.modules.modpoly.models.bivariate import BivarPolyA
from app.modules.omega.models.omega_point import OmegaPoint
from app.verification.suites.base_suite import SuiteContext
from app.verification.suites.heights_suite import HeightsSuite


def ratfun(text: str, q: int = 2) -> RatF:
    return parse_ratfun(text, ground_field(q))


# ===== ALTURA DE WEIL =====

def test_altura_de_weil():
    x = ratfun("(t^3+1)/t")
    assert heights_service.weil_height(x) == 3
    assert heights_service.weil_height_by_places(x) == 3
    assert heights_service.product_formula_holds(x)
    assert heights_service.weil_height(ratfun("0")) == 0
    assert heights_service.weil_height(ratfun("1")) == 0
    assert heights_service.weil_height(ratfun("t")) == 1


def test_lugares_de_x():
    places = heights_service.places_of(ratfun("(t^3+1)/t"))
    assert [v.label() for v in places] == ["t", "t+1", "t^2+t+1", "inf"]
    assert [v.degree for v in places] == [1, 1, 2, 1]


def test_lugar_no_primo(poly):
    with pytest.raises(PreconditionViolated):
        PlaceF.finite(poly("t^2+1", 2))


def test_valores_absolutos(poly):
    v = PlaceF.finite(poly("t", 2))
    inf = PlaceF.infinity(ground_field(2))
    assert v.log_plus(ratfun("1/t")) == 1
    assert v.log_abs(ratfun("t")) == -1
    assert inf.ord(ratfun("t")) == -1
    assert inf.log_plus(ratfun("0")) == 0


# ===== NORMAS DE GAUSS =====

def test_norma_de_gauss(poly, F3):
    p = [RatF(poly("2t", 3)), RatF(PolyA.one(F3))]
    assert heights_service.gauss_lognorm(p, PlaceF.infinity(F3)) == 1
    assert heights_service.gauss_lognorm(p, PlaceF.finite(poly("t", 3))) == 0


def test_norma_de_gauss_errores(F3):
    with pytest.raises(ZeroPolynomial):
        heights_service.gauss_lognorm([], PlaceF.infinity(F3))
    with pytest.raises(PreconditionViolated):
        heights_service.gauss_lognorm([RatF(PolyA.one(F3)), RatF(PolyA(F3, [2]))], PlaceF.infinity(F3))


def test_poligono_de_newton():
    assert heights_service.newton_polygon_root_sizes([0, -1, 0]) == [(Fraction(1), 1), (Fraction(-1), 1)]
    assert heights_service.mahler_log([0, -1, 0]) == 1
    assert heights_service.newton_polygon_root_sizes([None, 0]) == [(None, 1)]
    with pytest.raises(ZeroPolynomial):
        heights_service.newton_polygon_root_sizes([None, None])


def test_logaritmo_exacto():
    assert heights_service.log_q_at_least(Fraction(8), 2, 3)
    assert not heights_service.log_q_at_least(Fraction(7), 2, 3)
    assert heights_service.log_q_interval(Fraction(8), 2) == (Fraction(3), Fraction(3) + Fraction(1, 1024))


# ===== SUMAS DE HECKE =====

def test_suma_de_hecke_para_n_uno(F2):
    one = PolyA.one(F2)
    phi_1 = BivarPolyA(F2, one, 1, {(1, 0): one, (0, 1): one})
    j0 = ratfun("(t^3+1)/t")
    assert heights_service.hecke_height_sum(one, j0, phi_1) == heights_service.weil_height(j0) == 3


def test_suma_de_hecke_con_otro_n(phi_t, poly):
    with pytest.raises(PreconditionViolated):
        heights_service.hecke_height_sum(poly("t+1", 2), ratfun("1/t"), phi_t.phi)


def test_identidad_local_en_t(phi_t, poly):
    result = heights_service.check_local_identity(poly("t", 2), ratfun("1/t"), phi_t.phi, PlaceF.finite(poly("t", 2)))
    assert result.lhs == 1
    assert result.rhs == 1
    assert result.passed


@pytest.mark.parametrize("text", ["1/t", "(t^2+1)/(t+1)", "t^3", "1", "(t+1)/(t^3+t+1)"])
def test_identidad_local_en_todos_los_lugares(phi_t, poly, text):
    N, j0 = poly("t", 2), ratfun(text)
    for v in heights_service.local_identity_places(N, j0):
        result = heights_service.check_local_identity(N, j0, phi_t.phi, v)
        assert result.passed, (text, v.label())


def test_identidad_local_requiere_lugar_finito(phi_t, poly, F2):
    with pytest.raises(PreconditionViolated):
        heights_service.check_local_identity(poly("t", 2), ratfun("1/t"), phi_t.phi, PlaceF.infinity(F2))


def test_j0_constante(phi_t, poly):
    """j0 ∈ 𝔽_q: solo contribuye ∞"""
    j0 = ratfun("1")
    terms = heights_service.hecke_local_terms(j0, phi_t.phi)
    assert [v.label() for v, _ in terms] == ["inf"]
    band = heights_service.hecke_gap_band(poly("t", 2), j0, phi_t.phi)
    assert band.min_branch_active
    assert band.gap == -Fraction(terms[0][1], 3)
    assert band.passed


def test_banda_de_hecke(phi_t, poly):
    N = poly("t", 2)
    band = heights_service.hecke_gap_band(N, ratfun("1/t"), phi_t.phi)
    assert band.passed
    assert band.natural_log_reading is None
    assert band.lower == Fraction(3, 2) * (2 * arith_service.lambda_N(N) - 1 - arith_service.bq_upper(2))


def test_identidad_de_mahler(phi_t):
    for k in (1, 2):
        F = extension_field(2, k)
        for y in F.elements():
            assert heights_service.mahler_check(phi_t.phi, F, y).passed


def test_mahler_fuera_de_fq(phi_t):
    L = extension_field(2, 2)
    y = L.generator
    assert not L.in_ground(y)
    check = heights_service.mahler_check(phi_t.phi, L, y)
    assert (check.y, check.k) == ("w", 2)
    assert check.passed
    assert check.mahler == check.height


async def test_suite_de_mahler_usa_extensiones(phi_t, monkeypatch):
    """La suite recorre 𝔽_2 y los puntos de 𝔽_4 ∖ 𝔽_2"""

    class FixedPhi:
        async def get_phi(self, N):
            return phi_t

    seen = []
    check = heights_service.mahler_check

    def recording(phi, F, y):
        seen.append((F.ground_dimension, y))
        return check(phi, F, y)

    monkeypatch.setattr(heights_service, "mahler_check", recording)
    suite = HeightsSuite(SuiteContext(seed=0, phi_service=FixedPhi(), q=2))
    case = next(c for c in suite._cases() if c.name == "mahler:q2:t")
    assert await case.check() == []
    assert seen == [(1, 0), (1, 1), (2, 2), (2, 3)]

def test_cociente_de_covolumenes(poly):
    L = extension_field(2, 2)
    for terms in ({0: 2}, {1: 1, 3: 1, 6: 2}, {-1: 3}):
        z = OmegaPoint.certify(PuiseuxElement(L, terms))
        for m in arith_service.enumerate_cn(poly("t^2", 2)):
            assert heights_service.covolume_ratio_holds(z, m)
