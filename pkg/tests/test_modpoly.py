# tests/test_modpoly.py
import pytest

from app.core.exceptions import CharDividesN, InvariantViolation
from app.core.fields import extension_field, ground_field
from app.core.parsing import parse_poly
from app.core.polynomials import PolyA
from app.modules.arith.services import arith_service
from app.modules.drinfeld.models.module import AFieldFinite
from app.modules.drinfeld.services import drinfeld_service
from app.modules.modpoly.models.bivariate import BivarPolyA
from app.modules.modpoly.services import modpoly_service


def test_interpolacion_de_lagrange():
    L = extension_field(2, 3)
    values = [5, 0, 3, 7]
    nodes = [1, 2, 3, 4]
    p = modpoly_service.lagrange_interpolate(L, nodes, values)
    assert len(p) <= len(nodes)
    for x, y in zip(nodes, values):
        acc = 0
        for c in reversed(p):
            acc = L.add(L.mul(acc, x), c)
        assert acc == y


def test_primos_coprimos(poly):
    primes = modpoly_service.take_primes(modpoly_service.coprime_primes(poly("t", 2)), 4)
    assert [P.to_string() for P in primes] == ["t+1", "t^2+t+1", "t^3+t+1"]


def test_especializacion_requiere_coprimo(poly):
    with pytest.raises(CharDividesN):
        modpoly_service.specialize_phi(poly("t", 2), poly("t", 2))


# ===== Φ_t SOBRE 𝔽_2 =====

def test_phi_t_estructura(phi_t):
    phi = phi_t.phi
    assert phi.psi == 3
    assert phi.is_monic_in_x()
    assert phi.is_symmetric()
    assert phi.degree_x == phi.degree_y == 3
    assert all(c.field.order == 2 for _, c in phi.items())
    phi.validate()


def test_phi_t_en_la_banda(phi_t):
    check = modpoly_service.verify_height_band(phi_t.phi)
    assert check.passed
    assert check.lower <= check.h <= check.upper
    assert check.implied_bq_nonnegative
    assert check.excess_in_range


def test_congruencia_de_kronecker(phi_t):
    """Φ_t ≡ (X² − Y)(X − Y²) mod t"""
    reduced = modpoly_service.reduce_mod(phi_t.phi, parse_poly("t", ground_field(2)))
    one = PolyA.one(ground_field(2))
    assert reduced.table == {(3, 0): one, (2, 2): one, (1, 1): one, (0, 3): one}


def test_estabilidad_del_crt(phi_t):
    assert phi_t.modulus_degree >= phi_t.degree_bound
    assert modpoly_service.check_stability(phi_t.phi, phi_t.stability_prime)
    assert phi_t.stability_prime not in phi_t.primes


def test_relacion_de_raices(phi_t):
    report = modpoly_service.verify_root_relation(phi_t.phi, trials=6, exclude=phi_t.primes)
    assert report.passed, report.failures


def test_polinomio_de_hecke_es_phi_especializado(phi_t):
    """∏_C (X − j(φ/C)) = Φ_t(X, j0) en 𝔽_4 = A/(t²+t+1)"""
    L = extension_field(2, 2)
    P = parse_poly("t^2+t+1", ground_field(2))
    base = AFieldFinite(L, 2, P)
    for j0 in range(L.order):
        module = drinfeld_service.module_from_j(j0, base)
        assert drinfeld_service.hecke_polynomial(module, phi_t.phi.N) == \
            modpoly_service.x_polynomial_at(phi_t.phi, L, 2, j0)


def test_testigo_de_altura(phi_t):
    witness = modpoly_service.specialization_height_witness(phi_t.phi)
    assert witness.height == witness.specialized_height == modpoly_service.phi_height(phi_t.phi)
    assert 1 <= witness.k <= 4


def test_ida_y_vuelta_del_payload(phi_t):
    restored = modpoly_service.CrtResult.from_payload(phi_t.to_payload(), ground_field(2))
    assert restored.phi.coeffs == phi_t.phi.coeffs
    assert restored.primes == phi_t.primes


def test_validacion_rechaza_no_monico(poly):
    N = poly("t", 2)
    broken = BivarPolyA(ground_field(2), N, 3, {(3, 0): poly("t", 2), (0, 3): poly("1", 2)})
    with pytest.raises(InvariantViolation):
        broken.validate()


def test_phi_1():
    """N = 1: Φ_1 = X − Y"""
    F = ground_field(3)
    phi = modpoly_service.crt_phi(PolyA.one(F))
    assert phi.coeffs == {(1, 0): PolyA.one(F), (0, 1): PolyA(F, [2])}


@pytest.mark.slow
@pytest.mark.parametrize("N", ["t", "t+1"])
def test_phi_sobre_f3(N):
    F = ground_field(3)
    phi = modpoly_service.crt_phi(parse_poly(N, F))
    assert phi.psi == arith_service.psi(phi.N) == 4
    assert modpoly_service.verify_height_band(phi).passed
