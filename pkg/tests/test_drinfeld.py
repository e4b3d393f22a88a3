# tests/test_drinfeld.py
import pytest

from app.core.exceptions import DivisionByZero, NonLinearizedKernel, PreconditionViolated, TorsionNotEtale
from app.core.fields import extension_field
from app.core.polynomials import PolyA, all_polys_below
from app.modules.arith.services import arith_service
from app.modules.drinfeld.models.module import AFieldFinite, DrinfeldMod2
from app.modules.drinfeld.models.skew import SkewPoly
from app.modules.drinfeld.services import drinfeld_service


@pytest.fixture
def L():
    return extension_field(2, 2)


@pytest.fixture
def phi(L):
    """φ_t = w + τ + τ² sobre 𝔽_4 con θ = w"""
    return DrinfeldMod2(AFieldFinite(L, 2), 1, 1)


# ===== L{τ} =====

def test_conmutacion_de_tau(L):
    w = SkewPoly.constant(L, 2)
    assert SkewPoly.tau(L) * w == drinfeld_service.skew_mul(SkewPoly.tau(L), w) == SkewPoly(L, [0, 3])
    assert w * SkewPoly.tau(L) == SkewPoly(L, [0, 2])


def test_division_por_la_derecha(L):
    a = SkewPoly(L, [1, 2, 3, 1])
    b = SkewPoly(L, [2, 1])
    quotient, remainder = a.right_divmod(b)
    assert quotient * b + remainder == a
    assert remainder.degree < b.degree
    with pytest.raises(DivisionByZero):
        a.right_divmod(SkewPoly.zero(L))


def test_evaluacion_linealizada(L):
    assert SkewPoly(L, [0, 1])(2) == 3
    u = SkewPoly(L, [3, 1, 2])
    for x in range(L.order):
        for y in range(L.order):
            assert u(L.add(x, y)) == L.add(u(x), u(y))


# ===== ACCIÓN DE A =====

def test_a_campo(phi):
    assert phi.base.char_poly == PolyA(phi.L.ground, [1, 1, 1])
    assert phi.base.evaluate(PolyA(phi.L.ground, [0, 1])) == 2


def test_phi_es_morfismo_de_anillos(phi):
    F = phi.L.ground
    polys = list(all_polys_below(F, 3))
    assert drinfeld_service.phi_action(phi, PolyA(F, [0, 1])) == phi.phi_t()
    for a in polys:
        phi_a = drinfeld_service.phi_action(phi, a)
        assert phi_a[0] == phi.base.evaluate(a)
        for b in polys:
            phi_b = drinfeld_service.phi_action(phi, b)
            assert drinfeld_service.phi_action(phi, a * b) == phi_a * phi_b
            assert drinfeld_service.phi_action(phi, a + b) == phi_a + phi_b


def test_apply_phi_coincide_con_phi_a(phi):
    a = PolyA(phi.L.ground, [1, 0, 1, 1])
    phi_a = drinfeld_service.phi_action(phi, a)
    for x in range(phi.L.order):
        assert drinfeld_service.apply_phi(phi, a, x) == phi_a(x)


def test_carlitz(phi):
    F = phi.L.ground
    c_t2 = drinfeld_service.carlitz_action(phi.base, PolyA(F, [0, 0, 1]))
    c_t = drinfeld_service.carlitz_action(phi.base, PolyA(F, [0, 1]))
    assert c_t2 == c_t * c_t
    assert c_t2.degree == 2


# ===== j-INVARIANTE =====

def test_modulo_desde_j(phi):
    for j0 in range(phi.L.order):
        assert drinfeld_service.j_invariant(drinfeld_service.module_from_j(j0, phi.base)) == j0


def test_twist_conserva_j(phi):
    j = drinfeld_service.j_invariant(phi)
    for c in range(1, phi.L.order):
        assert drinfeld_service.j_invariant(drinfeld_service.twist(phi, c)) == j


def test_delta_nulo(L):
    with pytest.raises(PreconditionViolated):
        DrinfeldMod2(AFieldFinite(L, 2), 1, 0)


# ===== TORSIÓN Y SUBMÓDULOS =====

@pytest.mark.parametrize("coeffs", [(0, 1), (1, 1)])
def test_torsion(phi, coeffs):
    N = PolyA(phi.L.ground, coeffs)
    data = drinfeld_service.torsion(phi, N)
    assert len(data.points) == len(set(data.points)) == 4
    assert 0 in data.points
    for p in data.points:
        assert drinfeld_service.apply_phi(data.module, N, p) == 0


def test_torsion_no_etale(phi):
    with pytest.raises(TorsionNotEtale):
        drinfeld_service.torsion(phi, phi.base.char_poly)


def test_base_de_torsion(phi):
    N = PolyA(phi.L.ground, [0, 1])
    data = drinfeld_service.torsion_basis(phi, N)
    assert drinfeld_service.has_exact_order(data.module, N, data.y)
    assert not drinfeld_service.has_exact_order(data.module, N, 0)


@pytest.mark.parametrize("coeffs", [(0, 1), (1, 1)])
def test_submodulos_ciclicos_e_isogenias(phi, coeffs):
    N = PolyA(phi.L.ground, coeffs)
    data = drinfeld_service.torsion_basis(phi, N)
    modules = drinfeld_service.cyclic_submodules(phi, N, data)
    assert len(modules) == arith_service.psi(N)
    assert {(m.a, m.b, m.d) for m in modules} == {(m.a, m.b, m.d) for m in arith_service.enumerate_cn(N)}
    for C in modules:
        assert len(C.points) == 2
        quotient, u = drinfeld_service.quotient_by(data.module, C)
        assert drinfeld_service.kernel_is_exact(u, C)
        assert u * data.module.phi_t() == quotient.phi_t() * u


def test_polinomio_de_hecke(phi):
    N = PolyA(phi.L.ground, [0, 1])
    row = drinfeld_service.hecke_polynomial(phi, N)
    assert len(row) == arith_service.psi(N) + 1
    assert row[-1] == 1


def test_nucleo_no_linealizado(L):
    with pytest.raises(NonLinearizedKernel):
        drinfeld_service.kernel_polynomial(L, [0, 1, 2])
