# tests/test_omega.py
import random
from fractions import Fraction

import pytest

from app.core.exceptions import NotInOmega, PrecisionInsufficient, SingularMatrix
from app.core.fields import extension_field
from app.core.matrices import Matrix2
from app.core.polynomials import PolyA
from app.core.series import PuiseuxElement
from app.modules.btree.services.tree_service import gamma_matrices
from app.modules.omega.models.omega_point import OmegaPoint
from app.modules.omega.services import omega_service
from app.verification.suites.base_suite import random_omega_point


@pytest.fixture
def L():
    """𝔽₄ sobre 𝔽₂; w tiene código 2"""
    return extension_field(2, 2)


def point(L, terms):
    return OmegaPoint.certify(PuiseuxElement(L, terms))


def test_certificado_de_omega(L):
    z = point(L, {0: 2})
    assert z.witness_index == 0
    assert z.im_abs == 0
    assert z.in_fundamental_domain()
    z = point(L, {-1: 1, 0: 2})
    assert z.witness_index == 1
    assert z.abs_log == 1
    assert not z.in_fundamental_domain()


def test_elementos_de_f_infinito(L):
    with pytest.raises(NotInOmega):
        point(L, {0: 1, 1: 1})
    with pytest.raises(PrecisionInsufficient):
        OmegaPoint.certify(PuiseuxElement(L, {0: 1}, precision=3))


def test_exponente_fraccionario(F2):
    z = OmegaPoint.certify(PuiseuxElement.monomial(F2, Fraction(1, 2)))
    assert omega_service.im_abs(z) == Fraction(-1, 2)


def test_reduccion_por_traslacion(L):
    z = point(L, {-1: 1, 0: 2})
    reduction = omega_service.reduce_to_fundamental(z)
    assert reduction.reduced == point(L, {0: 2})
    assert reduction.gamma == Matrix2.translation(L, PolyA(L.ground, [0, 1]))
    assert reduction.steps == 0


def test_inversion(L):
    """J(wπ) = w⁻¹t: |·|_i pasa de q⁻¹ a q"""
    z = point(L, {1: 2})
    image = omega_service.apply_gl2(Matrix2.swap(L), z)
    assert omega_service.im_abs(image) == 1
    assert image.value == PuiseuxElement(L, {-1: L.inv(2)})
    reduction = omega_service.reduce_to_fundamental(z)
    assert reduction.reduced.in_fundamental_domain()
    assert reduction.gamma.is_gamma()


def test_matriz_singular(L):
    with pytest.raises(SingularMatrix):
        omega_service.apply_gl2(Matrix2.of(L, 1, 1, 1, 1), point(L, {0: 2}))


def test_ejemplo_del_reticulo(L):
    """z = π + π³ + wπ⁶: |z|_i = q⁻⁶ y el retículo no es reducido"""
    profile = omega_service.lattice_profile(point(L, {1: 1, 3: 1, 6: 2}))
    assert profile.im_abs == -6
    assert profile.covolume_log == -6
    assert profile.min1 == profile.min2 == -3
    assert profile.reduced is False


def test_perfil_reducido(L):
    profile = omega_service.lattice_profile(point(L, {-2: 2, 0: 1}))
    assert profile.reduced is True
    assert profile.min1 == 0
    assert profile.covolume_log == profile.im_abs == 2


@pytest.mark.parametrize("q", [2, 3])
def test_equivalencias_de_reticulo_reducido(q):
    rng = random.Random(f"reduced_lattice:{q}")
    L = extension_field(q, 2)
    for _ in range(15):
        predicates = omega_service.reduced_lattice_predicates(random_omega_point(rng, L))
        assert len(set(predicates.values())) == 1, predicates


def test_formula_de_im_bajo_gl2(L):
    rng = random.Random(7)
    matrices = list(gamma_matrices(L.ground, 1))
    for _ in range(20):
        z = random_omega_point(rng, L)
        assert omega_service.imtrans_holds(rng.choice(matrices), z)


def test_resumen_de_reduccion(L):
    summary = omega_service.reduction_summary(point(L, {1: 2}), with_profile=True)
    assert summary["im_abs"] == -1
    assert summary["im_abs_reduced"] == 1
    assert summary["profile"].reduced is False
