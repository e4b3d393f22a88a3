# tests/test_btree.py
from fractions import Fraction
from itertools import product

import pytest

from app.core.exceptions import NonCanonicalVertex, PreconditionViolated
from app.core.fields import extension_field, ground_field
from app.core.matrices import Matrix2
from app.core.polynomials import PolyA, all_polys_below
from app.core.series import PuiseuxElement, TailElement
from app.modules.btree.models.tree import TreeEdge, TreeVertex
from app.modules.btree.services import tree_service
from app.modules.omega.models.omega_point import OmegaPoint
from app.verification.suites.btree_suite import case_formula_error


def vertex(F, k, poly_coeffs=(), tail=()):
    return TreeVertex.of(k, TailElement(PolyA(F, poly_coeffs), tail))


def test_vertice_no_canonico(F2):
    with pytest.raises(NonCanonicalVertex):
        TreeVertex(1, TailElement(PolyA.zero(F2), [1]))


def test_adyacencia_de_la_raiz(F2):
    neighbours = tree_service.adjacency(TreeVertex.spine(F2, 0))
    assert [str(v) for v in neighbours] == ["v(1, 0)", "v(1, 1)", "v(-1, 0)"]


@pytest.mark.parametrize("q", [2, 3])
def test_adyacencia_regular_y_simetrica(q):
    F = ground_field(q)
    for k, tail in product(range(-2, 4), product(range(q), repeat=2)):
        v = vertex(F, k, (1,), tail)
        neighbours = tree_service.adjacency(v)
        assert len(set(neighbours)) == q + 1
        for w in neighbours:
            assert v in tree_service.adjacency(w)
            TreeEdge(v, w)


def test_arista_invalida(F2):
    with pytest.raises(PreconditionViolated):
        TreeEdge(TreeVertex.spine(F2, 0), TreeVertex.spine(F2, 2))


@pytest.mark.parametrize("k, coeffs, tail, k_prime, case", [
    (3, (), (), -3, 1),
    (-2, (), (), -2, 1),
    (1, (1, 0, 1), (), -1, 2),
    (2, (), (1,), 0, 3),
    (5, (1,), (1,), -3, 3),
    (3, (), (0, 1), -1, 4),
])
def test_reduce_vertex_ejemplos(F2, k, coeffs, tail, k_prime, case):
    v = vertex(F2, k, coeffs, tail)
    witness = tree_service.reduce_vertex(v)
    assert witness.verified
    assert witness.case == case
    assert witness.k_prime == k_prime
    assert case_formula_error(v, witness) is None


@pytest.mark.parametrize("q", [2, 3])
def test_reduce_vertex_rejilla(q):
    F = ground_field(q)
    polys = list(all_polys_below(F, 2))
    for k in range(-2, 5):
        for u0, tail in product(polys, product(range(q), repeat=2)):
            v = vertex(F, k, u0.coeffs, tail)
            witness = tree_service.reduce_vertex(v)
            assert case_formula_error(v, witness) is None, str(v)
            spine = TreeVertex.spine(F, witness.k_prime)
            assert tree_service.act(witness.gamma, v) == spine


def test_oraculo_de_fuerza_bruta(F2):
    for v in (vertex(F2, 2, (), (1,)), vertex(F2, 3, (), ()), vertex(F2, 1, (1,), ())):
        assert tree_service.brute_force_spine_index(v) == tree_service.reduce_vertex(v).k_prime


def test_vertex_equivalent(F2):
    identity = Matrix2.identity(F2)
    v1, v_1 = TreeVertex.spine(F2, 1), TreeVertex.spine(F2, -1)
    assert tree_service.vertex_equivalent(v1.matrix(), v1.matrix(), identity)
    assert not tree_service.vertex_equivalent(v1.matrix(), v_1.matrix(), identity)
    witness = tree_service.reduce_vertex(TreeVertex.spine(F2, 3))
    assert tree_service.vertex_equivalent(TreeVertex.spine(F2, 3).matrix(), TreeVertex.spine(F2, -3).matrix(),
                                          witness.gamma)


def test_camino_al_espinazo(F2):
    path = tree_service.path_to_spine(vertex(F2, 3, (), (1, 0)))
    assert [v.k for v in path] == [3, 2, 1, 0]
    assert path[-1].is_spine()


# ===== APLICACIÓN AL EDIFICIO =====

def test_building_map_vertices():
    L = extension_field(2, 2)
    image = tree_service.building_map(OmegaPoint.certify(PuiseuxElement(L, {0: 2})))
    assert not image.interior
    assert str(image.vertex) == "v(0, 0)"
    image = tree_service.building_map(OmegaPoint.certify(PuiseuxElement(L, {-1: 2})))
    assert str(image.vertex) == "v(-1, 0)"
    image = tree_service.building_map(OmegaPoint.certify(PuiseuxElement(L, {1: 1, 3: 1, 6: 2})))
    assert image.vertex.k == 6
    assert image.vertex.u == TailElement(PolyA.zero(L.ground), [1, 0, 1])


def test_building_map_arista(F2):
    z = OmegaPoint.certify(PuiseuxElement.monomial(F2, Fraction(1, 2)))
    image = tree_service.building_map(z)
    assert image.interior
    assert (image.edge.source.k, image.edge.target.k) == (0, 1)
