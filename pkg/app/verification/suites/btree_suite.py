# app/verification/suites/btree_suite.py - Reducción de vértices al espinazo sobre la rejilla exhaustiva
from functools import partial
from itertools import product
from typing import Dict, List, Optional

from app.core.exceptions import DrinfeldToolkitError
from app.core.fields import FiniteField, ground_field
from app.core.polynomials import all_polys_below
from app.core.series import TailElement
from app.modules.btree.models.tree import GammaWitness, TreeVertex
from app.modules.btree.services import tree_service
from app.verification.suites.base_suite import BaseSuite, SuiteCase


def expected_case(v: TreeVertex) -> int:
    if v.u.is_zero():
        return 1
    if not v.u.tail:
        return 2
    return 3 if v.k >= 2 * v.u.r else 4


def case_formula_error(v: TreeVertex, witness: GammaWitness) -> Optional[str]:
    """k' según el caso: −|k| (casos 1 y 2), 2r − k (caso 3), k' ≥ k − 2r (caso 4)"""
    case = expected_case(v)
    if witness.case != case:
        return f"caso {witness.case}, se esperaba {case}"
    k, r = v.k, v.u.r
    if case in (1, 2) and witness.k_prime != -abs(k):
        return f"k' = {witness.k_prime} ≠ −|k| = {-abs(k)}"
    if case == 3 and witness.k_prime != 2 * r - k:
        return f"k' = {witness.k_prime} ≠ 2r − k = {2 * r - k}"
    if case == 4 and not k - 2 * r <= witness.k_prime <= 0:
        return f"k' = {witness.k_prime} fuera de [k − 2r, 0] = [{k - 2 * r}, 0]"
    return None


class BtreeSuite(BaseSuite):
    k_range = range(-4, 7)
    max_poly_degree = 3
    max_tail = 3
    oracle_samples = 10
    adjacency_samples = 30

    def _grid(self, F: FiniteField) -> Dict[int, List[TreeVertex]]:
        """Vértices canónicos distintos v(k, u) de la rejilla, agrupados por k"""
        grid: Dict[int, List[TreeVertex]] = {}
        polys = list(all_polys_below(F, self.max_poly_degree + 1))
        for k in self.k_range:
            seen = {}
            for u0, tail in product(polys, product(range(F.order), repeat=self.max_tail)):
                v = TreeVertex.of(k, TailElement(u0, tail))
                seen.setdefault(str(v), v)
            grid[k] = [seen[key] for key in sorted(seen)]
        return grid

    def _cases(self) -> List[SuiteCase]:
        cases = []
        for q in self.qs():
            F = ground_field(q)
            grid = self._grid(F)
            for k, vertices in grid.items():
                cases.append(SuiteCase(f"grid:q{q}:k{k}", partial(self._reduce_all, vertices)))
            flat = [v for vertices in grid.values() for v in vertices]
            name = f"oracle:q{q}"
            cases.append(SuiteCase(name, partial(self._oracle, flat, name)))
            name = f"adjacency:q{q}"
            cases.append(SuiteCase(name, partial(self._adjacency, flat, name)))
        return cases

    @staticmethod
    def _reduce_all(vertices: List[TreeVertex]) -> List[str]:
        failures = []
        for v in vertices:
            try:
                witness = tree_service.reduce_vertex(v)
            except DrinfeldToolkitError as err:
                failures.append(f"{v}: {type(err).__name__}: {err}")
                continue
            error = case_formula_error(v, witness)
            if error:
                failures.append(f"{v}: {error}")
        return failures

    def _oracle(self, vertices: List[TreeVertex], name: str) -> List[str]:
        """La búsqueda acotada en GL₂(A) coincide con k' cuando concluye"""
        rng = self.rng(name)
        failures = []
        for v in rng.sample(vertices, min(self.oracle_samples, len(vertices))):
            found = tree_service.brute_force_spine_index(v)
            if found is not None and found != tree_service.reduce_vertex(v).k_prime:
                failures.append(f"{v}: oráculo v_{found}, reducción v_{tree_service.reduce_vertex(v).k_prime}")
        return failures

    def _adjacency(self, vertices: List[TreeVertex], name: str) -> List[str]:
        """q + 1 vecinos, relación simétrica"""
        rng = self.rng(name)
        failures = []
        for v in rng.sample(vertices, min(self.adjacency_samples, len(vertices))):
            neighbours = tree_service.adjacency(v)
            if len(set(map(str, neighbours))) != v.field.order + 1:
                failures.append(f"{v}: {len(neighbours)} vecinos")
            for w in neighbours:
                if str(v) not in map(str, tree_service.adjacency(w)):
                    failures.append(f"{v} no es vecino de su vecino {w}")
        return failures
