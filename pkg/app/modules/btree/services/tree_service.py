# app/modules/btree/services/tree_service.py - Adyacencia, reducción de vértices y aplicación al edificio
"""
Los vértices del árbol son las clases GL₂(F_∞)/F_∞^*·GL₂(𝒪_∞); Γ = GL₂(A) actúa por la izquierda.
Todo vértice es Γ-equivalente a exactamente un v_k = v(k, 0) con k ≤ 0; reduce_vertex produce
el testigo γ explícito según la forma de u = u₀ + Σ_{i≤r} a_i π^i.
"""
import logging
from itertools import product
from typing import Iterator, List, Optional

from app.core.exceptions import InvariantViolation, SingularMatrix
from app.core.fields import FiniteField
from app.core.matrices import Matrix2
from app.core.polynomials import PolyA, RatF, all_polys_below, v_inf
from app.core.series import TailElement
from app.modules.btree.models.tree import BuildingImage, GammaWitness, TreeEdge, TreeVertex, pi_power
from app.modules.omega.models.omega_point import OmegaPoint

logger = logging.getLogger(__name__)


# ===== ESTRUCTURA LOCAL =====

def adjacency(v: TreeVertex) -> List[TreeVertex]:
    """Los q vértices (k+1, u + ξπ^k) y el vértice (k−1, u mod π^{k−1})"""
    ground = v.field.ground
    up = [TreeVertex.of(v.k + 1, v.u.add_monomial(v.k, xi)) for xi in range(ground.order)]
    return up + [TreeVertex.of(v.k - 1, v.u)]


def vertex_matrix(v: TreeVertex) -> Matrix2:
    return v.matrix()


def vertex_equivalent(g1: Matrix2, g2: Matrix2, gamma: Matrix2) -> bool:
    """g2^{−1}·γ·g1 ∈ F_∞^*·GL₂(𝒪_∞)  ⟺  v(det) = 2·min v(entradas)"""
    if g1.det().is_zero() or g2.det().is_zero() or gamma.det().is_zero():
        raise SingularMatrix("las matrices deben ser invertibles")
    m = g2.inverse() @ gamma @ g1
    return v_inf(m.det()) == 2 * m.min_valuation()


def canonical_vertex(g: Matrix2) -> TreeVertex:
    """Forma de Iwasawa: g ~ (π^k u; 0 1) por operaciones de columna en GL₂(𝒪_∞)"""
    det = g.det()
    if det.is_zero():
        raise SingularMatrix(f"{g} es singular")
    b, c, d = g.b, g.c, g.d
    if not c.is_zero() and (d.is_zero() or v_inf(c) < v_inf(d)):
        b, d = g.a, c
    k = v_inf(det / (d * d))
    return TreeVertex.of(k, TailElement.from_ratf(b / d, k))


def act(gamma: Matrix2, v: TreeVertex) -> TreeVertex:
    return canonical_vertex(gamma @ v.matrix())


# ===== REDUCCIÓN AL ESPINAZO =====

def _tail_poly(tail: TailElement) -> RatF:
    return tail.tail_only().to_ratf()


def _case3_matrix(v: TreeVertex) -> Matrix2:
    """
    (t^r, −t^r u; c, d − c u₀) con c mónico de grado r y c·u₁ + d = π^r.
    c se obtiene por sustitución hacia atrás a partir de c₀ a_r = 1.
    """
    F = v.field.ground
    a = v.u.tail
    r = v.u.r
    a_r = a[r - 1]
    inv = F.inv(a_r)
    c = [inv]
    for m in range(1, r):
        acc = 0
        for j in range(m):
            acc = F.add(acc, F.mul(c[j], a[r - m + j - 1]))
        c.append(F.neg(F.mul(acc, inv)))
    c.append(1)
    c_poly = PolyA(F, c)
    u1 = _tail_poly(v.u)
    product_ = RatF(c_poly) * u1
    d_poly = -(product_.num // product_.den)
    if RatF(c_poly) * u1 + RatF(d_poly) != pi_power(F, r):
        raise InvariantViolation(f"c·u₁ + d ≠ π^{r} para {v}")
    t_r = PolyA.monomial(F, r)
    u_ratf = v.u.to_ratf()
    top_right = -(RatF(t_r) * u_ratf)
    if not top_right.is_polynomial():
        raise InvariantViolation("t^r·u no es polinómico")
    u0 = v.u.poly_part
    return Matrix2.of(F, t_r, top_right.num, c_poly, d_poly - c_poly * u0)


def _reduce(v: TreeVertex) -> GammaWitness:
    F = v.field.ground
    J = Matrix2.swap(F)
    k, u = v.k, v.u
    if u.is_zero():
        gamma = J if k > 0 else Matrix2.identity(F)
        return GammaWitness(vertex=v, gamma=gamma, k_prime=-abs(k), case=1)
    if not u.tail:
        # u = u₀ ∈ A: δ = (u₀ 1; 1 0)
        gamma = Matrix2.of(F, 0, 1, 1, -u.poly_part)
        if k < 0:
            gamma = J @ gamma
        return GammaWitness(vertex=v, gamma=gamma, k_prime=-abs(k), case=2)
    r = u.r
    step = _case3_matrix(v)
    if k >= 2 * r:
        gamma = J @ step if k - 2 * r > 0 else step
        return GammaWitness(vertex=v, gamma=gamma, k_prime=2 * r - k, case=3)
    # k < 2r: el paso lleva v a v(2r − k, t^r/c mod π^{2r−k}) y se recurre
    nxt = act(step, v)
    if nxt.k != 2 * r - k:
        raise InvariantViolation(f"paso del caso 4 desde {v} llegó a {nxt}")
    inner = _reduce(nxt)
    if inner.k_prime < k - 2 * r:
        raise InvariantViolation(f"k' = {inner.k_prime} < k − 2r = {k - 2 * r}")
    return GammaWitness(vertex=v, gamma=inner.gamma @ step, k_prime=inner.k_prime, case=4)


def reduce_vertex(v: TreeVertex) -> GammaWitness:
    """(γ, k') con γ·v ~ v_{k'} y k' ≤ 0; el testigo se verifica siempre"""
    witness = _reduce(v)
    spine = TreeVertex.spine(v.field, witness.k_prime).matrix()
    if not witness.gamma.is_gamma():
        raise InvariantViolation(f"γ = {witness.gamma} no está en GL₂(A)")
    if witness.k_prime > 0 or not vertex_equivalent(v.matrix(), spine, witness.gamma):
        raise InvariantViolation(f"el testigo de {v} no lleva a v_{witness.k_prime}")
    logger.debug(f"🧮 {v} → v_{witness.k_prime} (caso {witness.case})")
    return GammaWitness(vertex=v, gamma=witness.gamma, k_prime=witness.k_prime, case=witness.case, verified=True)


def path_to_spine(v: TreeVertex) -> List[TreeVertex]:
    """Camino descendente desde v hasta el primer v_j = v(j, 0) con j ≤ 0"""
    path = [v]
    current = v
    while not current.is_spine():
        current = TreeVertex.of(current.k - 1, current.u)
        path.append(current)
    return path


# ===== ORÁCULO DE FUERZA BRUTA =====

def gamma_matrices(field: FiniteField, max_degree: int) -> Iterator[Matrix2]:
    """Matrices de GL₂(A) con entradas de grado ≤ max_degree"""
    F = field.ground
    polys = list(all_polys_below(F, max_degree + 1))
    for a, b, c, d in product(polys, repeat=4):
        det = a * d - b * c
        if det.degree == 0:
            yield Matrix2.of(F, a, b, c, d)


def brute_force_spine_index(v: TreeVertex, max_degree: Optional[int] = None) -> Optional[int]:
    """Primer j ≤ 0 con γ·v = v_j para algún γ acotado; None si la búsqueda no concluye"""
    F = v.field.ground
    if max_degree is None:
        max_degree = 2 if F.order == 2 else 1
    for gamma in gamma_matrices(F, max_degree):
        image = act(gamma, v)
        if image.is_spine():
            return image.k
    return None


# ===== APLICACIÓN AL EDIFICIO =====

def building_map(z: OmegaPoint) -> BuildingImage:
    """
    k = −log_q|z|_i y u = x* mod π^k con x* la aproximación en F_∞; si log_q|z|_i no es
    entero se devuelve la arista entre ⌊·⌋ y ⌈·⌉.
    """
    j0 = z.witness_exponent
    ground = z.field.ground
    approx = TailElement.from_puiseux(z.approximant(), ground)
    if j0.denominator == 1:
        return BuildingImage(vertex=TreeVertex.of(int(j0), approx))
    low, high = j0.numerator // j0.denominator, -((-j0.numerator) // j0.denominator)
    edge = TreeEdge(TreeVertex.of(low, approx), TreeVertex.of(high, approx))
    if not (-high <= z.im_abs <= -high + 1):
        raise InvariantViolation(f"log|z|_i = {z.im_abs} fuera del intervalo de la arista")
    return BuildingImage(edge=edge)
