# app/modules/drinfeld/services/drinfeld_service.py - φ_a, torsión, submódulos cíclicos e isogenias
"""
La torsión φ[N] es el núcleo de la aplicación 𝔽_q-lineal x ↦ φ_N(x) sobre un campo L2 ⊇ L
en el que φ_N(x) escinde; L2 es la extensión canónica mínima con x^{|L|^k} ≡ x mod φ_N(x).
"""
import logging
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from app.config.settings import settings
from app.core import dense
from app.core.exceptions import (CharDividesN, InvariantViolation, NonLinearizedKernel, NonzeroRemainder,
                                 SizeCapExceeded, TorsionNotEtale)
from app.core.fields import FiniteField, embed, extension_field
from app.core.linalg import SpanDecomposer, kernel, span_elements
from app.core.polynomials import PolyA, all_polys_below, factor_monic, gcd, monic_divisors
from app.modules.drinfeld.models.module import AFieldFinite, CyclicSubmodule, DrinfeldMod2, HeckeImages, TorsionData
from app.modules.drinfeld.models.skew import SkewPoly

logger = logging.getLogger(__name__)


# ===== ACCIÓN DE A =====

def skew_mul(a: SkewPoly, b: SkewPoly) -> SkewPoly:
    return a * b


def skew_right_divmod(a: SkewPoly, b: SkewPoly) -> Tuple[SkewPoly, SkewPoly]:
    return a.right_divmod(b)


def phi_action(phi: DrinfeldMod2, a: PolyA) -> SkewPoly:
    """φ_a = Σ a_i φ_t^i por Horner en L{τ}"""
    L = phi.L
    phi_t = phi.phi_t()
    acc = SkewPoly.zero(L)
    for c in reversed(a.coeffs):
        acc = acc * phi_t + SkewPoly.constant(L, c)
    return acc


def carlitz_action(base: AFieldFinite, a: PolyA) -> SkewPoly:
    """Módulo de Carlitz C_t = θ + τ"""
    L = base.L
    c_t = SkewPoly(L, [base.theta, 1])
    acc = SkewPoly.zero(L)
    for c in reversed(a.coeffs):
        acc = acc * c_t + SkewPoly.constant(L, c)
    return acc


def apply_phi(phi: DrinfeldMod2, a: PolyA, x: int) -> int:
    """φ_a(x) evaluando φ_t repetidamente (sin construir φ_a)"""
    L = phi.L
    phi_t = phi.phi_t()
    acc = 0
    for c in reversed(a.coeffs):
        acc = L.add(phi_t(acc), L.mul(c, x))
    return acc


# ===== j-INVARIANTE =====

def j_invariant(phi: DrinfeldMod2) -> int:
    """g^{q+1}/Δ"""
    L = phi.L
    q = L.ground.order
    return L.div(L.pow(phi.g, q + 1), phi.delta)


def module_from_j(j0: int, base: AFieldFinite) -> DrinfeldMod2:
    """(g, Δ) = (1, 1/j0), o (0, 1) si j0 = 0"""
    if j0 == 0:
        return DrinfeldMod2(base, 0, 1)
    return DrinfeldMod2(base, 1, base.L.inv(j0))


def twist(phi: DrinfeldMod2, c: int) -> DrinfeldMod2:
    """Módulo isomorfo c·φ·c^{−1}: (c^{q−1} g, c^{q²−1} Δ)"""
    L = phi.L
    q = L.ground.order
    return DrinfeldMod2(phi.base, L.mul(L.pow(c, q - 1), phi.g), L.mul(L.pow(c, q * q - 1), phi.delta))


# ===== TORSIÓN =====

def _require_etale(phi: DrinfeldMod2, N: PolyA) -> None:
    if gcd(phi.base.char_poly, N).degree != 0:
        raise TorsionNotEtale(f"la A-característica {phi.base.char_poly} divide a N = {N}")


def _linearized_dense(u: SkewPoly) -> List[int]:
    """Σ c_i τ^i → Σ c_i X^{q^i} como lista densa"""
    q = u.field.ground.order
    out = [0] * (q ** u.degree + 1) if not u.is_zero() else []
    for i, c in enumerate(u.coeffs):
        out[q ** i] = c
    return out


def torsion_field_degree(phi: DrinfeldMod2, N: PolyA) -> int:
    """Menor k con φ_N(x) | x^{|L|^k} − x"""
    _require_etale(phi, N)
    L = phi.L
    f = _linearized_dense(phi_action(phi, N))
    if len(f) <= 2:
        return 1
    x = [0, 1]
    h = x
    for k in range(1, settings.limits.MAX_TORSION_EXTENSION_DEGREE + 1):
        h = dense.powmod(L, h, L.order, f)
        if dense.normalize(h) == x:
            return k
    raise SizeCapExceeded(f"φ[{N}] no escinde en extensiones de grado ≤ {settings.limits.MAX_TORSION_EXTENSION_DEGREE}")


def torsion(phi: DrinfeldMod2, N: PolyA) -> TorsionData:
    """φ[N] como núcleo de φ_N sobre el campo de escisión canónico"""
    _require_etale(phi, N)
    L = phi.L
    q = L.ground.order
    k = torsion_field_degree(phi, N)
    L2 = extension_field(q, L.ground_dimension * k)
    embedding = embed(L, L2)
    phi2 = phi.base_change(embedding)
    phi_n = phi_action(phi2, N)
    dim = L2.ground_dimension
    columns = []
    for i in range(dim):
        e_i = L2.from_ground_coordinates([1 if j == i else 0 for j in range(dim)])
        columns.append(L2.ground_coordinates(phi_n(e_i)))
    basis_vectors = kernel(L2.ground, columns)
    if len(basis_vectors) != 2 * N.degree:
        raise InvariantViolation(f"dim φ[{N}] = {len(basis_vectors)} ≠ {2 * N.degree}")
    basis = [L2.from_ground_coordinates(v) for v in basis_vectors]
    points = sorted(L2.from_ground_coordinates(_combine(L2, basis_vectors, c))
                    for c in product(range(q), repeat=len(basis_vectors)))
    logger.info(f"🧮 φ[{N}] realizado en 𝔽_{{{q}^{dim}}} ({len(points)} puntos)")
    return TorsionData(module=phi2, N=N, embedding=embedding, basis=basis, points=points)


def _combine(L2: FiniteField, vectors: Sequence[Sequence[int]], coeffs: Sequence[int]) -> List[int]:
    F = L2.ground
    out = [0] * L2.ground_dimension
    for c, v in zip(coeffs, vectors):
        if c:
            out = [F.add(o, F.mul(c, x)) for o, x in zip(out, v)]
    return out


def has_exact_order(phi: DrinfeldMod2, N: PolyA, y: int) -> bool:
    """y ∈ φ[N] tiene orden N ⟺ φ_{N/P}(y) ≠ 0 para todo primo P | N"""
    if apply_phi(phi, N, y) != 0:
        return False
    return all(apply_phi(phi, N // P, y) != 0 for P, _ in factor_monic(N))


def submodule_span(phi: DrinfeldMod2, generators: Sequence[int], width: int) -> SpanDecomposer:
    """𝔽_q-span del A-submódulo generado: {φ_{t^i}(g)} para i < width"""
    L = phi.L
    phi_t = phi.phi_t()
    vectors = []
    for g in generators:
        x = g
        for _ in range(width):
            vectors.append(L.ground_coordinates(x))
            x = phi_t(x)
    return SpanDecomposer(L.ground, vectors)


def torsion_basis(phi: DrinfeldMod2, N: PolyA, data: Optional[TorsionData] = None) -> TorsionData:
    """(x, y): y el menor punto de orden exacto N; x el menor que completa un sistema de generadores"""
    data = data or torsion(phi, N)
    phi2 = data.module
    width = 2 * N.degree
    if N.degree == 0:
        data.x, data.y = 0, 0
        return data
    y = next(p for p in data.points if has_exact_order(phi2, N, p))
    for x in data.points:
        if submodule_span(phi2, [x, y], width).rank == width:
            data.x, data.y = x, y
            return data
    raise InvariantViolation(f"φ[{N}] no es libre de rango 2 sobre A/N")


# ===== SUBMÓDULOS CÍCLICOS =====

def cyclic_submodules(phi: DrinfeldMod2, N: PolyA, data: Optional[TorsionData] = None) -> List[CyclicSubmodule]:
    """Los ψ(N) submódulos C ≅ A/N, uno por cada (a, b, d) de C_N"""
    if N.degree == 0:
        return [CyclicSubmodule(a=N, b=PolyA.zero(N.field), d=N, points=(0,), generator=0)]
    if data is None or not data.y:
        data = torsion_basis(phi, N, data)
    phi2 = data.module
    L2 = phi2.L
    x, y = data.x, data.y
    modules: List[CyclicSubmodule] = []
    for a in monic_divisors(N):
        d = N // a
        e = gcd(a, d)
        for b in all_polys_below(N.field, d.degree):
            if gcd(b, e).degree != 0:
                continue
            generator = L2.add(apply_phi(phi2, a, x), apply_phi(phi2, b, y))
            second = apply_phi(phi2, d, y)
            span = submodule_span(phi2, [generator, second], N.degree + 1)
            if span.rank != N.degree:
                raise InvariantViolation(f"#C = q^{span.rank} ≠ |N| para ({a}, {b}, {d})")
            basis = [L2.from_ground_coordinates(r) for r in span.rows]
            points = tuple(sorted(L2.from_ground_coordinates(v)
                                  for v in span_elements(L2.ground, span.rows)))
            modules.append(CyclicSubmodule(a=a, b=b, d=d, points=points, generator=generator,
                                           span_basis=tuple(basis)))
    if len({m.point_set() for m in modules}) != len(modules):
        raise InvariantViolation("submódulos cíclicos repetidos")
    return modules


# ===== ISOGENIAS =====

def kernel_polynomial(field: FiniteField, points: Sequence[int]) -> SkewPoly:
    """∏_{c∈C}(X − c) reescrito como polinomio linealizado"""
    poly = [1]
    for c in points:
        poly = dense.mul(field, poly, [field.neg(c), 1])
    q = field.ground.order
    coeffs: Dict[int, int] = {}
    for i, c in enumerate(poly):
        if not c:
            continue
        n, e = i, 0
        while n > 1 and n % q == 0:
            n, e = n // q, e + 1
        if n != 1:
            raise NonLinearizedKernel(f"término X^{i} en el polinomio núcleo")
        coeffs[e] = c
    return SkewPoly(field, [coeffs.get(i, 0) for i in range(max(coeffs) + 1)])


def quotient_by(phi: DrinfeldMod2, C: CyclicSubmodule) -> Tuple[DrinfeldMod2, SkewPoly]:
    """(φ′, u) con u·φ_t = φ′_t·u y ker u = C"""
    L = phi.L
    u = kernel_polynomial(L, C.points)
    quotient, remainder = (u * phi.phi_t()).right_divmod(u)
    if not remainder.is_zero():
        raise NonzeroRemainder(f"u·φ_t no es divisible por u a la derecha para C = {C.label()}")
    if quotient.degree != 2 or quotient[0] != phi.base.theta:
        raise InvariantViolation(f"φ′_t = {quotient} no es un módulo de rango 2 sobre el mismo A-campo")
    return DrinfeldMod2(phi.base, quotient[1], quotient[2]), u


def kernel_is_exact(u: SkewPoly, C: CyclicSubmodule) -> bool:
    """u se anula exactamente en C (grado |C| y u(c) = 0 para todo c)"""
    q = u.field.ground.order
    return q ** u.degree == len(C.points) and u[0] != 0 and all(u(c) == 0 for c in C.points)


def hecke_j_invariants(phi: DrinfeldMod2, N: PolyA) -> HeckeImages:
    """j(φ/C) para cada submódulo cíclico C (en el campo de la torsión)"""
    if N.degree == 0:
        return HeckeImages(embed(phi.L, phi.L), [(cyclic_submodules(phi, N)[0], j_invariant(phi))])
    data = torsion_basis(phi, N)
    phi2 = data.module
    out = []
    for C in cyclic_submodules(phi, N, data):
        quotient, _ = quotient_by(phi2, C)
        out.append((C, j_invariant(quotient)))
    return HeckeImages(data.embedding, out)


def hecke_polynomial(phi: DrinfeldMod2, N: PolyA) -> List[int]:
    """∏_C (X − j(φ/C)) con coeficientes devueltos a L (lista densa, mónica)"""
    images = hecke_j_invariants(phi, N)
    L2 = images.field
    poly = [1]
    for j in images.j_values():
        poly = dense.mul(L2, poly, [L2.neg(j), 1])
    out = []
    for c in poly:
        pre = images.embedding.preimage(c)
        if pre is None:
            raise InvariantViolation(f"un coeficiente de ∏(X − j(φ/C)) no está en L (N = {N})")
        out.append(pre)
    return out


def frobenius_fixed(L: FiniteField, x: int, degree: int) -> bool:
    """x pertenece al subcampo 𝔽_{q^degree} de L"""
    return L.frobenius(x, degree) == x


def require_coprime(char_poly: PolyA, N: PolyA) -> None:
    if gcd(char_poly, N).degree != 0:
        raise CharDividesN(f"{char_poly} divide a N = {N}")
