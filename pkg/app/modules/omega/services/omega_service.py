# app/modules/omega/services/omega_service.py - |z|_i, acción de Möbius, reducción y retículos Λ_z
"""
Convenciones: todo logaritmo es log_q y se devuelve como Fraction.

    |γ(z)|_i = |det γ| / |cz + d|² · |z|_i

La reducción al dominio fundamental F = {|z| = |z|_i ≥ 1} alterna la traslación por la parte
entera cancelable con la inversión J = (0 1; 1 0). El retículo Λ_z = Az + A se describe con la
homotecia Λ_z = (cz + d)·Λ_{z̃}: su base de mínimos sucesivos es (cz + d, az + b).
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Dict, Optional

from app.config.settings import settings
from app.core.exceptions import (InvariantViolation, IterationCapExceeded, PrecisionInsufficient,
                                 SingularMatrix)
from app.core.fields import FiniteField
from app.core.matrices import Matrix2
from app.core.polynomials import PolyA, RatF, v_inf
from app.core.series import PuiseuxElement
from app.modules.omega.models.omega_point import OmegaPoint
from app.modules.omega.schemas.omega import LatticeProfileOut

logger = logging.getLogger(__name__)


def im_abs(z: OmegaPoint) -> Fraction:
    """log_q|z|_i = −(exponente del primer término no cancelable por F_∞)"""
    return z.im_abs


# ===== ACCIÓN DE GL₂(F) =====

def _to_series(x: RatF, field: FiniteField, precision: Fraction) -> PuiseuxElement:
    if x.is_polynomial():
        return PuiseuxElement.from_poly(x.num, field)
    return PuiseuxElement.from_ratf(x, field, precision)


def apply_gl2(gamma: Matrix2, z: OmegaPoint, target_precision: Optional[Fraction] = None) -> OmegaPoint:
    """γ(z) = (az + b)/(cz + d) con el inverso por serie geométrica"""
    det = gamma.det()
    if det.is_zero():
        raise SingularMatrix(f"det {gamma} = 0")
    L = z.field
    value = z.value
    slack = Fraction(settings.limits.OMEGA_EXTRA_PRECISION, value.e)
    conv = (value.precision_value if not value.is_exact() else value.max_exponent()) + abs(value.valuation()) + slack
    a, b, c, d = (_to_series(x, L, conv) for x in gamma.entries())
    den = c * value + d
    if den.is_zero():
        if den.is_exact():
            raise SingularMatrix("cz + d = 0")
        raise PrecisionInsufficient("cz + d no se distingue de cero con la precisión disponible")
    v_den = den.valuation()
    # exponente del testigo de γ(z) predicho por la fórmula de |·|_i
    predicted = v_inf(det) - 2 * v_den + z.witness_exponent
    target = Fraction(target_precision) if target_precision is not None else predicted + slack
    num = a * value + b
    if num.is_zero():
        raise PrecisionInsufficient("az + b no se distingue de cero con la precisión disponible")
    relative = target - num.valuation() + v_den
    result = num * den.inverse(relative)
    if not result.is_exact() or target_precision is not None:
        result = result.truncate(target)
    image = OmegaPoint.certify(result)
    if image.witness_exponent != predicted:
        raise InvariantViolation(
            f"|γ(z)|_i inconsistente: testigo {image.witness_exponent}, fórmula {predicted}")
    return image


def imtrans_holds(gamma: Matrix2, z: OmegaPoint) -> bool:
    """Comprueba log|γz|_i = log|det γ| − 2 log|cz+d| + log|z|_i sobre la imagen calculada"""
    image = apply_gl2(gamma, z)
    den = _to_series(gamma.c, z.field, Fraction(32)) * z.value + _to_series(gamma.d, z.field, Fraction(32))
    expected = -v_inf(gamma.det()) + 2 * den.valuation() + im_abs(z)
    return im_abs(image) == expected


# ===== REDUCCIÓN AL DOMINIO FUNDAMENTAL =====

def integral_part(z: OmegaPoint) -> PolyA:
    """a ∈ A voraz: cancela términos de exponente entero ≤ 0 con coeficiente en 𝔽_q hasta el primer obstáculo"""
    ground = z.field.ground
    coeffs: Dict[int, int] = {}
    for j, c in z.value.terms:
        if j > 0 or not z.value.is_finf_term(j, c):
            break
        coeffs[-(j // z.value.e)] = c
    if not coeffs:
        return PolyA.zero(ground)
    return PolyA(ground, [coeffs.get(i, 0) for i in range(max(coeffs) + 1)])


def translate(z: OmegaPoint, x: PolyA) -> OmegaPoint:
    """z + x con x ∈ A (exacto)"""
    return OmegaPoint.certify(z.value + PuiseuxElement.from_poly(x, z.field))


def _iteration_budget(z: OmegaPoint) -> int:
    spread = abs(z.witness_exponent) + abs(z.value.valuation()) + 2
    return settings.limits.REDUCTION_ITERATION_FACTOR * ceil(spread)


@dataclass(frozen=True)
class Reduction:
    z: OmegaPoint
    reduced: OmegaPoint
    gamma: Matrix2
    steps: int


def reduce_to_fundamental(z: OmegaPoint) -> Reduction:
    """(z̃, γ) con γ ∈ Γ, z̃ = γ(z) y |z̃| = |z̃|_i ≥ 1"""
    ground = z.field.ground
    gamma = Matrix2.identity(ground)
    current = z
    budget = _iteration_budget(z)
    for step in range(budget):
        a = integral_part(current)
        if not a.is_zero():
            current = translate(current, -a)
            gamma = Matrix2.translation(ground, -a) @ gamma
        if current.in_fundamental_domain():
            if not gamma.is_gamma():
                raise InvariantViolation(f"la matriz de reducción {gamma} no está en GL₂(A)")
            return Reduction(z=z, reduced=current, gamma=gamma, steps=step)
        current = apply_gl2(Matrix2.swap(ground), current)
        gamma = Matrix2.swap(ground) @ gamma
    raise IterationCapExceeded(f"la reducción de {z} no terminó en {budget} iteraciones")


# ===== RETÍCULOS =====

def lattice_profile(z: OmegaPoint) -> LatticeProfileOut:
    """Mínimos sucesivos de Λ_z = Az + A vía la homotecia con Λ_{z̃}"""
    reduction = reduce_to_fundamental(z)
    a, b, c, d = reduction.gamma.polys()
    L = z.field
    first = PuiseuxElement.from_poly(c, L) * z.value + PuiseuxElement.from_poly(d, L)
    second = PuiseuxElement.from_poly(a, L) * z.value + PuiseuxElement.from_poly(b, L)
    min1 = first.log_abs()
    min2 = min1 + reduction.reduced.abs_log
    covolume = min1 + min2
    reduced = min1 == 0 and min2 >= 0
    if covolume != im_abs(z):
        raise InvariantViolation(f"covolumen {covolume} ≠ log|z|_i {im_abs(z)}")
    if reduced != (im_abs(z) >= 0):
        raise InvariantViolation("el criterio de retículo reducido no coincide con |z|_i ≥ 1")
    return LatticeProfileOut(
        z=str(z),
        min1=min1,
        min2=min2,
        covolume_log=covolume,
        im_abs=im_abs(z),
        reduced=reduced,
        witness_basis=[first.to_string(), second.to_string()],
    )


def reduced_lattice_predicates(z: OmegaPoint) -> Dict[str, bool]:
    """Las cinco condiciones equivalentes de retículo reducido"""
    ground = z.field.ground
    translated = translate(z, -integral_part(z))
    same_lattice = False
    for c in range(1, ground.order):
        scaled = OmegaPoint.certify(z.value.scale(c))
        if translate(scaled, -integral_part(scaled)).in_fundamental_domain():
            same_lattice = True
            break
    reduction = reduce_to_fundamental(z)
    return {
        "lattice_reduced": lattice_profile(z).reduced,
        "im_at_least_one": im_abs(z) >= 0,
        "translate_in_fundamental": translated.in_fundamental_domain(),
        "same_lattice_in_fundamental": same_lattice,
        "representative_preserves_im": im_abs(reduction.reduced) == im_abs(z),
    }


def reduction_summary(z: OmegaPoint, with_profile: bool = False) -> dict:
    reduction = reduce_to_fundamental(z)
    logger.debug(f"🧮 {z} reducido en {reduction.steps} pasos")
    return {
        "z": str(z),
        "im_abs": im_abs(z),
        "z_reduced": str(reduction.reduced),
        "abs_reduced": reduction.reduced.abs_log,
        "im_abs_reduced": im_abs(reduction.reduced),
        "gamma": reduction.gamma.to_dict(),
        "profile": lattice_profile(z) if with_profile else None,
    }
