# app/modules/farey/services/farey_service.py - Sucesión de Farey F_M, partición de la bola unidad y ẑ_γ
"""
La bola abierta unidad de F_∞ es la unión disjunta de las bolas D_M(h/f), h/f ∈ F_M.
La bola que contiene a ζ se localiza con el último convergente de la fracción continua de ζ
cuyo denominador tiene grado ≤ M.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Iterable, List, Union

from app.core.exceptions import InvariantViolation, NotInUnitBall, PreconditionViolated, SmallD
from app.core.fields import FiniteField
from app.core.matrices import Matrix2
from app.core.polynomials import PolyA, RatF, all_polys_below, gcd, monic_polys, v_inf, xgcd
from app.core.series import TailElement
from app.modules.arith.models.cn_matrix import CNMatrix
from app.modules.arith.services.arith_service import euler_phi
from app.modules.farey.models.farey import FareyBall, FareyFraction
from app.modules.farey.schemas.farey import PartitionReport
from app.modules.omega.models.omega_point import OmegaPoint
from app.modules.omega.services.omega_service import apply_gl2, im_abs

logger = logging.getLogger(__name__)

Zeta = Union[RatF, TailElement, PolyA]


# ===== ENUMERACIÓN =====

def enumerate_fm(field: FiniteField, M: int) -> List[FareyFraction]:
    """F_M en orden (deg f, f, h)"""
    if M < 1:
        raise PreconditionViolated(f"M = {M} debe ser ≥ 1")
    field = field.ground
    fractions = [FareyFraction(PolyA.zero(field), PolyA.one(field))]
    for degree in range(1, M + 1):
        for f in monic_polys(field, degree):
            for h in all_polys_below(field, degree):
                if not h.is_zero() and gcd(h, f).degree == 0:
                    fractions.append(FareyFraction(h, f))
    return fractions


# ===== LOCALIZACIÓN =====

def _as_ratf(zeta: Zeta) -> RatF:
    if isinstance(zeta, TailElement):
        return zeta.to_ratf()
    return RatF.of(zeta)


def is_in_ball(zeta: Zeta, ball: FareyBall) -> bool:
    return ball.contains(_as_ratf(zeta))


def convergents(zeta: RatF) -> Iterable[tuple]:
    """Convergentes p_n/q_n de ζ (con 0 como primero cuando |ζ| < 1)"""
    num, den = zeta.num, zeta.den
    a0, rem = divmod(num, den)
    p_prev, p = PolyA.one(num.field), a0
    q_prev, q = PolyA.zero(num.field), PolyA.one(num.field)
    yield p, q
    r0, r1 = den, rem
    while not r1.is_zero():
        a, rest = divmod(r0, r1)
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        yield p, q
        r0, r1 = r1, rest


def locate_ball(zeta: Zeta, M: int) -> FareyFraction:
    """El único h/f ∈ F_M con ζ ∈ D_M(h/f)"""
    zeta = _as_ratf(zeta)
    if M < 1:
        raise PreconditionViolated(f"M = {M} debe ser ≥ 1")
    ground = zeta.field
    if zeta.is_zero():
        return FareyFraction(PolyA.zero(ground), PolyA.one(ground))
    if v_inf(zeta) < 1:
        raise NotInUnitBall(f"|{zeta}| ≥ 1")
    best = None
    for p, q in convergents(zeta):
        if q.degree > M:
            break
        best = (p, q)
    p, q = best
    inv = ground.inv(q.lead)
    center = FareyFraction(p.scale(inv), q.scale(inv)) if not p.is_zero() else FareyFraction(p, PolyA.one(ground))
    if not FareyBall(center, M).contains(zeta):
        raise InvariantViolation(f"{zeta} no está en D_{M}({center})")
    return center


# ===== LEMA DE CONTEO =====

def count_exponent(d: PolyA, e: PolyA, M: int, center: FareyFraction) -> int:
    return d.degree - e.degree - center.f.degree - M


def count_in_ball(d: PolyA, e: PolyA, r: PolyA, M: int, center: FareyFraction,
                  check: bool = False, coprime: bool = False) -> int:
    """
    #{b : deg b < deg d, b ≡ r (mod e), b/d ∈ D_M(h/f)} = |d| / (|e||f|q^M).
    Con coprime=True cuenta los b con gcd(b, e) = 1 y el valor se multiplica por φ(e).
    """
    if center.f.degree > M:
        raise PreconditionViolated(f"deg f = {center.f.degree} > M = {M}")
    exponent = count_exponent(d, e, M, center)
    if exponent < 0:
        raise PreconditionViolated(f"|d|/(|e||f|q^M) = q^{exponent} < 1")
    q = d.field.order
    value = q ** exponent * (euler_phi(e) if coprime else 1)
    if check:
        ball = FareyBall(center, M)
        if coprime:
            found = sum(1 for b in all_polys_below(d.field, d.degree)
                        if gcd(b, e).degree == 0 and ball.contains(RatF(b, d)))
        else:
            found = sum(1 for b in all_polys_below(d.field, d.degree)
                        if ((b - r) % e).is_zero() and ball.contains(RatF(b, d)))
        if found != value:
            raise InvariantViolation(f"conteo en D_{M}({center}): fórmula {value}, enumeración {found}")
    return value


# ===== PARTICIÓN =====

def balls_disjoint(fractions: List[FareyFraction], M: int) -> List[str]:
    """En F_∞ dos bolas son disjuntas o anidadas: basta ver que ningún centro cae en otra bola"""
    failures = []
    balls = [FareyBall(c, M) for c in fractions]
    for i, ball in enumerate(balls):
        for j, other in enumerate(balls):
            if i != j and ball.contains(other.center.to_ratf()):
                failures.append(f"{other.center} ∈ D_{M}({ball.center})")
    return failures


def verify_partition(field: FiniteField, M: int, depth: int) -> PartitionReport:
    """Toda b/d con deg b < deg d ≤ depth cae exactamente en una bola"""
    field = field.ground
    fractions = enumerate_fm(field, M)
    failures = balls_disjoint(fractions, M)
    checked = 0
    for degree in range(1, depth + 1):
        for d in monic_polys(field, degree):
            for b in all_polys_below(field, degree):
                zeta = RatF(b, d)
                center = locate_ball(zeta, M)
                if center not in fractions:
                    failures.append(f"{b}/{d} → {center} ∉ F_{M}")
                checked += 1
    logger.info(f"📊 Partición F_{M}: {checked} fracciones, {len(failures)} fallos")
    return PartitionReport(depth=depth, fractions_checked=checked, balls=len(fractions), failures=failures)


# ===== REPRESENTANTE DE FAREY =====

@dataclass(frozen=True)
class FareyRepresentative:
    z_hat: OmegaPoint
    delta: Matrix2
    M: int
    center: FareyFraction
    upper_bound: Fraction


def farey_representative(z: OmegaPoint, gamma: CNMatrix) -> FareyRepresentative:
    """
    ẑ_γ = δ(γ(z)) con M = ⌈deg d − (deg N + log|z|_i)/2⌉, h/f la bola de b/d y
    δ = (α β; f −h) completada con xgcd(h, f).
    """
    if not z.in_fundamental_domain():
        raise PreconditionViolated(f"{z} no está en el dominio fundamental")
    a, b, d = gamma.a, gamma.b, gamma.d
    N = gamma.N
    y = im_abs(z)
    if 2 * d.degree <= N.degree + y:
        raise SmallD(f"|d| = q^{d.degree} ≤ √(|N||z|_i) = q^{Fraction(N.degree + y, 2)}")
    M = ceil(d.degree - Fraction(N.degree + y, 2))
    center = locate_ball(RatF(b, d), M)
    h, f = center.h, center.f
    _, s, t = xgcd(h, f)
    ground = f.field
    delta = Matrix2.of(ground, -s, -t, f, -h)
    if not delta.is_gamma():
        raise InvariantViolation(f"δ = {delta} no está en GL₂(A)")
    z_hat = apply_gl2(delta @ Matrix2.of(ground, a, b, 0, d), z)
    bound = 2 * d.degree - N.degree - y - 2 * f.degree
    value = im_abs(z_hat)
    if value < -2:
        raise InvariantViolation(f"log|ẑ|_i = {value} < −2")
    if value > bound:
        raise InvariantViolation(f"log|ẑ|_i = {value} > {bound}")
    return FareyRepresentative(z_hat=z_hat, delta=delta, M=M, center=center, upper_bound=bound)
