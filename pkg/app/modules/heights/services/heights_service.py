# app/modules/heights/services/heights_service.py - Alturas de Weil, normas de Gauss y sumas de Hecke
"""
Convenciones (unidades log_q):

    h(x)            = Σ_v deg(v) · max(0, −ord_v x)
    ‖p‖_v           = −min_i ord_v(c_i)            (p mónico en X, por tanto ≥ 0)
    Σ_C h(j(φ/C))   = Σ_v deg(v) · ‖Φ_N(X, j0)‖_v  (lema de Gauss en cada lugar)
"""
import logging
import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from app.core import dense
from app.core.exceptions import InvariantViolation, PreconditionViolated, ZeroPolynomial
from app.core.fields import FiniteField
from app.core.matrices import Matrix2
from app.core.polynomials import PolyA, RatF, factor_monic, monic_irreducibles
from app.modules.arith.models.cn_matrix import CNMatrix
from app.modules.arith.services import arith_service
from app.modules.heights.models.place import PlaceF
from app.modules.heights.schemas.heights import LocalIdentityOut, MahlerCheckOut, NaturalLogReadingOut, HeckeGapBandOut
from app.modules.modpoly.models.bivariate import BivarPolyA
from app.modules.omega.models.omega_point import OmegaPoint
from app.modules.omega.services import omega_service

logger = logging.getLogger(__name__)


# ===== LUGARES Y ALTURA DE WEIL =====

def _prime_factors(f: PolyA) -> List[PolyA]:
    if f.degree < 1:
        return []
    return [P for P, _ in factor_monic(f.monic())]


def places_of(x: RatF) -> List[PlaceF]:
    """∞ y los primos que dividen a num o den, en orden (grado, código)"""
    x = RatF.of(x)
    field = x.field
    primes = {P for P in _prime_factors(x.num) + _prime_factors(x.den)} if not x.is_zero() else set()
    finite = [PlaceF.finite(P) for P in sorted(primes, key=PolyA.sort_key)]
    return finite + [PlaceF.infinity(field)]


def weil_height_by_places(x: RatF) -> Fraction:
    x = RatF.of(x)
    return Fraction(sum(v.degree * v.log_plus(x) for v in places_of(x)))


def weil_height(x: RatF) -> Fraction:
    """max(deg num, deg den), contrastada con la suma lugar a lugar"""
    x = RatF.of(x)
    direct = Fraction(0) if x.is_zero() else Fraction(max(x.num.degree, x.den.degree))
    by_places = weil_height_by_places(x)
    if direct != by_places:
        raise InvariantViolation(f"h({x}) = {direct} ≠ {by_places} por lugares")
    return direct


def product_formula_holds(x: RatF) -> bool:
    """Σ_v deg(v)·ord_v(x) = 0 para x ≠ 0"""
    return sum(v.degree * v.ord(x) for v in places_of(x)) == 0


# ===== NORMAS DE GAUSS =====

def gauss_lognorm(p: Sequence[RatF], v: PlaceF) -> int:
    """−min_i ord_v(c_i) para p = Σ c_i X^i mónico"""
    coeffs = [RatF.of(c) for c in p]
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if not coeffs:
        raise ZeroPolynomial("norma de Gauss del polinomio cero")
    if coeffs[-1] != RatF(PolyA.one(v.field)):
        raise PreconditionViolated("la norma de Gauss se toma sobre polinomios mónicos en X")
    return max(v.log_plus(c) for c in coeffs)


def specialize_at(phi: BivarPolyA, j0: RatF) -> List[RatF]:
    """Coeficientes de Φ_N(X, j0) ∈ F[X]"""
    j0 = RatF.of(j0)
    powers = [RatF(PolyA.one(phi.field))]
    for _ in range(phi.degree_y):
        powers.append(powers[-1] * j0)
    out = [RatF(PolyA.zero(phi.field)) for _ in range(phi.degree_x + 1)]
    for (i, j), c in phi.coeffs.items():
        out[i] = out[i] + powers[j] * c
    return out


def hecke_places(j0: RatF) -> List[PlaceF]:
    """Lugares donde Φ_N(X, j0) puede tener norma positiva: primos de den(j0) y ∞"""
    j0 = RatF.of(j0)
    finite = [PlaceF.finite(P) for P in sorted(_prime_factors(j0.den), key=PolyA.sort_key)]
    return finite + [PlaceF.infinity(j0.field)]


def hecke_local_terms(j0: RatF, phi: BivarPolyA) -> List[Tuple[PlaceF, int]]:
    coeffs = specialize_at(phi, j0)
    return [(v, gauss_lognorm(coeffs, v)) for v in hecke_places(j0)]


def hecke_height_sum(N: PolyA, j0: RatF, phi: BivarPolyA) -> Fraction:
    """Σ_C h(j(φ/C)) = Σ_v deg(v)·‖Φ_N(X, j0)‖_v"""
    if phi.N != N:
        raise PreconditionViolated(f"Φ corresponde a N = {phi.N}, no a {N}")
    return Fraction(sum(v.degree * g for v, g in hecke_local_terms(j0, phi)))


def check_local_identity(N: PolyA, j0: RatF, phi: BivarPolyA, v: PlaceF) -> LocalIdentityOut:
    """log⁺|j0|_v = (1/ψ(N))·‖Φ_N(X, j0)‖_v en un lugar finito"""
    if v.is_infinite:
        raise PreconditionViolated("la identidad local se comprueba en lugares finitos")
    lhs = Fraction(v.log_plus(j0))
    rhs = Fraction(gauss_lognorm(specialize_at(phi, j0), v), arith_service.psi(N))
    return LocalIdentityOut(place=v.label(), lhs=lhs, rhs=rhs, passed=lhs == rhs)


def local_identity_places(N: PolyA, j0: RatF, extra_degree: int = 2) -> List[PlaceF]:
    """Primos de num(j0), den(j0) y N, más todos los primos de grado ≤ extra_degree"""
    j0 = RatF.of(j0)
    primes = set(_prime_factors(j0.den)) | set(_prime_factors(N))
    if not j0.is_zero():
        primes |= set(_prime_factors(j0.num))
    for d in range(1, extra_degree + 1):
        primes |= set(monic_irreducibles(N.field, d))
    return [PlaceF.finite(P) for P in sorted(primes, key=PolyA.sort_key)]


# ===== BANDA DEL TEOREMA DE HECKE =====

def log_q_at_least(x: Fraction, q: int, e: Fraction) -> bool:
    """log_q x ≥ e para x > 0, decidido con potencias enteras: x^s ≥ q^r si e = r/s"""
    e = Fraction(e)
    return Fraction(x) ** e.denominator >= Fraction(q) ** e.numerator


def log_q_interval(x: Fraction, q: int, denominator: int = 1024) -> Tuple[Fraction, Fraction]:
    """[k/s, (k+1)/s] ∋ log_q x con k exacto"""
    k = math.floor(math.log(x) / math.log(q) * denominator)
    while not log_q_at_least(x, q, Fraction(k, denominator)):
        k -= 1
    while log_q_at_least(x, q, Fraction(k + 1, denominator)):
        k += 1
    return Fraction(k, denominator), Fraction(k + 1, denominator)


def _ln_interval(x: Fraction) -> Tuple[Fraction, Fraction]:
    value = Fraction(math.log(x))
    slack = Fraction(1, 2 ** 30)
    return value - slack, value + slack


def hecke_gap_band(N: PolyA, j0: RatF, phi: BivarPolyA) -> HeckeGapBandOut:
    """gap = h(j0) − (1/ψ)Σ_C h(j(φ/C)) frente a la banda; log en base q, lectura natural si falla"""
    q = N.field.order
    n = arith_service.psi(N)
    c = Fraction(q * q - 1, 2)
    A = 2 * arith_service.lambda_N(N) - N.degree
    h = weil_height(j0)
    gap = h - hecke_height_sum(N, j0, phi) / n
    lower = c * (A - arith_service.bq_upper(q))
    x = h / q + 1

    active = not log_q_at_least(x, q, -A)
    if active:
        lo, hi = log_q_interval(x, q)
        upper_interval = [q + c * (A + lo), q + c * (A + hi)]
        upper_ok = log_q_at_least(x, q, (gap - q) / c - A)
    else:
        upper_interval = [Fraction(q), Fraction(q)]
        upper_ok = gap <= q
    passed = lower <= gap and upper_ok

    natural = None
    if not passed:
        lo, hi = _ln_interval(x)
        bounds = [q + c * min(Fraction(0), A + lo), q + c * min(Fraction(0), A + hi)]
        verdict: Optional[bool] = None
        if lower <= gap <= bounds[0]:
            verdict = True
        elif gap < lower or gap > bounds[1]:
            verdict = False
        natural = NaturalLogReadingOut(upper_interval=bounds, passed=verdict)
        logger.warning(f"⚠️ Banda en base q no se cumple para j0 = {j0}; lectura natural: {verdict}")
    return HeckeGapBandOut(gap=gap, lower=lower, upper_interval=upper_interval, min_branch_active=active,
                       passed=passed, natural_log_reading=natural)


# ===== POLÍGONO DE NEWTON =====

def newton_polygon_root_sizes(ords: Sequence[Optional[int]]) -> List[Tuple[Optional[Fraction], int]]:
    """(valoración de la raíz, multiplicidad) desde la envolvente inferior de (i, ord c_i); None = raíz 0"""
    points = [(i, o) for i, o in enumerate(ords) if o is not None]
    if not points:
        raise ZeroPolynomial("polígono de Newton del polinomio cero")
    out: List[Tuple[Optional[Fraction], int]] = []
    if points[0][0] > 0:
        out.append((None, points[0][0]))
    hull: List[Tuple[int, int]] = []
    for p in points:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            if (x1 - x0) * (p[1] - y0) - (y1 - y0) * (p[0] - x0) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        out.append((-Fraction(y1 - y0, x1 - x0), x1 - x0))
    return out


def mahler_log(ords: Sequence[Optional[int]]) -> Fraction:
    """Σ log⁺|raíces| leído del polígono de Newton"""
    return sum((m * max(Fraction(0), -val) for val, m in newton_polygon_root_sizes(ords) if val is not None),
               Fraction(0))


def specialized_degrees(phi: BivarPolyA, F: FiniteField, y: int) -> List[Optional[int]]:
    """deg_t del coeficiente de X^i en Φ(X, y), None si se anula"""
    out: List[Optional[int]] = []
    for i in range(phi.degree_x + 1):
        column = [phi.coefficient(i, j) for j in range(phi.degree_y + 1)]
        top = max((c.degree for c in column if not c.is_zero()), default=-1)
        degree = None
        for m in range(top, -1, -1):
            if dense.evaluate(F, [c[m] for c in column], y) != 0:
                degree = m
                break
        out.append(degree)
    return out


def mahler_check(phi: BivarPolyA, F: FiniteField, y: int) -> MahlerCheckOut:
    """h(Φ(X, y)) como grado máximo frente a Σ log⁺|raíces| en ∞"""
    from app.core.parsing import format_element

    degrees = specialized_degrees(phi, F, y)
    height = max(d for d in degrees if d is not None)
    mahler = mahler_log([None if d is None else -d for d in degrees])
    return MahlerCheckOut(y=format_element(y, F), k=F.ground_dimension, height=height, mahler=mahler,
                          passed=mahler == height)


# ===== IDENTIDAD DE COVOLÚMENES =====

def covolume_ratio_holds(z: OmegaPoint, m: CNMatrix) -> bool:
    """log D(Λ_{γz}) − log D(Λ_z) = log|a| − log|d| para γ = (a b; 0 d) ∈ C_N"""
    gamma = Matrix2.of(z.field.ground, *m.entries())
    before = omega_service.lattice_profile(z).covolume_log
    after = omega_service.lattice_profile(omega_service.apply_gl2(gamma, z)).covolume_log
    return after - before == m.a.degree - m.d.degree
