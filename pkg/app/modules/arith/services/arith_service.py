# app/modules/arith/services/arith_service.py - ψ, λ_N, κ_N, C_N y la banda del teorema de alturas
"""
Todas las cantidades son exactas y en unidades log_q:

    ψ(N)   = |N| ∏_{P|N} (1 + 1/|P|)
    λ_N    = Σ_{P^n ∥ N} (|P|^n − 1) / (|P|^{n−1}(|P|² − 1)) · deg P
    κ_N    = Σ_{P|N} deg P / |P|
    S_N    = Σ_{C_N} log_q(|d|/|a|) = ψ(N)(deg N − 2λ_N)
"""
import logging
from fractions import Fraction
from typing import Dict, List

from app.core.exceptions import InvariantViolation, NotMonic
from app.core.polynomials import PolyA, all_polys_below, factor_monic, gcd, monic_divisors, norm
from app.modules.arith.models.cn_matrix import CNMatrix
from app.modules.arith.schemas.profile import ArithProfile, HeightBand

logger = logging.getLogger(__name__)


def _require_monic(N: PolyA) -> None:
    if N.is_zero() or not N.is_monic():
        raise NotMonic(f"N = {N} debe ser mónico")


# ===== FUNCIONES MULTIPLICATIVAS =====

def psi(N: PolyA) -> int:
    _require_monic(N)
    value = Fraction(norm(N))
    for P, _ in factor_monic(N):
        value *= 1 + Fraction(1, norm(P))
    return int(value)


def euler_phi(N: PolyA) -> int:
    _require_monic(N)
    value = Fraction(norm(N))
    for P, _ in factor_monic(N):
        value *= 1 - Fraction(1, norm(P))
    return int(value)


def sigma1(N: PolyA) -> int:
    """Σ_{d|N} |d|"""
    _require_monic(N)
    return sum(norm(d) for d in monic_divisors(N))


def units_count(N: PolyA) -> int:
    """#(A/N)^* por recuento directo"""
    _require_monic(N)
    if N.degree == 0:
        return 1
    return sum(1 for b in all_polys_below(N.field, N.degree) if gcd(b, N).degree == 0)


def lambda_N(N: PolyA) -> Fraction:
    _require_monic(N)
    total = Fraction(0)
    for P, n in factor_monic(N):
        p = norm(P)
        total += Fraction(p ** n - 1, p ** (n - 1) * (p * p - 1)) * P.degree
    return total


def kappa_N(N: PolyA) -> Fraction:
    _require_monic(N)
    return sum((Fraction(P.degree, norm(P)) for P, _ in factor_monic(N)), Fraction(0))


def e_d(d: PolyA, N: PolyA) -> PolyA:
    """gcd(d, N/d)"""
    return gcd(d, N // d)


# ===== EL CONJUNTO C_N =====

def enumerate_cn(N: PolyA) -> List[CNMatrix]:
    """Las ψ(N) matrices (a b; 0 d), ordenadas por (a, b)"""
    _require_monic(N)
    matrices: List[CNMatrix] = []
    for a in monic_divisors(N):
        d = N // a
        e = gcd(a, d)
        for b in all_polys_below(N.field, d.degree):
            if gcd(b, e).degree == 0:
                matrices.append(CNMatrix(a=a, b=b, d=d))
    matrices.sort(key=CNMatrix.sort_key)
    return matrices


def s_n_closed(N: PolyA) -> Fraction:
    return psi(N) * (N.degree - 2 * lambda_N(N))


def s_n_direct(N: PolyA) -> Fraction:
    return Fraction(sum(m.d.degree - m.a.degree for m in enumerate_cn(N)))


def sum_log_a_over_d(N: PolyA) -> Fraction:
    """Σ_{C_N} log_q(|a|/|d|) = −S_N"""
    return -s_n_direct(N)


def s_prime_power(P: PolyA, r: int) -> Fraction:
    """Forma cerrada de S_{P^r}"""
    p = norm(P)
    return (Fraction(p ** (r - 1) * (p + 1) * r) - Fraction(2 * (p ** r - 1), p - 1)) * P.degree


# ===== CONSTANTES DE LA BANDA =====

def bq_upper(q: int) -> Fraction:
    """Constante del enunciado: 4 + (2q³+q²−2q+1)/(q(q−1)²)"""
    return 4 + Fraction(2 * q ** 3 + q ** 2 - 2 * q + 1, q * (q - 1) ** 2)


def bq_upper_proof(q: int) -> Fraction:
    """Constante que aparece al final de la demostración: numerador 2q³+q²−2q−1"""
    return 4 + Fraction(2 * q ** 3 + q ** 2 - 2 * q - 1, q * (q - 1) ** 2)


def height_band(N: PolyA) -> HeightBand:
    q = N.field.order
    scale = Fraction(q * q - 1, 2) * psi(N)
    lower = scale * (N.degree - 2 * lambda_N(N))
    return HeightBand(q=q, N=N.to_string(), lower=lower, upper=lower + scale * bq_upper(q),
                    upper_proof=lower + scale * bq_upper_proof(q))


def implied_bq(h: int, N: PolyA) -> Fraction:
    """b_q(N) = 2h/((q²−1)ψ) − deg N + 2λ_N"""
    q = N.field.order
    return Fraction(2 * h, (q * q - 1) * psi(N)) - N.degree + 2 * lambda_N(N)


def normalized_excess(h: int, N: PolyA) -> Fraction:
    """h/ψ − (q²−1)/2·(deg N − 2λ_N); vive en [0, (q²−1)/2·bq_upper]"""
    q = N.field.order
    return Fraction(h, psi(N)) - Fraction(q * q - 1, 2) * (N.degree - 2 * lambda_N(N))


def arith_profile(N: PolyA) -> ArithProfile:
    """Perfil completo; S_N se calcula por la forma cerrada y por la suma sobre C_N"""
    _require_monic(N)
    q = N.field.order
    lam = lambda_N(N)
    closed, direct = s_n_closed(N), s_n_direct(N)
    if closed != direct:
        raise InvariantViolation(f"S_N cerrado {closed} ≠ suma directa {direct} para N = {N}")
    if not 0 <= lam <= Fraction(N.degree, 2):
        raise InvariantViolation(f"λ_N = {lam} fuera de [0, deg N/2]")
    table: Dict[str, str] = {d.to_string(): e_d(d, N).to_string() for d in monic_divisors(N)}
    logger.debug(f"🧮 Perfil aritmético de N = {N} sobre 𝔽_{q}")
    return ArithProfile(
        q=q,
        N=N.to_string(),
        deg_N=N.degree,
        psi=psi(N),
        euler_phi=euler_phi(N),
        sigma1=sigma1(N),
        units_count=units_count(N),
        lambda_N=lam,
        kappa_N=kappa_N(N),
        SN=closed,
        SN_direct=direct,
        ed_table=table,
        bq_upper=bq_upper(q),
        bq_upper_proof=bq_upper_proof(q),
    )
