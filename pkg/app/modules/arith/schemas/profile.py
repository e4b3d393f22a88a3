# app/modules/arith/schemas/profile.py - Salida JSON del subcomando arith
from typing import Dict, List

from app.shared.schemas import ExactModel, Rational


class CNMatrixOut(ExactModel):
    a: str
    b: str
    d: str


class ArithProfile(ExactModel):
    """Funciones aritméticas de N y constantes de la banda del teorema principal"""

    q: int
    N: str
    deg_N: int
    psi: int
    euler_phi: int
    sigma1: int
    units_count: int
    lambda_N: Rational
    kappa_N: Rational
    SN: Rational
    SN_direct: Rational
    ed_table: Dict[str, str]
    bq_upper: Rational
    bq_upper_proof: Rational


class HeightBand(ExactModel):
    q: int
    N: str
    lower: Rational
    upper: Rational
    upper_proof: Rational


class ArithReport(ExactModel):
    profile: ArithProfile
    band: HeightBand
    cn_matrices: List[CNMatrixOut]
