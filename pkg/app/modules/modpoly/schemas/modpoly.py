# app/modules/modpoly/schemas/modpoly.py - Salida JSON del subcomando modpoly
from typing import List, Optional

from app.shared.schemas import ExactModel, Rational


class PhiCoefficientOut(ExactModel):
    i: int
    j: int
    c: str


class ModularPolynomialOut(ExactModel):
    q: int
    N: str
    psi: int
    coeffs: List[PhiCoefficientOut]
    height: int


class CrtOut(ExactModel):
    primes: List[str]
    stability_prime: str
    modulus_degree: int
    degree_bound: int
    stable: bool


class HeightBandCheckOut(ExactModel):
    """Banda del teorema de alturas evaluada con racionales exactos"""

    h: int
    lower: Rational
    upper: Rational
    upper_proof: Rational
    passed: bool
    implied_bq: Rational
    implied_bq_nonnegative: bool
    normalized_excess: Rational
    excess_in_range: bool


class RootRelationOut(ExactModel):
    trials: int
    primes: List[str]
    passed: bool
    failures: List[str]


class HeightWitnessOut(ExactModel):
    k: int
    y: str
    height: int
    specialized_height: int


class ModpolyChecksOut(ExactModel):
    monic_in_x: bool
    symmetric: bool
    degrees: List[int]
    height_band: HeightBandCheckOut
    root_relation: RootRelationOut
    witness: HeightWitnessOut


class ModpolyReport(ExactModel):
    phi: ModularPolynomialOut
    crt: Optional[CrtOut] = None
    checks: Optional[ModpolyChecksOut] = None
    out: Optional[str] = None
