# app/modules/heights/schemas/heights.py - Salida del subcomando hecke-heights
from typing import List, Optional

from app.shared.schemas import ExactModel, Rational


class LocalTermOut(ExactModel):
    place: str
    degree: int
    gauss_lognorm: int
    local_term: Rational


class LocalIdentityOut(ExactModel):
    """log⁺|j0|_v frente a (1/ψ)·log‖Φ_N(X, j0)‖_v"""

    place: str
    lhs: Rational
    rhs: Rational
    passed: bool


class NaturalLogReadingOut(ExactModel):
    upper_interval: List[Rational]
    passed: Optional[bool] = None


class HeckeGapBandOut(ExactModel):
    gap: Rational
    lower: Rational
    upper_interval: List[Rational]
    min_branch_active: bool
    passed: bool
    log_reading: str = "log_q"
    natural_log_reading: Optional[NaturalLogReadingOut] = None


class MahlerCheckOut(ExactModel):
    y: str
    k: int
    height: int
    mahler: Rational
    passed: bool


class HeckeHeightsReport(ExactModel):
    q: int
    N: str
    j: str
    psi: int
    h_j: Rational
    hecke_sum: Rational
    terms: List[LocalTermOut]
    local_identity: List[LocalIdentityOut]
    band: HeckeGapBandOut
    report: Optional[str] = None
