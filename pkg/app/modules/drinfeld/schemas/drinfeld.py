# app/modules/drinfeld/schemas/drinfeld.py - Salida de drinfeld-quotients
from typing import List, Optional

from app.shared.schemas import ExactModel


class QuotientOut(ExactModel):
    a: str
    b: str
    d: str
    j: str
    j_in_base: Optional[str] = None
    kernel_tau_degree: int


class DrinfeldQuotientsOut(ExactModel):
    q: int
    m: int
    theta: str
    j: str
    N: str
    char_poly: str
    torsion_field_degree: int
    torsion_field_modulus: Optional[str] = None
    quotients: List[QuotientOut]
