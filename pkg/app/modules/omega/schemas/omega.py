# app/modules/omega/schemas/omega.py - Salida de omega-reduce
from typing import Dict, List, Optional

from app.shared.schemas import ExactModel, Rational


class LatticeProfileOut(ExactModel):
    z: str
    min1: Rational
    min2: Rational
    covolume_log: Rational
    im_abs: Rational
    reduced: bool
    witness_basis: List[str]


class OmegaReductionOut(ExactModel):
    q: int
    z: str
    im_abs: Rational
    z_reduced: str
    abs_reduced: Rational
    im_abs_reduced: Rational
    gamma: Dict[str, str]
    profile: Optional[LatticeProfileOut] = None
