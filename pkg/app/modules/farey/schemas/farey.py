# app/modules/farey/schemas/farey.py - Salida del subcomando farey
from typing import List, Optional

from app.shared.schemas import ExactModel, Rational


class FareyFractionOut(ExactModel):
    h: str
    f: str


class PartitionReport(ExactModel):
    depth: int
    fractions_checked: int
    balls: int
    failures: List[str]


class FareyListOut(ExactModel):
    q: int
    M: int
    size: int
    fractions: List[FareyFractionOut]
    partition: Optional[PartitionReport] = None


class FareyRepresentativeOut(ExactModel):
    M: int
    center: FareyFractionOut
    delta: dict
    z_hat: str
    im_abs_z_hat: Rational
    upper_bound: Rational
