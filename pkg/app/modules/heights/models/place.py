# app/modules/heights/models/place.py - Lugares de F = 𝔽_q(t)
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from app.core.exceptions import PreconditionViolated
from app.core.fields import FiniteField
from app.core.polynomials import PolyA, RatF, is_irreducible_poly, ord_at, v_inf


@dataclass(frozen=True)
class PlaceF:
    """Un primo mónico P o ∞; |x|_v = q^{−deg(v)·ord_v(x)}"""

    field: FiniteField
    P: Optional[PolyA] = None

    def __post_init__(self):
        if self.P is not None and (not self.P.is_monic() or self.P.degree < 1 or not is_irreducible_poly(self.P)):
            raise PreconditionViolated(f"{self.P} no es un primo mónico de A")

    @classmethod
    def infinity(cls, field: FiniteField) -> "PlaceF":
        return cls(field)

    @classmethod
    def finite(cls, P: PolyA) -> "PlaceF":
        return cls(P.field, P)

    @property
    def is_infinite(self) -> bool:
        return self.P is None

    @property
    def degree(self) -> int:
        return 1 if self.P is None else self.P.degree

    def ord(self, x) -> int:
        x = RatF.of(x)
        return v_inf(x) if self.P is None else ord_at(x, self.P)

    def log_abs(self, x) -> int:
        """log_q|x|_v (normalización absoluta)"""
        return -self.degree * self.ord(x)

    def log_plus(self, x) -> int:
        """max(0, −ord_v x) en unidades de log q_v; 0 para x = 0"""
        x = RatF.of(x)
        if x.is_zero():
            return 0
        return max(0, -self.ord(x))

    def label(self) -> str:
        return "inf" if self.P is None else self.P.to_string()

    def sort_key(self) -> tuple:
        return (1, 0, 0) if self.P is None else (0,) + self.P.sort_key()

    def __str__(self) -> str:
        return self.label()
