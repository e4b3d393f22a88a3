# app/modules/farey/models/farey.py - Fracciones de Farey h/f y bolas D_M(h/f)
from __future__ import annotations

from dataclasses import dataclass

from app.core.exceptions import PreconditionViolated
from app.core.polynomials import PolyA, RatF, gcd, v_inf


@dataclass(frozen=True)
class FareyFraction:
    """h/f con f mónico, deg h < deg f y gcd(h, f) = 1; 0/1 es la única con h = 0"""

    h: PolyA
    f: PolyA

    def __post_init__(self):
        if not self.f.is_monic():
            raise PreconditionViolated(f"el denominador {self.f} debe ser mónico")
        if not self.h.degree < self.f.degree and not (self.h.is_zero() and self.f.degree == 0):
            raise PreconditionViolated(f"deg {self.h} ≥ deg {self.f}")
        if self.h.is_zero() and self.f.degree != 0:
            raise PreconditionViolated("0 solo se representa como 0/1")
        if not self.h.is_zero() and gcd(self.h, self.f).degree != 0:
            raise PreconditionViolated(f"{self.h}/{self.f} no es irreducible")

    @property
    def order(self) -> int:
        return self.f.degree

    def to_ratf(self) -> RatF:
        return RatF(self.h, self.f)

    def sort_key(self) -> tuple:
        return (self.f.degree, self.f.code, self.h.code)

    def to_string(self) -> str:
        return f"{self.h.to_string()}/{self.f.to_string()}"

    def __str__(self) -> str:
        return self.to_string()


@dataclass(frozen=True)
class FareyBall:
    """D_M(h/f) = {ζ : |ζ − h/f| ≤ q^{−(deg f + M + 1)}}"""

    center: FareyFraction
    M: int

    @property
    def radius_valuation(self) -> int:
        return self.center.f.degree + self.M + 1

    def contains(self, zeta: RatF) -> bool:
        diff = RatF.of(zeta) - self.center.to_ratf()
        return diff.is_zero() or v_inf(diff) >= self.radius_valuation
