# app/modules/arith/models/cn_matrix.py
from dataclasses import dataclass
from typing import Tuple

from app.core.polynomials import PolyA


@dataclass(frozen=True)
class CNMatrix:
    """(a b; 0 d) con ad = N, a y d mónicos, deg b < deg d, gcd(a, b, d) = 1"""

    a: PolyA
    b: PolyA
    d: PolyA

    @property
    def N(self) -> PolyA:
        return self.a * self.d

    def entries(self) -> Tuple[PolyA, PolyA, PolyA, PolyA]:
        """(a, b, c, d) con c = 0"""
        return self.a, self.b, PolyA.zero(self.a.field), self.d

    def sort_key(self) -> tuple:
        return (self.a.sort_key(), self.b.code)

    def to_dict(self) -> dict:
        return {"a": self.a.to_string(), "b": self.b.to_string(), "d": self.d.to_string()}
