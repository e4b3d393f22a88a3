# app/core/matrices.py - Matrices 2×2 sobre F = 𝔽_q(t)
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union

from app.core.exceptions import SingularMatrix
from app.core.fields import FiniteField
from app.core.polynomials import MINUS_INFINITY, PolyA, RatF, v_inf

Entry = Union[PolyA, RatF, int]


def _as_ratf(field: FiniteField, x: Entry) -> RatF:
    if isinstance(x, RatF):
        return x
    if isinstance(x, PolyA):
        return RatF(x)
    return RatF(PolyA.constant(field, field.scalar(x)))


@dataclass(frozen=True)
class Matrix2:
    """(a b; c d) con entradas en F; actúa por Möbius z ↦ (az+b)/(cz+d)"""

    a: RatF
    b: RatF
    c: RatF
    d: RatF

    @classmethod
    def of(cls, field: FiniteField, a: Entry, b: Entry, c: Entry, d: Entry) -> "Matrix2":
        field = field.ground
        return cls(*(_as_ratf(field, x) for x in (a, b, c, d)))

    @classmethod
    def identity(cls, field: FiniteField) -> "Matrix2":
        return cls.of(field, 1, 0, 0, 1)

    @classmethod
    def swap(cls, field: FiniteField) -> "Matrix2":
        """J = (0 1; 1 0)"""
        return cls.of(field, 0, 1, 1, 0)

    @classmethod
    def translation(cls, field: FiniteField, x: Entry) -> "Matrix2":
        return cls.of(field, 1, x, 0, 1)

    @property
    def field(self) -> FiniteField:
        return self.a.field

    def entries(self) -> Tuple[RatF, RatF, RatF, RatF]:
        return self.a, self.b, self.c, self.d

    def det(self) -> RatF:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Matrix2":
        det = self.det()
        if det.is_zero():
            raise SingularMatrix("matriz singular")
        return Matrix2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def scale(self, x: RatF) -> "Matrix2":
        return Matrix2(self.a * x, self.b * x, self.c * x, self.d * x)

    def is_integral(self) -> bool:
        """Entradas en A"""
        return all(x.is_polynomial() for x in self.entries())

    def is_gamma(self) -> bool:
        """Pertenencia a Γ = GL₂(A): entradas en A y det ∈ 𝔽_q^*"""
        det = self.det()
        return self.is_integral() and not det.is_zero() and det.is_polynomial() and det.num.degree == 0

    def min_valuation(self) -> int:
        return min(v_inf(x) for x in self.entries() if not x.is_zero())

    def polys(self) -> Tuple[PolyA, PolyA, PolyA, PolyA]:
        if not self.is_integral():
            raise ValueError("la matriz no tiene entradas en A")
        return tuple(x.num for x in self.entries())

    def max_entry_degree(self):
        return max((x.num.degree for x in self.entries()), default=MINUS_INFINITY)

    def to_dict(self) -> dict:
        return {name: x.to_string() for name, x in zip("abcd", self.entries())}

    def __str__(self) -> str:
        a, b, c, d = (x.to_string() for x in self.entries())
        return f"({a}, {b}; {c}, {d})"
