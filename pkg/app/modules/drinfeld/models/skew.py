# app/modules/drinfeld/models/skew.py - Polinomios torcidos L{τ} con τ·x = x^q·τ
from __future__ import annotations

from typing import List, Sequence, Tuple

from app.core.exceptions import DivisionByZero
from app.core.fields import FiniteField


class SkewPoly:
    """Σ c_i τ^i con coeficientes en L; el producto respeta τ·c = c^q·τ"""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Sequence[int] = ()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.field = field
        self.coeffs: Tuple[int, ...] = tuple(coeffs)

    @classmethod
    def zero(cls, field: FiniteField) -> "SkewPoly":
        return cls(field)

    @classmethod
    def constant(cls, field: FiniteField, c: int) -> "SkewPoly":
        return cls(field, [c])

    @classmethod
    def tau(cls, field: FiniteField, n: int = 1) -> "SkewPoly":
        return cls(field, [0] * n + [1])

    @property
    def degree(self) -> int:
        """deg_τ; −1 para el cero"""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    # ===== ARITMÉTICA =====

    def __add__(self, other: "SkewPoly") -> "SkewPoly":
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly(F, [F.add(self[i], other[i]) for i in range(n)])

    def __neg__(self) -> "SkewPoly":
        return SkewPoly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: "SkewPoly") -> "SkewPoly":
        return self + (-other)

    def __mul__(self, other: "SkewPoly") -> "SkewPoly":
        """(Σ a_i τ^i)(Σ b_j τ^j) = Σ a_i b_j^{q^i} τ^{i+j}"""
        F = self.field
        if self.is_zero() or other.is_zero():
            return SkewPoly(F)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, F.frobenius(b, i)))
        return SkewPoly(F, out)

    def scale(self, c: int) -> "SkewPoly":
        """c·self (multiplicación por la izquierda)"""
        return SkewPoly(self.field, [self.field.mul(c, x) for x in self.coeffs])

    def right_divmod(self, other: "SkewPoly") -> Tuple["SkewPoly", "SkewPoly"]:
        """(Q, R) con self = Q·other + R y deg_τ R < deg_τ other"""
        F = self.field
        if other.is_zero():
            raise DivisionByZero("división por el polinomio torcido cero")
        rem = SkewPoly(F, self.coeffs)
        quo: List[int] = [0] * max(0, rem.degree - other.degree + 1)
        while not rem.is_zero() and rem.degree >= other.degree:
            m = rem.degree - other.degree
            c = F.div(rem.lead, F.frobenius(other.lead, m))
            quo[m] = c
            rem = rem - SkewPoly(F, [0] * m + [c]) * other
        return SkewPoly(F, quo), rem

    def __call__(self, x: int) -> int:
        """Evaluación como polinomio linealizado Σ c_i x^{q^i}"""
        F = self.field
        acc, power = 0, x
        for i, c in enumerate(self.coeffs):
            if i:
                power = F.frobenius(power)
            if c:
                acc = F.add(acc, F.mul(c, power))
        return acc

    def map_coefficients(self, field: FiniteField, embedding) -> "SkewPoly":
        return SkewPoly(field, [embedding(c) for c in self.coeffs])

    def __eq__(self, other) -> bool:
        return isinstance(other, SkewPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.coeffs, self.field))

    def to_string(self) -> str:
        from app.core.parsing import format_element

        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            coeff = format_element(c, self.field)
            mono = "" if i == 0 else ("tau" if i == 1 else f"tau^{i}")
            if not mono:
                terms.append(coeff)
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"({coeff})*{mono}")
        return "+".join(terms) if terms else "0"

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"SkewPoly({self.to_string()!r})"
