# app/modules/modpoly/models/bivariate.py - Φ_N ∈ A[X, Y] y sus especializaciones módulo P
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterator, List, Tuple

from app.core.exceptions import InvariantViolation
from app.core.fields import FiniteField
from app.core.polynomials import PolyA

Monomial = Tuple[int, int]


def _monomial_text(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("X" if i == 1 else f"X^{i}")
    if j:
        parts.append("Y" if j == 1 else f"Y^{j}")
    return "*".join(parts)


@dataclass(frozen=True)
class BivarPolyA:
    """Σ c_{i,j}(t) X^i Y^j; solo se guardan los coeficientes no nulos"""

    field: FiniteField
    N: PolyA
    psi: int
    coeffs: Dict[Monomial, PolyA] = dc_field(default_factory=dict, hash=False)

    def __post_init__(self):
        clean = {k: c for k, c in self.coeffs.items() if not c.is_zero()}
        object.__setattr__(self, "coeffs", clean)

    @property
    def q(self) -> int:
        return self.field.order

    def coefficient(self, i: int, j: int) -> PolyA:
        return self.coeffs.get((i, j), PolyA.zero(self.field))

    def items(self) -> Iterator[Tuple[Monomial, PolyA]]:
        """Monomios en orden (i descendente, j ascendente)"""
        for key in sorted(self.coeffs, key=lambda ij: (-ij[0], ij[1])):
            yield key, self.coeffs[key]

    @property
    def height(self) -> int:
        """max_{i,j} deg_t c_{i,j}: log_q del mayor |c|"""
        return max((c.degree for c in self.coeffs.values()), default=0)

    @property
    def degree_x(self) -> int:
        return max((i for i, _ in self.coeffs), default=-1)

    @property
    def degree_y(self) -> int:
        return max((j for _, j in self.coeffs), default=-1)

    def is_monic_in_x(self) -> bool:
        top = [(i, j) for i, j in self.coeffs if i == self.psi]
        return self.degree_x == self.psi and top == [(self.psi, 0)] and self.coefficient(self.psi, 0) == PolyA.one(self.field)

    def is_symmetric(self) -> bool:
        return all(self.coefficient(j, i) == c for (i, j), c in self.coeffs.items())

    def validate(self) -> None:
        """Mónico en X, grados ψ(N) en cada variable y simétrico si deg N > 0"""
        if not self.is_monic_in_x():
            raise InvariantViolation(f"Φ_{self.N} no es mónico en X de grado {self.psi}")
        if self.degree_y != self.psi:
            raise InvariantViolation(f"deg_Y Φ_{self.N} = {self.degree_y} ≠ ψ = {self.psi}")
        if self.N.degree > 0 and not self.is_symmetric():
            raise InvariantViolation(f"Φ_{self.N} no es simétrico en X e Y")

    def y_polynomial(self, i: int) -> List[PolyA]:
        """Coeficiente de X^i como polinomio en Y (lista densa de PolyA)"""
        column = [self.coefficient(i, j) for j in range(self.degree_y + 1)]
        while column and column[-1].is_zero():
            column.pop()
        return column

    # ===== SERIALIZACIÓN =====

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "N": self.N.to_string(),
            "psi": self.psi,
            "coeffs": [{"i": i, "j": j, "c": c.to_string()} for (i, j), c in self.items()],
            "height": self.height,
        }

    @classmethod
    def from_dict(cls, data: dict, field: FiniteField) -> "BivarPolyA":
        from app.core.parsing import parse_poly

        coeffs = {(int(e["i"]), int(e["j"])): parse_poly(e["c"], field) for e in data["coeffs"]}
        return cls(field, parse_poly(data["N"], field), int(data["psi"]), coeffs)

    def to_pretty(self) -> str:
        """Forma de texto agrupada por potencias de X, como la imprime un sistema de álgebra"""
        lines = []
        for i in range(self.degree_x, -1, -1):
            terms = []
            for j in range(self.degree_y, -1, -1):
                c = self.coefficient(i, j)
                if c.is_zero():
                    continue
                mono = _monomial_text(0, j)
                text = c.to_string()
                if not mono:
                    terms.append(text)
                elif text == "1":
                    terms.append(mono)
                else:
                    terms.append(f"({text})*{mono}")
            if not terms:
                continue
            inner = " + ".join(terms)
            head = _monomial_text(i, 0)
            if not head:
                lines.append(inner)
            elif inner == "1":
                lines.append(head)
            else:
                lines.append(f"({inner})*{head}")
        return "\n+ ".join(lines) if lines else "0"

    def __str__(self) -> str:
        return f"Φ_{self.N.to_string()} (ψ = {self.psi}, h = {self.height})"


@dataclass(frozen=True)
class SpecializedPhi:
    """Φ_N mod P: coeficientes en A/P representados por restos de grado < deg P"""

    N: PolyA
    P: PolyA
    psi: int
    table: Dict[Monomial, PolyA] = dc_field(default_factory=dict, hash=False)

    def __post_init__(self):
        clean = {k: c for k, c in self.table.items() if not c.is_zero()}
        object.__setattr__(self, "table", clean)

    def residue(self, i: int, j: int) -> PolyA:
        return self.table.get((i, j), PolyA.zero(self.P.field))

    def monomials(self) -> List[Monomial]:
        return sorted(self.table)
