# app/modules/drinfeld/models/module.py - A-campos finitos y módulos de Drinfeld de rango 2
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import List, Tuple

from app.core.exceptions import PreconditionViolated
from app.core.fields import Embedding, FiniteField
from app.core.polynomials import PolyA, is_irreducible_poly
from app.modules.drinfeld.models.skew import SkewPoly


def minimal_polynomial(L: FiniteField, x: int) -> PolyA:
    """Polinomio mínimo de x sobre 𝔽_q: ∏ (X − x^{q^i}) sobre la órbita de Frobenius"""
    orbit = [x]
    while True:
        nxt = L.frobenius(orbit[-1])
        if nxt == x:
            break
        orbit.append(nxt)
    coeffs = [1]
    for root in orbit:
        # (Σ c_i X^i)(X − root)
        shifted = [0] + coeffs
        scaled = [L.mul(L.neg(root), c) for c in coeffs] + [0]
        coeffs = [L.add(a, b) for a, b in zip(shifted, scaled)]
    if not all(L.in_ground(c) for c in coeffs):
        raise PreconditionViolated(f"el polinomio mínimo de {x} no desciende a 𝔽_q")
    return PolyA(L.ground, coeffs)


@dataclass(frozen=True)
class AFieldFinite:
    """L con el morfismo A → L, t ↦ θ; la A-característica es el polinomio mínimo de θ"""

    L: FiniteField
    theta: int
    char_poly: PolyA = dc_field(default=None, compare=False)

    def __post_init__(self):
        if self.char_poly is None:
            object.__setattr__(self, "char_poly", minimal_polynomial(self.L, self.theta))
        if not is_irreducible_poly(self.char_poly):
            raise PreconditionViolated(f"{self.char_poly} no es irreducible")

    def evaluate(self, a: PolyA) -> int:
        """a(θ) ∈ L"""
        return a(self.theta, field=self.L)

    def base_change(self, embedding: Embedding) -> "AFieldFinite":
        return AFieldFinite(embedding.dst, embedding(self.theta), self.char_poly)


@dataclass(frozen=True)
class DrinfeldMod2:
    """φ_t = θ + g·τ + Δ·τ² con Δ ≠ 0"""

    base: AFieldFinite
    g: int
    delta: int

    def __post_init__(self):
        if self.delta == 0:
            raise PreconditionViolated("Δ = 0 no define un módulo de rango 2")

    @property
    def L(self) -> FiniteField:
        return self.base.L

    def phi_t(self) -> SkewPoly:
        return SkewPoly(self.L, [self.base.theta, self.g, self.delta])

    def base_change(self, embedding: Embedding) -> "DrinfeldMod2":
        return DrinfeldMod2(self.base.base_change(embedding), embedding(self.g), embedding(self.delta))


@dataclass(frozen=True)
class CyclicSubmodule:
    """C ≅ A/N dentro de φ[N]: el A-submódulo generado por φ_a(x) + φ_b(y) y φ_d(y)"""

    a: PolyA
    b: PolyA
    d: PolyA
    points: Tuple[int, ...]
    generator: int
    span_basis: Tuple[int, ...] = ()

    def label(self) -> str:
        return f"({self.a.to_string()}, {self.b.to_string()}, {self.d.to_string()})"

    def point_set(self) -> frozenset:
        return frozenset(self.points)


@dataclass
class TorsionData:
    """φ[N] realizado en un campo explícito L2 ⊇ L"""

    module: DrinfeldMod2
    N: PolyA
    embedding: Embedding
    basis: List[int]
    points: List[int]
    x: int = 0
    y: int = 0


@dataclass
class HeckeImages:
    """j(φ/C) para cada C, como elementos del campo de la torsión"""

    embedding: Embedding
    entries: List[Tuple[CyclicSubmodule, int]]

    @property
    def field(self) -> FiniteField:
        return self.embedding.dst

    def j_values(self) -> List[int]:
        return [j for _, j in self.entries]
