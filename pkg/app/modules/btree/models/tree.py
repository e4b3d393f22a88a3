# app/modules/btree/models/tree.py - Vértices y aristas del árbol de Bruhat–Tits de PGL₂(F_∞)
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from app.core.exceptions import NonCanonicalVertex, PreconditionViolated
from app.core.fields import FiniteField
from app.core.matrices import Matrix2
from app.core.polynomials import PolyA, RatF
from app.core.series import TailElement


def pi_power(field: FiniteField, k: int) -> RatF:
    """π^k = t^{−k} como elemento de F"""
    ground = field.ground
    if k >= 0:
        return RatF(PolyA.one(ground), PolyA.monomial(ground, k))
    return RatF(PolyA.monomial(ground, -k))


@dataclass(frozen=True)
class TreeVertex:
    """v(k, u): clase de (π^k u; 0 1) con u reducido módulo π^k 𝒪_∞"""

    k: int
    u: TailElement

    def __post_init__(self):
        if not self.u.is_canonical(self.k):
            raise NonCanonicalVertex(f"u = {self.u} no es canónico módulo π^{self.k}")

    @classmethod
    def of(cls, k: int, u: TailElement) -> "TreeVertex":
        """Normaliza u antes de construir el vértice"""
        return cls(k, u.truncate(k))

    @classmethod
    def spine(cls, field: FiniteField, k: int) -> "TreeVertex":
        return cls(k, TailElement.zero(field.ground))

    @property
    def field(self) -> FiniteField:
        return self.u.field

    def is_spine(self) -> bool:
        """v_k con k ≤ 0"""
        return self.k <= 0 and self.u.is_zero()

    def matrix(self) -> Matrix2:
        return Matrix2(pi_power(self.field, self.k), self.u.to_ratf(),
                       RatF(PolyA.zero(self.field.ground)), RatF(PolyA.one(self.field.ground)))

    def to_dict(self) -> dict:
        return {"k": self.k, "u": self.u.to_string()}

    def __str__(self) -> str:
        return f"v({self.k}, {self.u})"


@dataclass(frozen=True)
class TreeEdge:
    source: TreeVertex
    target: TreeVertex

    def __post_init__(self):
        if abs(self.source.k - self.target.k) != 1:
            raise PreconditionViolated(f"{self.source} y {self.target} no son adyacentes")
        low, high = sorted((self.source, self.target), key=lambda v: v.k)
        if high.u.truncate(low.k) != low.u:
            raise PreconditionViolated(f"{self.source} y {self.target} no son adyacentes")

    def to_dict(self) -> dict:
        return {"source": self.source.to_dict(), "target": self.target.to_dict()}


@dataclass(frozen=True)
class GammaWitness:
    """γ ∈ GL₂(A) con γ·v equivalente a v_{k'} (k' ≤ 0)"""

    vertex: TreeVertex
    gamma: Matrix2
    k_prime: int
    case: int
    verified: bool = False


@dataclass(frozen=True)
class BuildingImage:
    """Imagen de z ∈ Ω: un vértice o una arista (con interior=True)"""

    vertex: Optional[TreeVertex] = None
    edge: Optional[TreeEdge] = None

    @property
    def interior(self) -> bool:
        return self.edge is not None
