# app/modules/omega/models/omega_point.py - Puntos del semiplano de Drinfeld Ω = ℂ_∞ ∖ F_∞
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from app.core.exceptions import NotInOmega, PrecisionInsufficient
from app.core.series import PuiseuxElement


@dataclass(frozen=True)
class OmegaPoint:
    """
    value con un testigo de no pertenencia a F_∞: el primer término (en orden de exponente
    creciente) con exponente no entero o coeficiente fuera de 𝔽_q. Los términos anteriores
    forman la aproximación x* ∈ F_∞ que realiza |z|_i.
    """

    value: PuiseuxElement
    witness_index: int

    @classmethod
    def certify(cls, value: PuiseuxElement) -> "OmegaPoint":
        for index, (j, c) in enumerate(value.terms):
            if not value.is_finf_term(j, c):
                return cls(value=value, witness_index=index)
        if value.is_exact():
            raise NotInOmega(f"{value} pertenece a F_∞")
        raise PrecisionInsufficient(f"todos los términos de {value} hasta la precisión son de F_∞")

    @property
    def field(self):
        return self.value.field

    @property
    def witness_exponent(self) -> Fraction:
        return Fraction(self.value.terms[self.witness_index][0], self.value.e)

    @property
    def im_abs(self) -> Fraction:
        """log_q|z|_i"""
        return -self.witness_exponent

    @property
    def abs_log(self) -> Fraction:
        """log_q|z|"""
        return self.value.log_abs()

    def approximant(self) -> PuiseuxElement:
        """x* ∈ F_∞ con |z − x*| = |z|_i"""
        terms = dict(self.value.terms[:self.witness_index])
        return PuiseuxElement(self.field, terms, self.value.e)

    def in_fundamental_domain(self) -> bool:
        """|z| = |z|_i ≥ 1"""
        return self.witness_index == 0 and self.abs_log >= 0

    def __str__(self) -> str:
        return self.value.to_string()
