# app/shared/schemas.py - Base de los esquemas de salida
from fractions import Fraction
from typing import Annotated

from pydantic import BaseModel, BeforeValidator, ConfigDict, PlainSerializer

from app.shared.utils.formatting import rational_to_str, str_to_rational


def _to_fraction(value) -> Fraction:
    if isinstance(value, str):
        return str_to_rational(value)
    return Fraction(value)


# Racional exacto; en JSON viaja como "num/den"
Rational = Annotated[
    Fraction,
    BeforeValidator(_to_fraction),
    PlainSerializer(rational_to_str, return_type=str),
]


class ExactModel(BaseModel):
    """Modelo de salida inmutable con soporte de Fraction"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    def to_json_dict(self) -> dict:
        return self.model_dump(mode="json")
