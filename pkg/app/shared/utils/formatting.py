# app/shared/utils/formatting.py - Racionales exactos y JSON canónico
import hashlib
import json
from fractions import Fraction
from typing import Any, Union

from app.core.exceptions import ParseError


def rational_to_str(x: Union[int, Fraction]) -> str:
    """Fraction(3, 2) -> "3/2"; enteros sin denominador"""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def str_to_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"racional inválido: {e}", text, 1)


def canonical_json(data: Any) -> str:
    """Salida byte a byte reproducible"""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def payload_digest(data: Any) -> str:
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()
