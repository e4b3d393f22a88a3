# app/core/exceptions.py - Jerarquía de errores del dominio
"""
Errores del toolkit. Cada familia lleva el código de salida que usa la CLI:

    0  éxito
    1  fallo de verificación
    2  entrada inválida (parseo o precondición)
    3  campo / característica no soportados
    4  límites de recursos
"""
from typing import Optional


class DrinfeldToolkitError(Exception):
    """Base de todos los errores del dominio"""

    exit_code: int = 1

    def to_dict(self) -> dict:
        return {"error": type(self).__name__, "message": str(self), "exit_code": self.exit_code}


# ===== ENTRADA INVÁLIDA (exit 2) =====

class InputError(DrinfeldToolkitError):
    exit_code = 2


class ParseError(InputError):
    """Error de gramática con columna 1-based del carácter ofensivo"""

    def __init__(self, message: str, text: str = "", column: Optional[int] = None):
        self.text = text
        self.column = column
        if column is not None:
            message = f"{message} (columna {column} en {text!r})"
        super().__init__(message)

    def to_dict(self) -> dict:
        data = super().to_dict()
        data["column"] = self.column
        return data


class NotMonic(InputError):
    pass


class BothZero(InputError):
    pass


class ZeroInput(InputError):
    pass


class ZeroPolynomial(InputError):
    pass


class NotInUnitBall(InputError):
    pass


class NonCanonicalVertex(InputError):
    pass


class SmallD(InputError):
    pass


class PreconditionViolated(InputError):
    pass


class SingularMatrix(InputError):
    pass


class DivisionByZero(InputError):
    pass


class NotInOmega(InputError):
    pass


class SuiteUnknown(InputError):
    pass


# ===== NO SOPORTADO (exit 3) =====

class UnsupportedError(DrinfeldToolkitError):
    exit_code = 3


class UnsupportedField(UnsupportedError):
    pass


class CharDividesN(UnsupportedError):
    pass


class TorsionNotEtale(UnsupportedError):
    pass


# ===== LÍMITES (exit 4) =====

class ResourceCapError(DrinfeldToolkitError):
    exit_code = 4


class SizeCapExceeded(ResourceCapError):
    pass


class IterationCapExceeded(ResourceCapError):
    pass


class PrecisionInsufficient(ResourceCapError):
    pass


class WitnessNotFound(ResourceCapError):
    pass


# ===== VERIFICACIÓN (exit 1) =====

class VerificationFailure(DrinfeldToolkitError):
    exit_code = 1


class NonLinearizedKernel(VerificationFailure):
    pass


class NonzeroRemainder(VerificationFailure):
    pass


class InvariantViolation(VerificationFailure):
    pass


class CacheCorrupt(VerificationFailure):
    pass
