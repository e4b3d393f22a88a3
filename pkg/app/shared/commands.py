# app/shared/commands.py - Base de los subcomandos de la CLI
"""Clase base para subcomandos (Template Method Pattern)"""
import argparse
import logging
from abc import ABC, abstractmethod
from typing import Any

from app.core.fields import FiniteField, extension_field, ground_field
from app.core.parsing import parse_poly
from app.core.polynomials import PolyA

logger = logging.getLogger(__name__)


class BaseCommand(ABC):
    """Un subcomando: declara sus argumentos y devuelve un modelo de salida o texto"""

    name: str = ""
    help: str = ""

    def register(self, subparsers) -> argparse.ArgumentParser:
        parser = subparsers.add_parser(self.name, help=self.help, description=self.help)
        self.configure(parser)
        parser.set_defaults(command=self)
        return parser

    async def execute(self, args: argparse.Namespace) -> Any:
        """Template method: registra y delega en _execute"""
        logger.info(f"🔧 Ejecutando {self.name}...")
        result = await self._execute(args)
        logger.info(f"✅ {self.name} completado")
        return result

    @abstractmethod
    def configure(self, parser: argparse.ArgumentParser) -> None:
        """Argumentos propios del subcomando"""
        pass

    @abstractmethod
    async def _execute(self, args: argparse.Namespace) -> Any:
        pass

    def succeeded(self, result: Any) -> bool:
        """Una salida con fallos de verificación termina con código 1"""
        return True

    # ===== AYUDAS COMUNES =====

    @staticmethod
    def add_q(parser: argparse.ArgumentParser, required: bool = True) -> None:
        parser.add_argument("--q", type=int, required=required,
                            help="orden del campo base 𝔽_q; si q = p^e su generador se escribe a (o w)")

    @staticmethod
    def ground(args: argparse.Namespace) -> FiniteField:
        return ground_field(args.q)

    @staticmethod
    def extension(args: argparse.Namespace) -> FiniteField:
        return extension_field(args.q, getattr(args, "m", 1) or 1)

    @staticmethod
    def modulus(args: argparse.Namespace, text: str) -> PolyA:
        return parse_poly(text, ground_field(args.q))
