# ===== app/verification/suite_manager.py =====
"""Gestor centralizado de suites de verificación"""

import asyncio
import logging
from typing import Dict, List, Type

from app.core.exceptions import SuiteUnknown
from app.verification.schemas import SuiteReportOut
from app.verification.suites.arith_suite import ArithSuite
from app.verification.suites.base_suite import BaseSuite, SuiteContext
from app.verification.suites.btree_suite import BtreeSuite
from app.verification.suites.farey_suite import FareySuite
from app.verification.suites.heights_suite import HeightsSuite
from app.verification.suites.modpoly_suite import ModpolySuite
from app.verification.suites.omega_suite import OmegaSuite

logger = logging.getLogger(__name__)


class SuiteManager:
    """Gestor centralizado de suites (Facade + Registry Pattern)"""

    # Registry en orden canónico
    _available_suites: Dict[str, Type[BaseSuite]] = {
        "arith": ArithSuite,
        "farey": FareySuite,
        "btree": BtreeSuite,
        "omega": OmegaSuite,
        "modpoly": ModpolySuite,
        "heights": HeightsSuite,
    }

    def __init__(self, context: SuiteContext):
        self._context = context

    @classmethod
    def available(cls) -> List[str]:
        return list(cls._available_suites)

    def resolve(self, name: str) -> List[str]:
        """'all' o el nombre de una suite"""
        if name == "all":
            return self.available()
        if name not in self._available_suites:
            raise SuiteUnknown(f"suite '{name}' desconocida; disponibles: {', '.join(self.available())}, all")
        return [name]

    def get_suite(self, name: str) -> BaseSuite:
        return self._available_suites[name](self._context)

    async def run(self, names: List[str]) -> List[SuiteReportOut]:
        """Ejecuta las suites en paralelo; los informes salen en orden canónico"""
        ordered = [name for name in self.available() if name in names]
        logger.info(f"📊 Ejecutando {len(ordered)} suites: {', '.join(ordered)}")
        reports = await asyncio.gather(*(self.get_suite(name).run() for name in ordered))
        failed = [r.suite for r in reports if r.failures]
        if failed:
            logger.error(f"❌ Suites con fallos: {', '.join(failed)}")
        else:
            logger.info(f"✅ {len(reports)} suites sin fallos")
        return list(reports)
