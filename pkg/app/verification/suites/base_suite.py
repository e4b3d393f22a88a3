# app/verification/suites/base_suite.py - Clase base de las suites de verificación
"""Clase base para suites (Template Method Pattern)"""

import asyncio
import inspect
import logging
import random
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Callable, List, Optional, Sequence, Tuple

from app.core.exceptions import DrinfeldToolkitError
from app.core.fields import FiniteField
from app.core.polynomials import PolyA
from app.core.series import PuiseuxElement
from app.modules.modpoly.services.modpoly_service import ModularPolynomialService
from app.modules.omega.models.omega_point import OmegaPoint
from app.verification.schemas import SuiteFailureOut, SuiteReportOut

logger = logging.getLogger(__name__)

# Φ_N de referencia por q
PHI_CORPUS = {2: ("t", "t+1", "t^2", "t^2+t+1"), 3: ("t", "t+1")}


@dataclass(frozen=True)
class SuiteContext:
    """Lo que comparte una ejecución de verify: q opcional, semilla, workers y el servicio de Φ_N"""

    seed: int
    phi_service: ModularPolynomialService
    q: Optional[int] = None
    workers: int = 1
    timings: bool = False


@dataclass(frozen=True)
class SuiteCase:
    """Un caso con nombre; check devuelve la lista de mensajes de fallo (vacía si pasa)"""

    name: str
    check: Callable[[], Any]


class BaseSuite(ABC):
    default_qs: Tuple[int, ...] = (2, 3)

    def __init__(self, context: SuiteContext):
        self._context = context
        self._name = self.__class__.__name__.replace("Suite", "").lower()

    @property
    def name(self) -> str:
        return self._name

    def qs(self) -> List[int]:
        return list(self.default_qs) if self._context.q is None else [self._context.q]

    def rng(self, case: str) -> random.Random:
        """Generador propio de cada caso; no hay estado aleatorio global"""
        return random.Random(f"{self._context.seed}:{case}")

    async def run(self) -> SuiteReportOut:
        """Template method: preparar, ejecutar los casos en paralelo y fusionar en orden canónico"""
        logger.info(f"🔧 Ejecutando suite {self._name.upper()}...")
        start = time.perf_counter()

        await self._prepare()
        cases = self._cases()
        semaphore = asyncio.Semaphore(max(1, self._context.workers))

        async def run_case(case: SuiteCase) -> List[SuiteFailureOut]:
            async with semaphore:
                try:
                    if inspect.iscoroutinefunction(case.check):
                        messages = await case.check()
                    else:
                        messages = await asyncio.to_thread(case.check)
                except DrinfeldToolkitError as e:
                    messages = [f"{type(e).__name__}: {e}"]
            return [SuiteFailureOut(case=case.name, message=m) for m in messages]

        groups = await asyncio.gather(*(run_case(case) for case in cases))
        failures = [failure for group in groups for failure in group]
        runtime = round((time.perf_counter() - start) * 1000) if self._context.timings else None

        if failures:
            logger.warning(f"⚠️ Suite {self._name.upper()}: {len(failures)} fallos en {len(cases)} casos")
        else:
            logger.info(f"✅ Suite {self._name.upper()}: {len(cases)} casos sin fallos")
        return SuiteReportOut(suite=self._name, cases=len(cases), failures=failures, runtime=runtime)

    async def _prepare(self) -> None:
        """Preparación específica de la suite (opcional)"""
        pass

    @abstractmethod
    def _cases(self) -> List[SuiteCase]:
        """Casos de la suite en orden canónico"""
        pass


# ===== MUESTREO =====

def random_poly(rng: random.Random, field: FiniteField, below: int) -> PolyA:
    """Polinomio uniforme de grado < below"""
    return PolyA(field, [rng.randrange(field.order) for _ in range(below)])


def random_monic(rng: random.Random, field: FiniteField, degree: int) -> PolyA:
    return PolyA(field, [rng.randrange(field.order) for _ in range(degree)] + [1])


def random_omega_point(rng: random.Random, L: FiniteField, exponents: Sequence[int] = range(-2, 5)) -> OmegaPoint:
    """Suma finita de términos c·π^j con al menos un coeficiente fuera de 𝔽_q"""
    q = L.ground.order
    chosen = sorted(rng.sample(list(exponents), rng.randint(1, 4)))
    terms = {j: rng.randrange(1, L.order) for j in chosen}
    if all(L.in_ground(c) for c in terms.values()):
        terms[chosen[-1]] = rng.randrange(q, L.order)
    return OmegaPoint.certify(PuiseuxElement(L, terms))
