# app/verification/schemas.py - Informes de las suites de verificación
from typing import List, Optional

from app.shared.schemas import ExactModel


class SuiteFailureOut(ExactModel):
    case: str
    message: str


class SuiteReportOut(ExactModel):
    """runtime en milisegundos enteros solo con --timings"""

    suite: str
    cases: int
    failures: List[SuiteFailureOut]
    runtime: Optional[int] = None

    @property
    def passed(self) -> bool:
        return not self.failures


class VerifyReport(ExactModel):
    seed: int
    q: Optional[int] = None
    suites: List[SuiteReportOut]
    passed: bool


class CacheEntryOut(ExactModel):
    name: str
    status: str
    key: Optional[dict] = None


class CacheReport(ExactModel):
    action: str
    cache_dir: str
    entries: List[CacheEntryOut] = []
    removed: Optional[int] = None
    phi: Optional[dict] = None
