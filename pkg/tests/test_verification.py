# tests/test_verification.py
from typing import List

import pytest

from app.core.exceptions import InvariantViolation, SuiteUnknown
from app.modules.modpoly.services.modpoly_service import ModularPolynomialService
from app.modules.omega.services import omega_service
from app.verification.suite_manager import SuiteManager
from app.verification.suites.arith_suite import ArithSuite
from app.verification.suites.base_suite import BaseSuite, SuiteCase, SuiteContext
from app.verification.suites.omega_suite import OmegaSuite


@pytest.fixture
def context() -> SuiteContext:
    return SuiteContext(seed=0, phi_service=ModularPolynomialService(), q=2)


class BrokenSuite(BaseSuite):
    """Un caso que pasa, uno con fallos y uno que lanza una excepción del toolkit"""

    def _cases(self) -> List[SuiteCase]:
        return [
            SuiteCase("ok", lambda: []),
            SuiteCase("fails", lambda: ["1 ≠ 2"]),
            SuiteCase("raises", self._raise),
        ]

    @staticmethod
    def _raise() -> List[str]:
        raise InvariantViolation("Φ en caché no es simétrico")


def test_resolver_suites(context):
    manager = SuiteManager(context)
    assert manager.resolve("all") == ["arith", "farey", "btree", "omega", "modpoly", "heights"]
    assert manager.resolve("omega") == ["omega"]
    with pytest.raises(SuiteUnknown) as info:
        manager.resolve("galois")
    assert info.value.exit_code == 2


def test_q_restringe_las_suites(context):
    assert ArithSuite(context).qs() == [2]
    assert ArithSuite(SuiteContext(seed=0, phi_service=ModularPolynomialService())).qs() == [2, 3, 4]


def test_semilla_determina_el_muestreo(context):
    a, b = ArithSuite(context).rng("case"), ArithSuite(context).rng("case")
    assert [a.random() for _ in range(5)] == [b.random() for _ in range(5)]


async def test_orden_canonico_de_informes(context):
    reports = await SuiteManager(context).run(["omega", "arith"])
    assert [r.suite for r in reports] == ["arith", "omega"]
    for report in reports:
        assert report.passed, report.failures
        assert report.cases > 0
        assert report.runtime is None


async def test_fallos_con_nombre_de_caso(context):
    report = await BrokenSuite(context).run()
    assert report.suite == "broken"
    assert report.cases == 3
    assert [f.case for f in report.failures] == ["fails", "raises"]
    assert report.failures[1].message.startswith("InvariantViolation")
    assert not report.passed


def test_imtrans_recorre_cien_pares(context, monkeypatch):
    pairs = []
    holds = omega_service.imtrans_holds

    def counting(gamma, z):
        pairs.append((gamma, z))
        return holds(gamma, z)

    monkeypatch.setattr(omega_service, "imtrans_holds", counting)
    case = next(c for c in OmegaSuite(context)._cases() if c.name == "imtrans:q2")
    assert case.check() == []
    assert len(pairs) == OmegaSuite.imtrans_samples == 100
