# app/verification/suites/modpoly_suite.py - Φ_N del corpus: estructura, banda, estabilidad CRT, raíces y testigo
import asyncio
from functools import partial
from typing import List

from app.core.fields import ground_field
from app.core.parsing import parse_poly
from app.core.polynomials import PolyA
from app.modules.modpoly.services import modpoly_service
from app.verification.suites.base_suite import PHI_CORPUS, BaseSuite, SuiteCase


class ModpolySuite(BaseSuite):
    trials = 50

    def _cases(self) -> List[SuiteCase]:
        cases = []
        for q in self.qs():
            for text in PHI_CORPUS.get(q, ()):
                N = parse_poly(text, ground_field(q))
                prefix = f"phi:q{q}:{N}"
                for kind, check in (("structure", self._structure), ("height_band", self._height_band),
                                    ("stability", self._stability), ("root_relation", self._root_relation),
                                    ("witness", self._witness)):
                    cases.append(SuiteCase(f"{prefix}:{kind}", partial(check, N)))
        return cases

    async def _structure(self, N: PolyA) -> List[str]:
        """Entrada de caché válida, Φ mónico en X, simétrico y de grados (ψ, ψ)"""
        service = self._context.phi_service
        phi = (await service.get_phi(N)).phi
        failures = []
        corruption = service.corruption(N)
        if corruption:
            failures.append(f"entrada de caché descartada: {corruption}")
        if not phi.is_monic_in_x():
            failures.append("Φ no es mónico en X")
        if N.degree > 0 and not phi.is_symmetric():
            failures.append("Φ no es simétrico")
        if [phi.degree_x, phi.degree_y] != [phi.psi, phi.psi]:
            failures.append(f"grados ({phi.degree_x}, {phi.degree_y}) ≠ ψ = {phi.psi}")
        return failures

    async def _height_band(self, N: PolyA) -> List[str]:
        check = modpoly_service.verify_height_band((await self._context.phi_service.get_phi(N)).phi)
        failures = []
        if not check.passed:
            failures.append(f"h = {check.h} fuera de [{check.lower}, {check.upper}]")
        if not check.implied_bq_nonnegative:
            failures.append(f"b_q(N) implicado = {check.implied_bq} < 0")
        return failures

    async def _stability(self, N: PolyA) -> List[str]:
        """Un primo que el CRT no usó reproduce Φ mod P"""
        result = await self._context.phi_service.get_phi(N)
        fresh = modpoly_service.fresh_primes(N, result.primes + [result.stability_prime], 1)
        if not await asyncio.to_thread(modpoly_service.check_stability, result.phi, fresh[0]):
            return [f"Φ mod {fresh[0]} no coincide con la especialización"]
        return []

    async def _root_relation(self, N: PolyA) -> List[str]:
        result = await self._context.phi_service.get_phi(N)
        report = await asyncio.to_thread(modpoly_service.verify_root_relation, result.phi, self.trials,
                                         self._context.seed, result.primes + [result.stability_prime])
        return list(report.failures)

    async def _witness(self, N: PolyA) -> List[str]:
        phi = (await self._context.phi_service.get_phi(N)).phi
        witness = await asyncio.to_thread(modpoly_service.specialization_height_witness, phi)
        if witness.specialized_height != witness.height:
            return [f"h(Φ(X, {witness.y})) = {witness.specialized_height} ≠ {witness.height}"]
        return []
