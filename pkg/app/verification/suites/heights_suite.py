# app/verification/suites/heights_suite.py - Identidad local, banda de Hecke, Mahler y covolúmenes
import asyncio
from functools import partial
from typing import List

from app.config.settings import settings
from app.core.exceptions import DrinfeldToolkitError
from app.core.fields import extension_field, ground_field
from app.core.parsing import parse_poly
from app.core.polynomials import PolyA, RatF
from app.modules.arith.services import arith_service
from app.modules.heights.services import heights_service
from app.modules.modpoly.models.bivariate import BivarPolyA
from app.verification.suites.base_suite import (PHI_CORPUS, BaseSuite, SuiteCase, random_monic, random_omega_point,
                                                random_poly)


class HeightsSuite(BaseSuite):
    j_samples = 20
    weil_samples = 30
    covolume_samples = 50
    covolume_chunks = 5
    mahler_max_k = 2

    def _cases(self) -> List[SuiteCase]:
        cases = []
        for q in self.qs():
            F = ground_field(q)
            name = f"weil:q{q}"
            cases.append(SuiteCase(name, partial(self._weil, q, name)))
            for chunk in range(self.covolume_chunks):
                name = f"covolume_ratio:q{q}:{chunk}"
                cases.append(SuiteCase(name, partial(self._covolume_ratio, q, name)))
            for text in PHI_CORPUS.get(q, ()):
                N = parse_poly(text, F)
                name = f"hecke:q{q}:{N}"
                cases.append(SuiteCase(name, partial(self._hecke, N, name)))
                cases.append(SuiteCase(f"mahler:q{q}:{N}", partial(self._mahler, N)))
        return cases

    def _random_ratf(self, rng, q: int) -> RatF:
        F = ground_field(q)
        return RatF(random_poly(rng, F, rng.randint(0, 3)), random_monic(rng, F, rng.randint(0, 2)))

    def _weil(self, q: int, name: str) -> List[str]:
        """h por grados frente a h por lugares, y fórmula del producto"""
        rng = self.rng(name)
        failures = []
        for _ in range(self.weil_samples):
            x = self._random_ratf(rng, q)
            try:
                heights_service.weil_height(x)
            except DrinfeldToolkitError as err:
                failures.append(f"x = {x}: {err}")
            if not x.is_zero() and not heights_service.product_formula_holds(x):
                failures.append(f"x = {x}: Σ_v deg(v)·ord_v(x) ≠ 0")
        return failures

    def _covolume_ratio(self, q: int, name: str) -> List[str]:
        """log D(Λ_{γz}) − log D(Λ_z) = log|a| − log|d| para γ ∈ C_N"""
        rng = self.rng(name)
        L = extension_field(q, 2)
        failures = []
        for _ in range(self.covolume_samples // self.covolume_chunks):
            z = random_omega_point(rng, L)
            N = random_monic(rng, L.ground, rng.randint(1, 2))
            m = rng.choice(arith_service.enumerate_cn(N))
            label = f"z = {z}, γ = ({m.a}, {m.b}; 0, {m.d})"
            try:
                if not heights_service.covolume_ratio_holds(z, m):
                    failures.append(label)
            except DrinfeldToolkitError as err:
                failures.append(f"{label}: {type(err).__name__}: {err}")
        return failures

    async def _phi(self, N: PolyA) -> BivarPolyA:
        return (await self._context.phi_service.get_phi(N)).phi

    async def _hecke(self, N: PolyA, name: str) -> List[str]:
        phi = await self._phi(N)
        return await asyncio.to_thread(self._hecke_samples, N, phi, name)

    def _hecke_samples(self, N: PolyA, phi: BivarPolyA, name: str) -> List[str]:
        """Identidad local en todo lugar finito relevante y banda del gap para j0 aleatorios"""
        rng = self.rng(name)
        failures = []
        for _ in range(self.j_samples):
            j0 = self._random_ratf(rng, N.field.order)
            for v in heights_service.local_identity_places(N, j0):
                row = heights_service.check_local_identity(N, j0, phi, v)
                if not row.passed:
                    failures.append(f"j0 = {j0}, v = {row.place}: {row.lhs} ≠ {row.rhs}")
            band = heights_service.hecke_gap_band(N, j0, phi)
            if not band.passed:
                failures.append(f"j0 = {j0}: gap {band.gap} fuera de [{band.lower}, {band.upper_interval}]")
        return failures

    async def _mahler(self, N: PolyA) -> List[str]:
        """h(Φ(X, y)) = Σ log⁺|raíces| en ∞ para y ∈ 𝔽_{q^k}, k ≤ mahler_max_k"""
        phi = await self._phi(N)
        q = N.field.order
        checks = []
        for k in range(1, self.mahler_max_k + 1):
            if q ** k > settings.limits.MAX_EXTENSION_ORDER:
                break
            F = extension_field(q, k)
            points = [y for y in F.elements() if k == 1 or not F.in_ground(y)]
            checks.extend(heights_service.mahler_check(phi, F, y) for y in points)
        return [f"y = {c.y}: h = {c.height}, Mahler {c.mahler}" for c in checks if not c.passed]
