# app/verification/suites/farey_suite.py - Partición de la bola unidad, lema de conteo y representantes ẑ_γ
from fractions import Fraction
from functools import partial
from typing import List

from app.core.exceptions import DrinfeldToolkitError
from app.core.fields import FiniteField, extension_field, ground_field
from app.core.matrices import Matrix2
from app.core.polynomials import PolyA, RatF
from app.core.series import PuiseuxElement
from app.modules.arith.models.cn_matrix import CNMatrix
from app.modules.farey.models.farey import FareyBall
from app.modules.farey.services import farey_service
from app.modules.omega.models.omega_point import OmegaPoint
from app.modules.omega.services import omega_service
from app.verification.suites.base_suite import BaseSuite, SuiteCase, random_monic, random_poly


class FareySuite(BaseSuite):
    max_M = 3
    partition_samples = 100
    counting_samples = 10
    representative_samples = 100
    representative_chunks = 4
    # por encima de este tamaño la disyunción se comprueba por volumen y muestreo
    pairwise_limit = 256

    def _cases(self) -> List[SuiteCase]:
        cases = []
        for q in self.qs():
            F = ground_field(q)
            for M in range(1, self.max_M + 1):
                name = f"partition:q{q}:M{M}"
                cases.append(SuiteCase(name, partial(self._partition, F, M, name)))
                name = f"counting:q{q}:M{M}"
                cases.append(SuiteCase(name, partial(self._counting, F, M, name)))
            for chunk in range(self.representative_chunks):
                name = f"representative:q{q}:{chunk}"
                cases.append(SuiteCase(name, partial(self._representatives, q, name)))
        return cases

    def _partition(self, F: FiniteField, M: int, name: str) -> List[str]:
        """Volumen total q^{−1}, muestras en exactamente una bola y recorrido exhaustivo hasta grado 2"""
        q = F.order
        fractions = farey_service.enumerate_fm(F, M)
        balls = [FareyBall(c, M) for c in fractions]
        failures: List[str] = []

        volume = sum((Fraction(1, q ** ball.radius_valuation) for ball in balls), Fraction(0))
        if volume != Fraction(1, q):
            failures.append(f"volumen de las bolas {volume} ≠ 1/{q}")
        if len(fractions) <= self.pairwise_limit:
            failures.extend(farey_service.balls_disjoint(fractions, M))

        rng = self.rng(name)
        for _ in range(self.partition_samples):
            d = random_monic(rng, F, rng.randint(1, M + 3))
            zeta = RatF(random_poly(rng, F, d.degree), d)
            center = farey_service.locate_ball(zeta, M)
            containing = [ball.center for ball in balls if ball.contains(zeta)]
            if containing != [center]:
                failures.append(f"{zeta} está en {[str(c) for c in containing]}, locate_ball da {center}")

        failures.extend(farey_service.verify_partition(F, M, 2).failures)
        return failures

    def _counting(self, F: FiniteField, M: int, name: str) -> List[str]:
        """Fórmula |d|/(|e||f|q^M) frente a la enumeración, en su versión con congruencia y con coprimalidad"""
        rng = self.rng(name)
        fractions = farey_service.enumerate_fm(F, M)
        failures: List[str] = []
        for _ in range(self.counting_samples):
            center = rng.choice(fractions)
            slack = rng.randint(0, 3 - center.f.degree)
            d = random_monic(rng, F, center.f.degree + M + slack)
            e = random_monic(rng, F, rng.randint(0, slack))
            r = random_poly(rng, F, e.degree)
            coprime = rng.random() < 0.5
            try:
                farey_service.count_in_ball(d, e, r, M, center, check=True, coprime=coprime)
            except DrinfeldToolkitError as err:
                failures.append(f"d = {d}, e = {e}, r = {r}, bola D_{M}({center}): {err}")
        return failures

    def _representatives(self, q: int, name: str) -> List[str]:
        """|ẑ|_i ≥ q^{−2}, la cota superior de log|ẑ|_i y |z̃|_i ≤ q⁴|ẑ|_i con z̃ de la reducción independiente"""
        rng = self.rng(name)
        L = extension_field(q, 2)
        F = L.ground
        failures: List[str] = []
        for _ in range(self.representative_samples // self.representative_chunks):
            k = rng.randint(0, 3)
            terms = {-k: rng.randrange(q, L.order)}
            for i in range(k):
                terms[-i] = rng.randrange(q)
            terms[rng.randint(1, 2)] = rng.randrange(L.order)
            z = OmegaPoint.certify(PuiseuxElement(L, terms))
            N = random_monic(rng, F, k + 1 + rng.randint(0, 1))
            gamma = CNMatrix(a=PolyA.one(F), b=random_poly(rng, F, N.degree), d=N)
            label = f"z = {z}, γ = (1, {gamma.b}; 0, {N})"
            try:
                rep = farey_service.farey_representative(z, gamma)
                image = omega_service.apply_gl2(Matrix2.of(F, *gamma.entries()), z)
                reduced = omega_service.reduce_to_fundamental(image).reduced
            except DrinfeldToolkitError as err:
                failures.append(f"{label}: {type(err).__name__}: {err}")
                continue
            if omega_service.im_abs(reduced) > omega_service.im_abs(rep.z_hat) + 4:
                failures.append(f"{label}: log|z̃|_i = {omega_service.im_abs(reduced)} > "
                                f"log|ẑ|_i + 4 = {omega_service.im_abs(rep.z_hat) + 4}")
        return failures
