# app/verification/suites/arith_suite.py - Identidades de S_N, ψ y C_N
from fractions import Fraction
from functools import partial
from typing import List

from app.core.fields import FiniteField, ground_field
from app.core.polynomials import PolyA, gcd, monic_irreducibles, monic_polys
from app.modules.arith.services import arith_service
from app.verification.suites.base_suite import BaseSuite, SuiteCase, random_monic


class ArithSuite(BaseSuite):
    """S_N cerrado frente a la suma sobre C_N para todo N mónico de grado ≤ 3, y multiplicatividad"""

    default_qs = (2, 3, 4)
    max_degree = 3
    pairs = 50

    def _cases(self) -> List[SuiteCase]:
        cases = []
        for q in self.qs():
            F = ground_field(q)
            for degree in range(1, self.max_degree + 1):
                for N in monic_polys(F, degree):
                    cases.append(SuiteCase(f"identity:q{q}:{N}", partial(self._identity, N)))
            cases.append(SuiteCase(f"prime_power:q{q}", partial(self._prime_powers, F)))
            name = f"multiplicative:q{q}"
            cases.append(SuiteCase(name, partial(self._multiplicative, F, name)))
        return cases

    @staticmethod
    def _identity(N: PolyA) -> List[str]:
        failures = []
        closed, direct = arith_service.s_n_closed(N), arith_service.s_n_direct(N)
        if closed != direct:
            failures.append(f"S_N cerrado {closed} ≠ Σ_C (deg d − deg a) = {direct}")
        if arith_service.sum_log_a_over_d(N) != -closed:
            failures.append("Σ log(|a|/|d|) ≠ −S_N")
        if len(arith_service.enumerate_cn(N)) != arith_service.psi(N):
            failures.append(f"#C_N ≠ ψ(N) = {arith_service.psi(N)}")
        lam = arith_service.lambda_N(N)
        if not 0 <= lam <= Fraction(N.degree, 2):
            failures.append(f"λ_N = {lam} fuera de [0, deg N/2]")
        if arith_service.units_count(N) != arith_service.euler_phi(N):
            failures.append("#(A/N)^* ≠ φ(N)")
        band = arith_service.height_band(N)
        if not band.lower <= band.upper_proof <= band.upper:
            failures.append(f"banda mal ordenada: {band.lower}, {band.upper_proof}, {band.upper}")
        return failures

    @staticmethod
    def _prime_powers(F: FiniteField) -> List[str]:
        failures = []
        for P in monic_irreducibles(F, 1) + monic_irreducibles(F, 2):
            for r in range(1, 4):
                if P.degree * r > 4:
                    continue
                closed = arith_service.s_prime_power(P, r)
                if closed != arith_service.s_n_closed(P ** r):
                    failures.append(f"S_{{({P})^{r}}}: forma de potencia de primo {closed} ≠ S_N")
        return failures

    def _multiplicative(self, F: FiniteField, name: str) -> List[str]:
        """S_{MN} = ψ(N)S_M + ψ(M)S_N sobre pares coprimos, con S por suma directa"""
        rng = self.rng(name)
        failures: List[str] = []
        found = attempts = 0
        while found < self.pairs and attempts < 20 * self.pairs:
            attempts += 1
            M = random_monic(rng, F, rng.randint(1, 2))
            N = random_monic(rng, F, rng.randint(1, 2))
            if gcd(M, N).degree != 0:
                continue
            found += 1
            lhs = arith_service.s_n_direct(M * N)
            rhs = arith_service.psi(N) * arith_service.s_n_direct(M) + arith_service.psi(M) * arith_service.s_n_direct(N)
            if lhs != rhs:
                failures.append(f"M = {M}, N = {N}: S_MN = {lhs} ≠ {rhs}")
        if found < self.pairs:
            failures.append(f"solo {found} pares coprimos de {self.pairs}")
        return failures
