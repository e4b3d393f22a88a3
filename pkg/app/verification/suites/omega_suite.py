# app/verification/suites/omega_suite.py - Retículo del ejemplo, equivalencias de retículo reducido y |γz|_i
from fractions import Fraction
from functools import partial
from typing import List

from app.core.exceptions import DrinfeldToolkitError
from app.core.fields import extension_field
from app.core.series import PuiseuxElement
from app.modules.btree.services.tree_service import gamma_matrices
from app.modules.omega.models.omega_point import OmegaPoint
from app.modules.omega.services import omega_service
from app.verification.suites.base_suite import BaseSuite, SuiteCase, random_omega_point


class OmegaSuite(BaseSuite):
    reduced_lattice_samples = 30
    imtrans_samples = 100

    def _cases(self) -> List[SuiteCase]:
        cases = []
        if 2 in self.qs():
            cases.append(SuiteCase("lattice_example:q2", self._lattice_example))
        for q in self.qs():
            for kind, check in (("reduced_lattice", self._reduced_lattice), ("imtrans", self._imtrans)):
                name = f"{kind}:q{q}"
                cases.append(SuiteCase(name, partial(check, q, name)))
        return cases

    @staticmethod
    def _lattice_example() -> List[str]:
        """z = π + π³ + uπ⁶ con u ∈ 𝔽₄ ∖ 𝔽₂"""
        L = extension_field(2, 2)
        z = OmegaPoint.certify(PuiseuxElement(L, {1: 1, 3: 1, 6: 2}))
        profile = omega_service.lattice_profile(z)
        expected = {"covolume_log": Fraction(-6), "min1": Fraction(-3), "min2": Fraction(-3),
                    "im_abs": Fraction(-6), "reduced": False}
        return [f"{field} = {getattr(profile, field)}, se esperaba {value}"
                for field, value in expected.items() if getattr(profile, field) != value]

    def _reduced_lattice(self, q: int, name: str) -> List[str]:
        """Las cinco condiciones de retículo reducido coinciden y covolumen = log|z|_i"""
        rng = self.rng(name)
        L = extension_field(q, 2)
        failures = []
        for _ in range(self.reduced_lattice_samples):
            z = random_omega_point(rng, L)
            try:
                predicates = omega_service.reduced_lattice_predicates(z)
            except DrinfeldToolkitError as err:
                failures.append(f"z = {z}: {type(err).__name__}: {err}")
                continue
            if len(set(predicates.values())) != 1:
                failures.append(f"z = {z}: {predicates}")
        return failures

    def _imtrans(self, q: int, name: str) -> List[str]:
        """log|γz|_i = log|det γ| − 2 log|cz + d| + log|z|_i para γ ∈ GL₂(A) de grado ≤ 1"""
        rng = self.rng(name)
        L = extension_field(q, 2)
        matrices = list(gamma_matrices(L.ground, 1))
        failures = []
        for _ in range(self.imtrans_samples):
            z = random_omega_point(rng, L)
            gamma = rng.choice(matrices)
            try:
                if not omega_service.imtrans_holds(gamma, z):
                    failures.append(f"z = {z}, γ = {gamma}")
            except DrinfeldToolkitError as err:
                failures.append(f"z = {z}, γ = {gamma}: {type(err).__name__}: {err}")
        return failures
