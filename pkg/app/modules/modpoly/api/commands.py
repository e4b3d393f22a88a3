# app/modules/modpoly/api/commands.py - Subcomando modpoly
import argparse
from pathlib import Path

import aiofiles

from app.config.cache import GlobalCacheService
from app.modules.modpoly.schemas.modpoly import ModpolyChecksOut, ModpolyReport
from app.modules.modpoly.services import modpoly_service
from app.modules.modpoly.services.modpoly_service import ModularPolynomialService
from app.shared.commands import BaseCommand
from app.shared.utils.formatting import canonical_json


class ModpolyCommand(BaseCommand):
    name = "modpoly"
    help = "Calcula Φ_N ∈ A[X, Y] por interpolación y CRT, con su altura y comprobaciones"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        self.add_q(parser)
        parser.add_argument("--N", required=True, help="polinomio mónico en t")
        parser.add_argument("--out", help="archivo JSON donde escribir Φ_N")
        parser.add_argument("--check", choices=["none", "all"], default="none")
        parser.add_argument("--trials", type=int, default=50, help="ensayos de la relación de raíces")
        parser.add_argument("--pretty", action="store_true", help="imprimir Φ_N en forma de texto")
        parser.add_argument("--refresh", action="store_true", help="ignorar la caché y recalcular")

    async def _execute(self, args: argparse.Namespace):
        N = self.modulus(args, args.N)
        service = ModularPolynomialService(GlobalCacheService().get_service(), getattr(args, "workers", 1))
        result = await service.get_phi(N, refresh=args.refresh)
        phi = result.phi
        if args.pretty:
            return phi.to_pretty()

        out = modpoly_service.to_output(phi)
        if args.out:
            Path(args.out).parent.mkdir(parents=True, exist_ok=True)
            async with aiofiles.open(args.out, "w", encoding="utf-8") as f:
                await f.write(canonical_json(out.to_json_dict()) + "\n")

        checks = None
        if args.check == "all":
            checks = ModpolyChecksOut(
                monic_in_x=phi.is_monic_in_x(),
                symmetric=phi.is_symmetric(),
                degrees=[phi.degree_x, phi.degree_y],
                height_band=modpoly_service.verify_height_band(phi),
                root_relation=modpoly_service.verify_root_relation(
                    phi, args.trials, getattr(args, "seed", 0), exclude=result.primes + [result.stability_prime]),
                witness=modpoly_service.specialization_height_witness(phi),
            )
        return ModpolyReport(phi=out, crt=result.crt_out(), checks=checks, out=args.out)

    def succeeded(self, result) -> bool:
        if not isinstance(result, ModpolyReport) or result.checks is None:
            return True
        c = result.checks
        return (c.monic_in_x and (c.symmetric or result.phi.N == "1") and c.degrees == [result.phi.psi] * 2
                and c.height_band.passed and c.height_band.implied_bq_nonnegative and c.root_relation.passed)
