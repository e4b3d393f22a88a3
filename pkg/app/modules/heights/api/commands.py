# app/modules/heights/api/commands.py - Subcomando hecke-heights
import argparse
import csv
import io
from fractions import Fraction
from pathlib import Path

import aiofiles

from app.config.cache import GlobalCacheService
from app.core.parsing import parse_ratfun
from app.modules.arith.services import arith_service
from app.modules.heights.schemas.heights import HeckeHeightsReport, LocalTermOut
from app.modules.heights.services import heights_service
from app.modules.modpoly.services.modpoly_service import ModularPolynomialService
from app.shared.commands import BaseCommand
from app.shared.utils.formatting import rational_to_str


class HeckeHeightsCommand(BaseCommand):
    name = "hecke-heights"
    help = "Suma de alturas de las imágenes de Hecke de j0 vía Φ_N, identidad local y banda"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        self.add_q(parser)
        parser.add_argument("--N", required=True)
        parser.add_argument("--j", required=True, help="j0 ∈ F = 𝔽_q(t), p. ej. '1/t'")
        parser.add_argument("--report", help="CSV con los términos locales (lugar, término)")

    async def _execute(self, args: argparse.Namespace) -> HeckeHeightsReport:
        N = self.modulus(args, args.N)
        j0 = parse_ratfun(args.j, self.ground(args))
        service = ModularPolynomialService(GlobalCacheService().get_service(), getattr(args, "workers", 1))
        phi = (await service.get_phi(N)).phi

        terms = [LocalTermOut(place=v.label(), degree=v.degree, gauss_lognorm=g, local_term=Fraction(v.degree * g))
                 for v, g in heights_service.hecke_local_terms(j0, phi)]
        identities = [heights_service.check_local_identity(N, j0, phi, v)
                      for v in heights_service.local_identity_places(N, j0)]
        if args.report:
            await self._write_csv(args.report, terms)
        return HeckeHeightsReport(
            q=args.q,
            N=N.to_string(),
            j=j0.to_string(),
            psi=arith_service.psi(N),
            h_j=heights_service.weil_height(j0),
            hecke_sum=heights_service.hecke_height_sum(N, j0, phi),
            terms=terms,
            local_identity=identities,
            band=heights_service.hecke_gap_band(N, j0, phi),
            report=args.report,
        )

    @staticmethod
    async def _write_csv(path: str, terms) -> None:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["place", "degree", "gauss_lognorm", "local_term"])
        for term in terms:
            writer.writerow([term.place, term.degree, term.gauss_lognorm, rational_to_str(term.local_term)])
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        async with aiofiles.open(path, "w", encoding="utf-8") as f:
            await f.write(buffer.getvalue())

    def succeeded(self, result: HeckeHeightsReport) -> bool:
        return result.band.passed and all(row.passed for row in result.local_identity)
