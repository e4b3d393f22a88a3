# app/modules/omega/api/commands.py - Subcomando omega-reduce
import argparse

from app.core.parsing import parse_puiseux
from app.modules.omega.models.omega_point import OmegaPoint
from app.modules.omega.schemas.omega import OmegaReductionOut
from app.modules.omega.services import omega_service
from app.shared.commands import BaseCommand


class OmegaReduceCommand(BaseCommand):
    name = "omega-reduce"
    help = "Reduce z ∈ Ω al dominio fundamental y calcula |z|_i y el perfil del retículo"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        self.add_q(parser)
        parser.add_argument("--m", type=int, default=2, help="grado de la extensión 𝔽_{q^m} de los coeficientes")
        parser.add_argument("--z", required=True, help="elemento de Puiseux en pi, p. ej. 'pi+pi^3+w*pi^6'")
        parser.add_argument("--profile", action="store_true", help="incluir mínimos sucesivos y covolumen")

    async def _execute(self, args: argparse.Namespace) -> OmegaReductionOut:
        z = OmegaPoint.certify(parse_puiseux(args.z, self.extension(args)))
        summary = omega_service.reduction_summary(z, with_profile=args.profile)
        return OmegaReductionOut(q=args.q, **summary)
