# app/modules/farey/api/commands.py - Subcomando farey
import argparse

from app.modules.farey.schemas.farey import FareyFractionOut, FareyListOut
from app.modules.farey.services import farey_service
from app.shared.commands import BaseCommand


class FareyCommand(BaseCommand):
    name = "farey"
    help = "Sucesión de Farey F_M de 𝔽_q[t] y comprobación de la partición de la bola unidad"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        self.add_q(parser)
        parser.add_argument("--M", type=int, required=True, help="orden M ≥ 1")
        parser.add_argument("--verify-partition", type=int, metavar="DEPTH", default=None,
                            help="comprobar la partición con todas las b/d de deg d ≤ DEPTH")

    async def _execute(self, args: argparse.Namespace) -> FareyListOut:
        field = self.ground(args)
        fractions = farey_service.enumerate_fm(field, args.M)
        partition = None
        if args.verify_partition is not None:
            partition = farey_service.verify_partition(field, args.M, args.verify_partition)
        return FareyListOut(
            q=args.q,
            M=args.M,
            size=len(fractions),
            fractions=[FareyFractionOut(h=c.h.to_string(), f=c.f.to_string()) for c in fractions],
            partition=partition,
        )

    def succeeded(self, result: FareyListOut) -> bool:
        return result.partition is None or not result.partition.failures
