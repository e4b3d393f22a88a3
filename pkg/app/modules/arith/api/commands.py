# app/modules/arith/api/commands.py - Subcomando arith
import argparse

from app.modules.arith.schemas.profile import ArithReport, CNMatrixOut
from app.modules.arith.services import arith_service
from app.shared.commands import BaseCommand


class ArithCommand(BaseCommand):
    name = "arith"
    help = "Funciones aritméticas de N, el conjunto C_N y la banda de alturas"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        self.add_q(parser)
        parser.add_argument("--N", required=True, help="polinomio mónico en t")
        parser.add_argument("--no-matrices", action="store_true", help="omitir la lista de C_N")

    async def _execute(self, args: argparse.Namespace) -> ArithReport:
        N = self.modulus(args, args.N)
        matrices = [] if args.no_matrices else [CNMatrixOut(**m.to_dict()) for m in arith_service.enumerate_cn(N)]
        return ArithReport(
            profile=arith_service.arith_profile(N),
            band=arith_service.height_band(N),
            cn_matrices=matrices,
        )
