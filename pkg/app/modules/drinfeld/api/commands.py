# app/modules/drinfeld/api/commands.py - Subcomando drinfeld-quotients
import argparse

from app.core.parsing import format_element, parse_element
from app.core.polynomials import PolyA
from app.modules.drinfeld.models.module import AFieldFinite
from app.modules.drinfeld.schemas.drinfeld import DrinfeldQuotientsOut, QuotientOut
from app.modules.drinfeld.services import drinfeld_service
from app.shared.commands import BaseCommand

# generador del campo de torsión en la salida; w queda para el generador de L
TORSION_SYMBOL = "u"


class DrinfeldQuotientsCommand(BaseCommand):
    name = "drinfeld-quotients"
    help = "Lista j(φ/C) para los submódulos cíclicos C ≅ A/N de φ[N]"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        self.add_q(parser)
        parser.add_argument("--m", type=int, default=1, help="grado de L sobre 𝔽_q")
        parser.add_argument("--theta", required=True,
                            help="imagen de t en L (polinomio en w; a es el generador de 𝔽_q si q no es primo)")
        parser.add_argument("--j", required=True, help="j-invariante de φ en L")
        parser.add_argument("--N", required=True)

    async def _execute(self, args: argparse.Namespace) -> DrinfeldQuotientsOut:
        L = self.extension(args)
        base = AFieldFinite(L, parse_element(args.theta, L))
        N = self.modulus(args, args.N)
        j0 = parse_element(args.j, L)
        phi = drinfeld_service.module_from_j(j0, base)

        rows = []
        degree = 1
        torsion_modulus = None
        if N.degree == 0:
            C = drinfeld_service.cyclic_submodules(phi, N)[0]
            j = format_element(drinfeld_service.j_invariant(phi), L)
            rows.append(QuotientOut(a=C.a.to_string(), b=C.b.to_string(), d=C.d.to_string(),
                                    j=j, j_in_base=j, kernel_tau_degree=0))
        else:
            data = drinfeld_service.torsion_basis(phi, N)
            L2 = data.module.L
            degree = L2.ground_dimension // L.ground_dimension
            symbol = "w" if L2 is L else TORSION_SYMBOL
            if L2 is not L:
                torsion_modulus = PolyA(L2.base, L2.modulus).to_string(symbol)
            for C in drinfeld_service.cyclic_submodules(phi, N, data):
                quotient, u = drinfeld_service.quotient_by(data.module, C)
                j = drinfeld_service.j_invariant(quotient)
                pre = data.embedding.preimage(j)
                rows.append(QuotientOut(a=C.a.to_string(), b=C.b.to_string(), d=C.d.to_string(),
                                        j=format_element(j, L2, symbol),
                                        j_in_base=None if pre is None else format_element(pre, L),
                                        kernel_tau_degree=u.degree))
        return DrinfeldQuotientsOut(
            q=args.q,
            m=L.ground_dimension,
            theta=format_element(base.theta, L),
            j=format_element(j0, L),
            N=N.to_string(),
            char_poly=base.char_poly.to_string(),
            torsion_field_degree=degree,
            torsion_field_modulus=torsion_modulus,
            quotients=rows,
        )
