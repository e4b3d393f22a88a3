# app/modules/btree/api/commands.py - Subcomando bt-reduce
import argparse

from app.core.parsing import parse_tail
from app.modules.btree.models.tree import TreeVertex
from app.modules.btree.schemas.tree import BtReduceOut, VertexOut
from app.modules.btree.services import tree_service
from app.shared.commands import BaseCommand


def _vertex_out(v: TreeVertex) -> VertexOut:
    return VertexOut(**v.to_dict())


class BtReduceCommand(BaseCommand):
    name = "bt-reduce"
    help = "Reduce un vértice v(k, u) del árbol de Bruhat–Tits al espinazo con testigo γ ∈ GL₂(A)"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        self.add_q(parser)
        parser.add_argument("--k", type=int, required=True)
        parser.add_argument("--u", default="0", help="u₀ + cola en pi, p. ej. 't^2+1+pi^2'")
        parser.add_argument("--oracle", action="store_true", help="contrastar con la búsqueda acotada")

    async def _execute(self, args: argparse.Namespace) -> BtReduceOut:
        u = parse_tail(args.u, self.ground(args))
        vertex = TreeVertex(args.k, u)
        witness = tree_service.reduce_vertex(vertex)
        oracle = tree_service.brute_force_spine_index(vertex) if args.oracle else None
        return BtReduceOut(
            q=args.q,
            vertex=_vertex_out(vertex),
            case=witness.case,
            k_prime=witness.k_prime,
            gamma=witness.gamma.to_dict(),
            verified=witness.verified,
            neighbours=[_vertex_out(w) for w in tree_service.adjacency(vertex)],
            path_to_spine=[_vertex_out(w) for w in tree_service.path_to_spine(vertex)],
            oracle_k_prime=oracle,
        )

    def succeeded(self, result: BtReduceOut) -> bool:
        return result.verified and result.oracle_k_prime in (None, result.k_prime)
