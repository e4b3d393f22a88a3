# app/modules/btree/schemas/tree.py - Salida de bt-reduce
from typing import Dict, List, Optional

from app.shared.schemas import ExactModel


class VertexOut(ExactModel):
    k: int
    u: str


class BtReduceOut(ExactModel):
    q: int
    vertex: VertexOut
    case: int
    k_prime: int
    gamma: Dict[str, str]
    verified: bool
    neighbours: List[VertexOut]
    path_to_spine: List[VertexOut]
    oracle_k_prime: Optional[int] = None
