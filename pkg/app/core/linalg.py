# app/core/linalg.py - Eliminación gaussiana sobre 𝔽_q
from typing import List, Optional, Sequence

Vector = List[int]


def _axpy(F, y: Sequence[int], a: int, x: Sequence[int]) -> Vector:
    """y + a·x"""
    if a == 0:
        return list(y)
    return [F.add(yi, F.mul(a, xi)) if xi else yi for yi, xi in zip(y, x)]


class SpanDecomposer:
    """Escalona una familia de vectores y expresa vectores en su span"""

    def __init__(self, F, vectors: Sequence[Sequence[int]]):
        self.F = F
        self.size = len(vectors)
        self.width = len(vectors[0]) if vectors else 0
        # filas escalonadas + combinación que las produce
        self._rows: List[Vector] = []
        self._combos: List[Vector] = []
        self._pivots: List[int] = []
        self.dependent: List[int] = []
        for index, v in enumerate(vectors):
            combo = [0] * self.size
            combo[index] = 1
            row, combo = self._reduce(list(v), combo)
            pivot = next((i for i, c in enumerate(row) if c), None)
            if pivot is None:
                self.dependent.append(index)
                continue
            inv = F.inv(row[pivot])
            self._rows.append([F.mul(c, inv) for c in row])
            self._combos.append([F.mul(c, inv) for c in combo])
            self._pivots.append(pivot)

    def _reduce(self, row: Vector, combo: Vector):
        F = self.F
        for prow, pcombo, pivot in zip(self._rows, self._combos, self._pivots):
            c = row[pivot]
            if c:
                factor = F.neg(c)
                row = _axpy(F, row, factor, prow)
                combo = _axpy(F, combo, factor, pcombo)
        return row, combo

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> List[Vector]:
        """Base escalonada del span"""
        return [list(r) for r in self._rows]

    def coordinates(self, target: Sequence[int]) -> Optional[Vector]:
        """c con Σ c_i v_i = target, o None si target no está en el span"""
        F = self.F
        combo = [0] * self.size
        row, combo = self._reduce(list(target), combo)
        if any(row):
            return None
        return [F.neg(c) for c in combo]

    def contains(self, target: Sequence[int]) -> bool:
        return self.coordinates(target) is not None


def rank(F, vectors: Sequence[Sequence[int]]) -> int:
    return SpanDecomposer(F, vectors).rank if vectors else 0


def kernel(F, columns: Sequence[Sequence[int]]) -> List[Vector]:
    """Base del núcleo de la matriz cuyas columnas se dan: {c : Σ c_i col_i = 0}"""
    decomposer = SpanDecomposer(F, columns)
    basis = []
    for index in decomposer.dependent:
        # la columna dependiente se reduce a cero; su combinación es un vector del núcleo
        combo = [0] * len(columns)
        combo[index] = 1
        row, combo = decomposer._reduce(list(columns[index]), combo)
        basis.append(combo)
    return basis


def span_elements(F, basis: Sequence[Sequence[int]]) -> List[Vector]:
    """Todos los vectores del 𝔽_q-span (|F|^dim elementos)"""
    width = len(basis[0]) if basis else 0
    elements: List[Vector] = [[0] * width]
    for v in basis:
        grown = []
        for c in range(F.order):
            for e in elements:
                grown.append(_axpy(F, e, c, v))
        elements = grown
    return elements
