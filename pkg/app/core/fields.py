# app/core/fields.py - Campos finitos, torres de extensiones y encajes
"""
Campos finitos exactos.

Un elemento es un entero ("código"). En 𝔽_p el código es el residuo. En una extensión
simple K = B[w]/(m(w)) el código es Σ c_i·|B|^i con c_i códigos de B. Así los elementos de
B conservan su código dentro de K, y la suma es dígito a dígito en base p.

Backends de multiplicación:
    - primo: aritmética modular directa
    - binario (B = 𝔽_2): polinomios como máscaras de bits (clmul + reducción)
    - tablas log/antilog + Zech para campos pequeños
    - genérico: lista de dígitos y reducción por el módulo

Uso:
    F4 = ground_field(4)
    L = build_extension(FieldDesc.of(2), 6).field
    roots = split_roots([1, 1, 1], L)   # raíces de x²+x+1 en 𝔽_64
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

from sympy import factorint, isprime, perfect_power

from app.config.settings import settings
from app.core import dense
from app.core.exceptions import SizeCapExceeded, UnsupportedField

logger = logging.getLogger(__name__)


class FiniteField:
    """𝔽_p (base None) o extensión simple de `base` por un módulo mónico irreducible"""

    def __init__(self, p: int, base: Optional["FiniteField"] = None,
                 modulus: Optional[Tuple[int, ...]] = None, canonical: bool = False,
                 is_ground: bool = False):
        self.p = p
        self.base = base
        self.modulus = tuple(modulus) if modulus is not None else None
        self.canonical = canonical
        if base is None:
            self.degree = 1
            self.order = p
        else:
            self.degree = len(self.modulus) - 1
            self.order = base.order ** self.degree
        # toda extensión no base es simple sobre 𝔽_q
        self.ground = self if base is None or is_ground else base
        self._tables: Optional[Tuple[List[int], List[int], Optional[List[int]]]] = None
        self._binary_modulus: Optional[int] = None
        self._setup_backend()

    # ===== CONSTRUCCIÓN =====

    @property
    def key(self) -> tuple:
        return (self.p, self.base.key if self.base is not None else None, self.modulus)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        if self.base is None:
            return f"GF({self.p})"
        return f"GF({self.order}; {list(self.modulus)} sobre {self.base!r})"

    def _setup_backend(self) -> None:
        if self.base is None:
            self.backend = "prime"
            return
        if self.base.base is None and self.p == 2:
            self.backend = "binary"
            self._binary_modulus = sum(bit << i for i, bit in enumerate(self.modulus))
            return
        self.backend = "generic"
        if self.order <= settings.limits.TABLE_ORDER_LIMIT:
            self._build_tables()

    @property
    def absolute_degree(self) -> int:
        return self.degree * (self.base.absolute_degree if self.base is not None else 1)

    @property
    def generator(self) -> int:
        """Código de la clase de w (o 1 en un campo primo)"""
        return 1 if self.base is None else self.base.order

    # ===== ARITMÉTICA =====

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.base is None:
            s = a + b
            return s - self.p if s >= self.p else s
        if self._tables is not None:
            if a == 0:
                return b
            if b == 0:
                return a
            exp, log, zech = self._tables
            k = log[b] - log[a]
            z = zech[k % (self.order - 1)]
            if z < 0:
                return 0
            return exp[(log[a] + z) % (self.order - 1)]
        return _flat_add(a, b, self.p)

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        if self.base is None:
            return self.p - a
        return _flat_neg(a, self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.base is None:
            return a * b % self.p
        if self._tables is not None:
            exp, log, _ = self._tables
            return exp[(log[a] + log[b]) % (self.order - 1)]
        if self.backend == "binary":
            return _clmul_mod(a, b, self._binary_modulus, self.degree)
        return self._generic_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverso de cero en un campo finito")
        if self.base is None:
            return pow(a, self.p - 2, self.p)
        if self._tables is not None:
            exp, log, _ = self._tables
            return exp[(-log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        if self.base is None:
            return pow(a, e, self.p)
        if self._tables is not None:
            exp, log, _ = self._tables
            return exp[(log[a] * e) % (self.order - 1)]
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def frobenius(self, a: int, times: int = 1) -> int:
        """a ↦ a^{q^times} con q el orden del campo base de la torre"""
        q = self.ground.order
        for _ in range(times):
            a = self.pow(a, q)
        return a

    def scalar(self, n: int) -> int:
        """Imagen del entero n"""
        return n % self.p

    # ===== DÍGITOS =====

    def digits(self, a: int) -> List[int]:
        if self.base is None:
            return [a]
        B = self.base.order
        out = []
        for _ in range(self.degree):
            a, d = divmod(a, B)
            out.append(d)
        return out

    def from_digits(self, digits: Sequence[int]) -> int:
        if self.base is None:
            return digits[0] if digits else 0
        B = self.base.order
        code = 0
        for d in reversed(digits):
            code = code * B + d
        return code

    def ground_coordinates(self, a: int) -> List[int]:
        """Coordenadas sobre 𝔽_q"""
        return [a] if self is self.ground else self.digits(a)

    def from_ground_coordinates(self, coords: Sequence[int]) -> int:
        if self is self.ground:
            return coords[0] if coords else 0
        return self.from_digits(coords)

    @property
    def ground_dimension(self) -> int:
        return 1 if self is self.ground else self.degree

    def in_ground(self, a: int) -> bool:
        return a < self.ground.order

    def elements(self) -> Iterator[int]:
        return iter(range(self.order))

    # ===== BACKENDS =====

    def _generic_mul(self, a: int, b: int) -> int:
        F = self.base
        n = self.degree
        prod = dense.mul(F, self.digits(a), self.digits(b))
        if len(prod) > n:
            prod = _reduce_digits(F, prod, self.modulus)
        return self.from_digits(prod + [0] * (n - len(prod)))

    def _mul_by_linear(self, a: int, c: int) -> int:
        """a·(w + c) usando solo operaciones del campo base"""
        F = self.base
        n = self.degree
        x = self.digits(a)
        top = x[-1]
        shifted = [0] + x[:-1]
        if top:
            shifted = [F.sub(shifted[i], F.mul(top, self.modulus[i])) for i in range(n)]
        if c:
            shifted = [F.add(shifted[i], F.mul(c, x[i])) for i in range(n)]
        return self.from_digits(shifted)

    def _build_tables(self) -> None:
        Q = self.order
        primes = list(factorint(Q - 1).keys())
        for c in range(self.base.order):
            g = self.from_digits([c] + [1] + [0] * (self.degree - 2))
            if all(self._generic_pow(g, (Q - 1) // r) != 1 for r in primes):
                exp = [0] * (Q - 1)
                log = [0] * Q
                e = 1
                for k in range(Q - 1):
                    exp[k] = e
                    log[e] = k
                    e = self._mul_by_linear(e, c)
                zech = None
                if self.p != 2:
                    zech = [0] * (Q - 1)
                    for k in range(Q - 1):
                        s = _flat_add(exp[k], 1, self.p)
                        zech[k] = -1 if s == 0 else log[s]
                self._tables = (exp, log, zech)
                logger.debug(f"🔧 Tablas log/antilog construidas para {self!r}")
                return
        logger.debug(f"⚠️ Sin generador lineal primitivo para {self!r}; se usa el backend genérico")

    def _generic_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._generic_mul(result, base)
            e >>= 1
            if e:
                base = self._generic_mul(base, base)
        return result


def _flat_add(a: int, b: int, p: int) -> int:
    res, place = 0, 1
    while a or b:
        a, da = divmod(a, p)
        b, db = divmod(b, p)
        s = da + db
        if s >= p:
            s -= p
        res += s * place
        place *= p
    return res


def _flat_neg(a: int, p: int) -> int:
    res, place = 0, 1
    while a:
        a, d = divmod(a, p)
        if d:
            res += (p - d) * place
        place *= p
    return res


def _clmul_mod(a: int, b: int, modulus: int, n: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    for i in range(r.bit_length() - 1, n - 1, -1):
        if (r >> i) & 1:
            r ^= modulus << (i - n)
    return r


def _reduce_digits(F: FiniteField, prod: List[int], modulus: Tuple[int, ...]) -> List[int]:
    n = len(modulus) - 1
    prod = list(prod)
    for i in range(len(prod) - 1, n - 1, -1):
        c = prod[i]
        if c:
            for j in range(n):
                if modulus[j]:
                    prod[i - n + j] = F.sub(prod[i - n + j], F.mul(c, modulus[j]))
            prod[i] = 0
    return dense.normalize(prod[:n])


# ===== IRREDUCIBILIDAD =====

def is_irreducible(F: FiniteField, f: Sequence[int]) -> bool:
    """Ben-Or: f sin factores de grado ≤ deg f / 2"""
    f = dense.normalize(f)
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if f[0] == 0:
        return False
    if F.backend == "prime" and F.p == 2:
        return _is_irreducible_gf2(sum(bit << i for i, bit in enumerate(f)))
    B = F.order
    h = [0, 1]
    for _ in range(m // 2):
        h = dense.powmod(F, h, B, f)
        if len(dense.gcd(F, f, dense.sub(F, h, [0, 1]))) > 1:
            return False
    return True


def _gf2_mulmod(a: int, b: int, f: int, n: int) -> int:
    return _clmul_mod(a, b, f, n) if n > 0 else 0


def _gf2_gcd(a: int, b: int) -> int:
    while b:
        while a and a.bit_length() >= b.bit_length():
            a ^= b << (a.bit_length() - b.bit_length())
        a, b = b, a
    return a


def _is_irreducible_gf2(f: int) -> bool:
    n = f.bit_length() - 1
    h = 2
    for _ in range(n // 2):
        h = _gf2_mulmod(h, h, f, n)
        if _gf2_gcd(f, h ^ 2) != 1:
            return False
    return True


# ===== DESCRIPTORES =====

@dataclass(frozen=True)
class FieldDesc:
    """𝔽_q con q = p^e"""

    p: int
    e: int = 1
    modulus: Optional[Tuple[int, ...]] = None

    @property
    def q(self) -> int:
        return self.p ** self.e

    @classmethod
    def of(cls, q: int) -> "FieldDesc":
        return _field_desc(q)

    @property
    def field(self) -> FiniteField:
        return ground_field(self.q)


@dataclass(frozen=True)
class ExtFieldDesc:
    """𝔽_{q^m} con módulo léxicamente mínimo sobre 𝔽_q"""

    base: FieldDesc
    m: int
    modulus: Optional[Tuple[int, ...]] = None

    @property
    def order(self) -> int:
        return self.base.q ** self.m

    @property
    def field(self) -> FiniteField:
        return _extension_field(self.base.q, self.m)


def parse_prime_power(q: int) -> Tuple[int, int]:
    if q < 2:
        raise UnsupportedField(f"q = {q} no es potencia de primo")
    if isprime(q):
        return q, 1
    pp = perfect_power(q)
    if not pp or not isprime(pp[0]):
        if pp:
            base, exp = pp
            factors = factorint(base)
            if len(factors) == 1:
                (p, k), = factors.items()
                return p, k * exp
        raise UnsupportedField(f"q = {q} no es potencia de primo")
    return int(pp[0]), int(pp[1])


@lru_cache(maxsize=None)
def _field_desc(q: int) -> FieldDesc:
    p, e = parse_prime_power(q)
    if q > settings.limits.MAX_BASE_FIELD_ORDER:
        raise SizeCapExceeded(f"q = {q} supera el tope {settings.limits.MAX_BASE_FIELD_ORDER}")
    if e == 1:
        return FieldDesc(p=p, e=1)
    prime = _prime_field(p)
    return FieldDesc(p=p, e=e, modulus=least_irreducible(prime, e))


@lru_cache(maxsize=None)
def _prime_field(p: int) -> FiniteField:
    return FiniteField(p)


@lru_cache(maxsize=None)
def ground_field(q: int) -> FiniteField:
    """𝔽_q listo para operar"""
    desc = _field_desc(q)
    prime = _prime_field(desc.p)
    if desc.e == 1:
        return prime
    return FiniteField(desc.p, prime, desc.modulus, canonical=True, is_ground=True)


def least_irreducible(F: FiniteField, m: int) -> Tuple[int, ...]:
    """Mónico irreducible de grado m con el menor código Σ c_i |F|^i (i < m)"""
    B = F.order
    for code in range(B ** m):
        coeffs = []
        c = code
        for _ in range(m):
            c, d = divmod(c, B)
            coeffs.append(d)
        coeffs.append(1)
        if is_irreducible(F, coeffs):
            return tuple(coeffs)
    raise RuntimeError(f"sin irreducibles de grado {m} sobre {F!r}")


def build_extension(base: FieldDesc, m: int) -> ExtFieldDesc:
    """Descriptor determinista de 𝔽_{q^m}; m = 1 es el propio 𝔽_q"""
    if m < 1:
        raise ValueError("el grado de la extensión debe ser ≥ 1")
    if base.q ** m > settings.limits.MAX_EXTENSION_ORDER:
        raise SizeCapExceeded(f"𝔽_{{{base.q}^{m}}} supera el tope {settings.limits.MAX_EXTENSION_ORDER}")
    field = _extension_field(base.q, m)
    return ExtFieldDesc(base=base, m=m, modulus=None if m == 1 else field.modulus)


def extension_field(q: int, m: int, cap: Optional[int] = None) -> FiniteField:
    """Extensión canónica con un tope explícito (por defecto el de torsión)"""
    cap = cap if cap is not None else settings.limits.MAX_TORSION_FIELD_ORDER
    if q ** m > cap:
        raise SizeCapExceeded(f"𝔽_{{{q}^{m}}} supera el tope {cap}")
    return _extension_field(q, m)


@lru_cache(maxsize=None)
def _extension_field(q: int, m: int) -> FiniteField:
    ground = ground_field(q)
    if m == 1:
        return ground
    modulus = least_irreducible(ground, m)
    logger.debug(f"🔧 Extensión canónica de grado {m} sobre 𝔽_{q} construida")
    return FiniteField(ground.p, ground, modulus, canonical=True)


def simple_extension(base: FiniteField, modulus: Sequence[int]) -> FiniteField:
    """Campo B[x]/(modulus) para un módulo irreducible dado (p. ej. A/P)"""
    modulus = tuple(dense.normalize(modulus))
    if len(modulus) == 2:
        return base
    return _simple_extension(base, modulus)


@lru_cache(maxsize=None)
def _simple_extension(base: FiniteField, modulus: Tuple[int, ...]) -> FiniteField:
    if base.order ** (len(modulus) - 1) > settings.limits.MAX_TORSION_FIELD_ORDER:
        raise SizeCapExceeded("campo residual demasiado grande")
    return FiniteField(base.p, base, modulus)


# ===== RAÍCES =====

def find_roots(f: Sequence[int], field: FiniteField) -> List[int]:
    """Raíces con multiplicidad por recorrido exhaustivo del campo"""
    f = dense.normalize(f)
    if not f:
        raise ValueError("polinomio cero")
    if field.order > settings.limits.MAX_EXTENSION_ORDER:
        raise SizeCapExceeded(f"recorrido exhaustivo de {field.order} elementos")
    roots: List[int] = []
    for x in field.elements():
        while len(f) > 1 and dense.evaluate(field, f, x) == 0:
            roots.append(x)
            f, _ = dense.divmod_(field, f, [field.neg(x), 1])
    return roots


def split_roots(f: Sequence[int], field: FiniteField, seed: int = 0) -> List[int]:
    """Raíces distintas (ordenadas por código) vía Cantor–Zassenhaus"""
    f = dense.monic(field, dense.normalize(f))
    if len(f) <= 1:
        return []
    x = [0, 1]
    h = x
    for _ in range(field.absolute_degree):
        h = dense.powmod(field, h, field.p, f)
    g = dense.gcd(field, f, dense.sub(field, h, x))
    rng = random.Random(seed)
    roots: List[int] = []
    stack = [g]
    while stack:
        g = stack.pop()
        d = len(g) - 1
        if d <= 0:
            continue
        if d == 1:
            roots.append(field.neg(g[0]))
            continue
        while True:
            part = _split_once(field, g, rng)
            if 0 < len(part) - 1 < d:
                break
        stack.append(part)
        stack.append(dense.divmod_(field, g, part)[0])
    return sorted(roots)


def _split_once(field: FiniteField, g: List[int], rng: random.Random) -> List[int]:
    a = rng.randrange(field.order)
    if field.p == 2:
        y = dense.mod(field, [0, a] if a else [0, 1], g)
        acc = y
        for _ in range(field.absolute_degree - 1):
            y = dense.mulmod(field, y, y, g)
            acc = dense.add(field, acc, y)
        return dense.gcd(field, g, acc)
    y = dense.powmod(field, [a, 1], (field.order - 1) // 2, g)
    return dense.gcd(field, g, dense.sub(field, y, [1]))


# ===== ENCAJES =====

class Embedding:
    """Morfismo src → dst sobre el mismo 𝔽_q, fijado por la imagen del generador"""

    def __init__(self, src: FiniteField, dst: FiniteField, image: int):
        self.src = src
        self.dst = dst
        self.image = image
        self._basis: Optional[List[int]] = None
        self._solver = None

    def __call__(self, a: int) -> int:
        if self.src is self.src.ground:
            return a
        digits = self.src.digits(a)
        acc = 0
        for d in reversed(digits):
            acc = self.dst.add(self.dst.mul(acc, self.image), d)
        return acc

    def basis_images(self) -> List[int]:
        if self._basis is None:
            dim = self.src.ground_dimension
            self._basis = [self(self.src.from_ground_coordinates([1 if j == i else 0 for j in range(dim)]))
                           for i in range(dim)]
        return self._basis

    def preimage(self, b: int) -> Optional[int]:
        """Elemento de src con imagen b, o None si b no está en la imagen"""
        from app.core.linalg import SpanDecomposer

        if self.src is self.src.ground and self.src == self.dst.ground:
            return b if self.dst.in_ground(b) else None
        if self._solver is None:
            vectors = [self.dst.ground_coordinates(v) for v in self.basis_images()]
            self._solver = SpanDecomposer(self.dst.ground, vectors)
        coords = self._solver.coordinates(self.dst.ground_coordinates(b))
        if coords is None:
            return None
        return self.src.from_ground_coordinates(coords)

    def compose(self, other: "Embedding") -> "Embedding":
        """other ∘ self"""
        return Embedding(self.src, other.dst, other(self.image))


@lru_cache(maxsize=None)
def embed(src: FiniteField, dst: FiniteField) -> Embedding:
    """Encaje canónico; entre extensiones canónicas pasa por la cadena de pasos primos"""
    if src.ground != dst.ground:
        raise ValueError("los campos no comparten el campo base")
    if src == src.ground:
        return Embedding(src, dst, src.generator)
    n_src, n_dst = src.ground_dimension, dst.ground_dimension
    if n_dst % n_src:
        raise ValueError(f"no existe encaje de grado {n_src} en grado {n_dst}")
    if src == dst:
        return Embedding(src, dst, src.generator)
    if src.canonical and dst.canonical and n_dst != n_src:
        q = src.ground.order
        chain = [n_src]
        for r, k in sorted(factorint(n_dst // n_src).items()):
            for _ in range(k):
                chain.append(chain[-1] * r)
        if len(chain) > 2:
            result = embed(src, _extension_field(q, chain[1]))
            for lo, hi in zip(chain[1:], chain[2:]):
                result = result.compose(embed(_extension_field(q, lo), _extension_field(q, hi)))
            return Embedding(src, dst, result.image)
    roots = split_roots(list(src.modulus), dst)
    if not roots:
        raise ValueError(f"{src!r} no se encaja en {dst!r}")
    return Embedding(src, dst, roots[0])
