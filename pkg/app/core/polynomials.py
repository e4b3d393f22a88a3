# app/core/polynomials.py - El anillo A = 𝔽_q[t] y su cuerpo de fracciones F = 𝔽_q(t)
"""
PolyA es un polinomio denso e inmutable sobre un campo finito. El grado del cero es el
centinela MINUS_INFINITY, que compara por debajo de cualquier entero, de modo que
|x| = q^{deg x} y deg(0) < deg(f) para todo f ≠ 0.

Uso:
    F = ground_field(2)
    t = PolyA.variable(F)
    g, s, u = xgcd(t**2 + t, t + 1)        # g = t + 1
    factor_monic(t**2 + PolyA.one(F))      # [(t + 1, 2)]
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Iterator, List, Sequence, Tuple, Union

from app.core import dense
from app.core.exceptions import BothZero, NotMonic, ZeroInput
from app.core.fields import FiniteField, is_irreducible


@total_ordering
class _MinusInfinity:
    """Grado del polinomio cero"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other) -> bool:
        return other is self

    def __lt__(self, other) -> bool:
        return other is not self

    def __hash__(self) -> int:
        return hash("-inf")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("−∞ − (−∞) no está definido")
        return self

    def __repr__(self) -> str:
        return "-inf"


MINUS_INFINITY = _MinusInfinity()
Degree = Union[int, _MinusInfinity]


class PolyA:
    """Polinomio en t sobre 𝔽_q (o sobre cualquier campo finito)"""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Sequence[int] = ()):
        self.field = field
        self.coeffs: Tuple[int, ...] = tuple(dense.normalize(coeffs))

    # ===== CONSTRUCTORES =====

    @classmethod
    def zero(cls, field: FiniteField) -> "PolyA":
        return cls(field, ())

    @classmethod
    def one(cls, field: FiniteField) -> "PolyA":
        return cls(field, (1,))

    @classmethod
    def constant(cls, field: FiniteField, c: int) -> "PolyA":
        return cls(field, (c,))

    @classmethod
    def variable(cls, field: FiniteField) -> "PolyA":
        return cls(field, (0, 1))

    @classmethod
    def monomial(cls, field: FiniteField, degree: int, c: int = 1) -> "PolyA":
        return cls(field, (0,) * degree + (c,))

    @classmethod
    def from_code(cls, field: FiniteField, code: int) -> "PolyA":
        """Inverso de `code`"""
        out = []
        while code:
            code, d = divmod(code, field.order)
            out.append(d)
        return cls(field, out)

    # ===== PROPIEDADES =====

    @property
    def degree(self) -> Degree:
        return len(self.coeffs) - 1 if self.coeffs else MINUS_INFINITY

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def code(self) -> int:
        """Σ c_i q^i: orden lexicográfico dentro de un mismo grado"""
        out = 0
        for c in reversed(self.coeffs):
            out = out * self.field.order + c
        return out

    def sort_key(self) -> Tuple[int, int]:
        return (len(self.coeffs), self.code)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    # ===== ARITMÉTICA =====

    def _wrap(self, coeffs) -> "PolyA":
        return PolyA(self.field, coeffs)

    def _coerce(self, other) -> "PolyA":
        if isinstance(other, PolyA):
            return other
        if isinstance(other, int):
            return PolyA(self.field, (self.field.scalar(other),))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(dense.add(self.field, self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self) -> "PolyA":
        return self._wrap(dense.neg(self.field, self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(dense.sub(self.field, self.coeffs, other.coeffs))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(dense.mul(self.field, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "PolyA":
        result = PolyA.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other: "PolyA"):
        if other.is_zero():
            raise ZeroDivisionError("división por el polinomio cero")
        q, r = dense.divmod_(self.field, self.coeffs, other.coeffs)
        return self._wrap(q), self._wrap(r)

    def __floordiv__(self, other: "PolyA") -> "PolyA":
        return divmod(self, other)[0]

    def __mod__(self, other: "PolyA") -> "PolyA":
        return divmod(self, other)[1]

    def divides(self, other: "PolyA") -> bool:
        return (other % self).is_zero()

    def scale(self, c: int) -> "PolyA":
        return self._wrap(dense.scale(self.field, self.coeffs, c))

    def monic(self) -> "PolyA":
        return self._wrap(dense.monic(self.field, self.coeffs))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self._coerce(other)
        return isinstance(other, PolyA) and self.coeffs == other.coeffs and self.field == other.field

    def __hash__(self) -> int:
        return hash((self.coeffs, self.field.order))

    def __call__(self, x: int, field: FiniteField = None, embedding=None) -> int:
        """Evaluación en x ∈ field (coeficientes vía `embedding` si se da)"""
        target = field or self.field
        acc = 0
        for c in reversed(self.coeffs):
            c = embedding(c) if embedding is not None else c
            acc = target.add(target.mul(acc, x), c)
        return acc

    def derivative(self) -> "PolyA":
        return self._wrap(dense.derivative(self.field, self.coeffs))

    # ===== TEXTO =====

    def to_string(self, var: str = "t") -> str:
        from app.core.parsing import format_element

        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            coeff = format_element(c, self.field)
            if i == 0:
                terms.append(coeff)
                continue
            mono = var if i == 1 else f"{var}^{i}"
            if c == 1:
                terms.append(mono)
            elif coeff.isdigit():
                terms.append(f"{coeff}*{mono}")
            else:
                terms.append(f"({coeff})*{mono}")
        return "+".join(terms)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"PolyA({self.to_string()!r}, q={self.field.order})"


# ===== OPERACIONES DE ANILLO =====

def xgcd(a: PolyA, b: PolyA) -> Tuple[PolyA, PolyA, PolyA]:
    """(g, s, t) con s·a + t·b = g, g mónico"""
    if a.is_zero() and b.is_zero():
        raise BothZero("xgcd(0, 0) no está definido")
    g, s, t = dense.xgcd(a.field, a.coeffs, b.coeffs)
    return PolyA(a.field, g), PolyA(a.field, s), PolyA(a.field, t)


def gcd(a: PolyA, b: PolyA) -> PolyA:
    if a.is_zero() and b.is_zero():
        return PolyA.zero(a.field)
    return PolyA(a.field, dense.gcd(a.field, a.coeffs, b.coeffs))


def gcd_many(*polys: PolyA) -> PolyA:
    out = polys[0]
    for p in polys[1:]:
        out = gcd(out, p)
    return out


def inverse_mod(a: PolyA, m: PolyA) -> PolyA:
    g, s, _ = xgcd(a % m, m)
    if g.degree != 0:
        raise ZeroDivisionError(f"{a} no es invertible módulo {m}")
    return s % m


def crt_combine(r1: PolyA, m1: PolyA, r2: PolyA, m2: PolyA) -> Tuple[PolyA, PolyA]:
    """x ≡ r1 (m1), x ≡ r2 (m2) con m1, m2 coprimos → (x mod m1·m2, m1·m2)"""
    k = ((r2 - r1) * inverse_mod(m1, m2)) % m2
    modulus = m1 * m2
    return (r1 + m1 * k) % modulus, modulus


def is_irreducible_poly(f: PolyA) -> bool:
    return is_irreducible(f.field, f.coeffs)


def monic_polys(field: FiniteField, degree: int) -> Iterator[PolyA]:
    """Mónicos de grado dado en orden de código"""
    for code in range(field.order ** degree):
        yield PolyA.from_code(field, code + field.order ** degree)


def all_polys_below(field: FiniteField, degree: Degree) -> Iterator[PolyA]:
    """Todos los b con deg b < degree (incluido el cero)"""
    if degree is MINUS_INFINITY:
        return
    for code in range(field.order ** degree):
        yield PolyA.from_code(field, code)


@lru_cache(maxsize=None)
def _irreducibles(field: FiniteField, degree: int) -> Tuple[PolyA, ...]:
    return tuple(f for f in monic_polys(field, degree) if is_irreducible_poly(f))


def monic_irreducibles(field: FiniteField, degree: int) -> List[PolyA]:
    return list(_irreducibles(field, degree))


def iter_monic_irreducibles(field: FiniteField, start_degree: int = 1) -> Iterator[PolyA]:
    """Irreducibles mónicos por grado creciente y luego código"""
    d = start_degree
    while True:
        yield from _irreducibles(field, d)
        d += 1


def factor_monic(N: PolyA) -> List[Tuple[PolyA, int]]:
    """Factorización por división de prueba; factores en orden (grado, código)"""
    if N.is_zero() or not N.is_monic():
        raise NotMonic(f"{N} no es mónico")
    if N.degree < 1:
        return []
    factors: List[Tuple[PolyA, int]] = []
    rest = N
    d = 1
    while 2 * d <= rest.degree:
        for P in _irreducibles(N.field, d):
            n = 0
            while True:
                quo, rem = divmod(rest, P)
                if not rem.is_zero():
                    break
                rest, n = quo, n + 1
            if n:
                factors.append((P, n))
        d += 1
    if rest.degree >= 1:
        factors.append((rest, 1))
    return sorted(factors, key=lambda pn: pn[0].sort_key())


def monic_divisors(N: PolyA) -> List[PolyA]:
    """Divisores mónicos de N ordenados por (grado, código)"""
    divisors = [PolyA.one(N.field)]
    for P, n in factor_monic(N):
        divisors = [d * P ** k for d in divisors for k in range(n + 1)]
    return sorted(divisors, key=PolyA.sort_key)


def norm(P: PolyA) -> int:
    """|P| = q^{deg P}"""
    return P.field.order ** P.degree


# ===== CUERPO DE FRACCIONES =====

class RatF:
    """Elemento de 𝔽_q(t) con num/den coprimos y den mónico"""

    __slots__ = ("num", "den")

    def __init__(self, num: PolyA, den: PolyA = None):
        if den is None:
            den = PolyA.one(num.field)
        if den.is_zero():
            raise ZeroDivisionError("denominador cero")
        if num.is_zero():
            self.num, self.den = num, PolyA.one(num.field)
            return
        g = gcd(num, den)
        num, den = num // g, den // g
        lead_inv = den.field.inv(den.lead)
        self.num, self.den = num.scale(lead_inv), den.scale(lead_inv)

    @property
    def field(self) -> FiniteField:
        return self.num.field

    @classmethod
    def of(cls, value) -> "RatF":
        return value if isinstance(value, RatF) else cls(value)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        other = RatF.of(other)
        return RatF(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatF":
        return RatF(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RatF.of(other))

    def __mul__(self, other):
        other = RatF.of(other)
        return RatF(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatF.of(other)
        if other.is_zero():
            raise ZeroDivisionError("división por cero en F")
        return RatF(self.num * other.den, self.den * other.num)

    def __pow__(self, e: int) -> "RatF":
        if e < 0:
            return RatF(PolyA.one(self.field)) / (self ** (-e))
        return RatF(self.num ** e, self.den ** e)

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyA):
            other = RatF(other)
        return isinstance(other, RatF) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def to_string(self) -> str:
        if self.is_polynomial():
            return self.num.to_string()
        return f"({self.num.to_string()})/({self.den.to_string()})"

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"RatF({self.to_string()!r})"


def v_inf(x: Union[RatF, PolyA]) -> int:
    """v_∞(x) = deg den − deg num"""
    x = RatF.of(x)
    if x.is_zero():
        raise ZeroInput("v_∞(0) = +∞")
    return x.den.degree - x.num.degree


def ord_at(x: RatF, P: PolyA) -> int:
    """ord_P(x) para un primo mónico P"""
    if x.is_zero():
        raise ZeroInput("ord_P(0) = +∞")

    def _count(f: PolyA) -> int:
        n = 0
        while True:
            quo, rem = divmod(f, P)
            if not rem.is_zero():
                return n
            f, n = quo, n + 1

    return _count(x.num) - _count(x.den)


def log_abs(x: Union[RatF, PolyA]) -> Fraction:
    """log_q|x|_∞"""
    return Fraction(-v_inf(x))
