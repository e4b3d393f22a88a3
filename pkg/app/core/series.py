# app/core/series.py - Elementos de Puiseux en π = 1/t y colas de F_∞
"""
PuiseuxElement: suma finita Σ c_j π^{j/e} con coeficientes en un campo finito L ⊇ 𝔽_q y
un marcador de precisión P/e (el elemento se conoce módulo términos de exponente ≥ P/e;
None significa suma exacta). |π^{j/e}| = q^{−j/e}.

TailElement: forma normal u = u₀ + u₁ con u₀ ∈ 𝔽_q[t] y u₁ = Σ_{i=1..r} a_i π^i, a_r ≠ 0.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from app.core.exceptions import PrecisionInsufficient, ZeroInput
from app.core.fields import FiniteField
from app.core.polynomials import PolyA, RatF


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


class PuiseuxElement:
    """Serie truncada en π^{1/e} con precisión explícita"""

    __slots__ = ("field", "e", "terms", "precision")

    def __init__(self, field: FiniteField, terms: Dict[int, int] = None, e: int = 1,
                 precision: Optional[int] = None):
        terms = {j: c for j, c in (terms or {}).items() if c}
        if precision is not None:
            terms = {j: c for j, c in terms.items() if j < precision}
        # ramificación mínima
        g = e
        for j in terms:
            g = gcd(g, j)
        if precision is not None:
            g = gcd(g, precision)
        if g > 1:
            terms = {j // g: c for j, c in terms.items()}
            e //= g
            precision = precision // g if precision is not None else None
        self.field = field
        self.e = e
        self.terms: Tuple[Tuple[int, int], ...] = tuple(sorted(terms.items()))
        self.precision = precision

    # ===== CONSTRUCTORES =====

    @classmethod
    def zero(cls, field: FiniteField) -> "PuiseuxElement":
        return cls(field)

    @classmethod
    def constant(cls, field: FiniteField, c: int) -> "PuiseuxElement":
        return cls(field, {0: c})

    @classmethod
    def monomial(cls, field: FiniteField, exponent: Fraction, c: int = 1) -> "PuiseuxElement":
        exponent = Fraction(exponent)
        return cls(field, {exponent.numerator: c}, e=exponent.denominator)

    @classmethod
    def from_poly(cls, poly: PolyA, field: FiniteField = None) -> "PuiseuxElement":
        """t^i = π^{−i}; los coeficientes de 𝔽_q conservan su código en L"""
        field = field or poly.field
        return cls(field, {-i: c for i, c in enumerate(poly.coeffs) if c})

    @classmethod
    def from_ratf(cls, x: RatF, field: FiniteField = None,
                  precision: Fraction = Fraction(16)) -> "PuiseuxElement":
        field = field or x.field
        num = cls.from_poly(x.num, field)
        if x.den.degree == 0:
            return num
        den = cls.from_poly(x.den, field)
        return num * den.inverse(Fraction(precision) - num.valuation())

    # ===== PROPIEDADES =====

    def is_zero(self) -> bool:
        return not self.terms

    def is_exact(self) -> bool:
        return self.precision is None

    @property
    def precision_value(self) -> Optional[Fraction]:
        return None if self.precision is None else Fraction(self.precision, self.e)

    def exponent(self, j: int) -> Fraction:
        return Fraction(j, self.e)

    def items(self) -> Iterable[Tuple[Fraction, int]]:
        for j, c in self.terms:
            yield Fraction(j, self.e), c

    def coefficient(self, exponent: Fraction) -> int:
        exponent = Fraction(exponent)
        if self.e % exponent.denominator:
            return 0
        j = exponent.numerator * (self.e // exponent.denominator)
        for jj, c in self.terms:
            if jj == j:
                return c
        return 0

    def valuation(self) -> Fraction:
        """v_∞ del término principal"""
        if not self.terms:
            if self.precision is None:
                raise ZeroInput("valuación del cero")
            raise PrecisionInsufficient("el elemento es cero hasta la precisión conocida")
        return Fraction(self.terms[0][0], self.e)

    def log_abs(self) -> Fraction:
        """log_q|x|"""
        return -self.valuation()

    def max_exponent(self) -> Fraction:
        return Fraction(self.terms[-1][0], self.e) if self.terms else Fraction(0)

    def span(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        return Fraction(self.terms[-1][0] - self.terms[0][0], self.e)

    def is_finf_term(self, j: int, c: int) -> bool:
        """Término de F_∞: exponente entero y coeficiente en 𝔽_q"""
        return j % self.e == 0 and self.field.in_ground(c)

    # ===== ARITMÉTICA =====

    def _rescaled(self, e: int) -> Tuple[Dict[int, int], Optional[int]]:
        k = e // self.e
        terms = {j * k: c for j, c in self.terms}
        return terms, (self.precision * k if self.precision is not None else None)

    def _common(self, other: "PuiseuxElement"):
        e = lcm(self.e, other.e)
        a, pa = self._rescaled(e)
        b, pb = other._rescaled(e)
        return e, a, pa, b, pb

    @staticmethod
    def _min_precision(pa: Optional[int], pb: Optional[int]) -> Optional[int]:
        if pa is None:
            return pb
        if pb is None:
            return pa
        return min(pa, pb)

    def _coerce(self, other) -> "PuiseuxElement":
        if isinstance(other, PuiseuxElement):
            return other
        if isinstance(other, PolyA):
            return PuiseuxElement.from_poly(other, self.field)
        if isinstance(other, int):
            return PuiseuxElement.constant(self.field, self.field.scalar(other))
        raise TypeError(f"no se puede operar con {type(other).__name__}")

    def __add__(self, other) -> "PuiseuxElement":
        other = self._coerce(other)
        F = self.field
        e, a, pa, b, pb = self._common(other)
        for j, c in b.items():
            a[j] = F.add(a.get(j, 0), c)
        return PuiseuxElement(F, a, e, self._min_precision(pa, pb))

    __radd__ = __add__

    def __neg__(self) -> "PuiseuxElement":
        F = self.field
        return PuiseuxElement(F, {j: F.neg(c) for j, c in self.terms}, self.e, self.precision)

    def __sub__(self, other) -> "PuiseuxElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "PuiseuxElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "PuiseuxElement":
        other = self._coerce(other)
        F = self.field
        e, a, pa, b, pb = self._common(other)
        if (not a and pa is None) or (not b and pb is None):
            return PuiseuxElement.zero(F)
        precision = None
        if pa is not None or pb is not None:
            candidates = []
            if pa is not None:
                candidates.append(pa + (min(b) if b else pb))
            if pb is not None:
                candidates.append(pb + (min(a) if a else pa))
            precision = min(candidates)
        out: Dict[int, int] = {}
        for ja, ca in a.items():
            for jb, cb in b.items():
                j = ja + jb
                if precision is not None and j >= precision:
                    continue
                out[j] = F.add(out.get(j, 0), F.mul(ca, cb))
        return PuiseuxElement(F, out, e, precision)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PuiseuxElement":
        out = PuiseuxElement.constant(self.field, 1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c: int) -> "PuiseuxElement":
        F = self.field
        return PuiseuxElement(F, {j: F.mul(c, x) for j, x in self.terms}, self.e, self.precision)

    def shift(self, exponent: Fraction) -> "PuiseuxElement":
        """Multiplicación por π^{exponent}"""
        return self * PuiseuxElement.monomial(self.field, exponent)

    def truncate(self, bound: Fraction) -> "PuiseuxElement":
        """Olvida los términos de exponente ≥ bound"""
        bound = Fraction(bound)
        e = lcm(self.e, bound.denominator)
        terms, precision = self._rescaled(e)
        P = bound.numerator * (e // bound.denominator)
        precision = P if precision is None else min(P, precision)
        return PuiseuxElement(self.field, terms, e, precision)

    def inverse(self, relative_precision: Fraction) -> "PuiseuxElement":
        """1/x con precisión absoluta −v + relative_precision (acotada por la de x)"""
        F = self.field
        v = self.valuation()
        lead_j, lead_c = self.terms[0]
        inv_c = F.inv(lead_c)
        if len(self.terms) == 1 and self.precision is None:
            return PuiseuxElement(F, {-lead_j: inv_c}, self.e)
        # x = c π^v (1 + y)
        y = PuiseuxElement(F, {j - lead_j: F.mul(inv_c, c) for j, c in self.terms[1:]}, self.e,
                           self.precision - lead_j if self.precision is not None else None)
        bound = Fraction(relative_precision)
        if y.precision is not None:
            bound = min(bound, y.precision_value)
        neg_y = (-y).truncate(bound)
        total = PuiseuxElement.constant(F, 1).truncate(bound)
        power = PuiseuxElement.constant(F, 1).truncate(bound)
        while True:
            power = (power * neg_y).truncate(bound)
            if power.is_zero():
                break
            total = total + power
        return total.scale(inv_c).shift(-v)

    def __truediv__(self, other) -> "PuiseuxElement":
        other = self._coerce(other)
        relative = (self.precision_value - self.valuation()) if self.precision is not None else Fraction(32)
        return self * other.inverse(relative)

    # ===== COMPARACIÓN Y TEXTO =====

    def __eq__(self, other) -> bool:
        if not isinstance(other, PuiseuxElement):
            return NotImplemented
        return (self.e, self.terms, self.precision) == (other.e, other.terms, other.precision)

    def __hash__(self) -> int:
        return hash((self.e, self.terms, self.precision))

    def agrees_with(self, other: "PuiseuxElement") -> bool:
        """Igualdad hasta la menor de las dos precisiones"""
        diff = self - other
        return diff.is_zero()

    def to_string(self) -> str:
        from app.core.parsing import format_element

        parts = []
        for j, c in self.terms:
            coeff = format_element(c, self.field)
            if not coeff.isdigit():
                coeff = f"({coeff})"
            parts.append(f"{coeff}*pi^({j}/{self.e})")
        text = "+".join(parts) if parts else "0"
        if self.precision is not None:
            text += f";prec={self.precision}/{self.e}"
        return text

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"PuiseuxElement({self.to_string()!r})"


class TailElement:
    """u = u₀ + Σ_{i=1..r} a_i π^i con u₀ ∈ 𝔽_q[t] y a_r ≠ 0"""

    __slots__ = ("poly_part", "tail")

    def __init__(self, poly_part: PolyA, tail: Sequence[int] = ()):
        tail = list(tail)
        while tail and tail[-1] == 0:
            tail.pop()
        self.poly_part = poly_part
        # tail[i-1] = a_i
        self.tail: Tuple[int, ...] = tuple(tail)

    @property
    def field(self) -> FiniteField:
        return self.poly_part.field

    @classmethod
    def zero(cls, field: FiniteField) -> "TailElement":
        return cls(PolyA.zero(field))

    @property
    def r(self) -> int:
        """Último índice de la cola (0 si la cola es vacía)"""
        return len(self.tail)

    def is_zero(self) -> bool:
        return self.poly_part.is_zero() and not self.tail

    def tail_valuation(self) -> Optional[int]:
        for i, a in enumerate(self.tail, start=1):
            if a:
                return i
        return None

    def tail_only(self) -> "TailElement":
        return TailElement(PolyA.zero(self.field), self.tail)

    def truncate(self, k: int) -> "TailElement":
        """Representante canónico módulo π^k 𝒪_∞: términos de exponente < k"""
        F = self.field
        tail = self.tail[:max(0, k - 1)]
        coeffs = [c if -j < k else 0 for j, c in enumerate(self.poly_part.coeffs)]
        return TailElement(PolyA(F, coeffs), tail)

    def is_canonical(self, k: int) -> bool:
        return self.truncate(k) == self

    def __add__(self, other: "TailElement") -> "TailElement":
        F = self.field
        n = max(len(self.tail), len(other.tail))
        a = list(self.tail) + [0] * (n - len(self.tail))
        b = list(other.tail) + [0] * (n - len(other.tail))
        return TailElement(self.poly_part + other.poly_part, [F.add(x, y) for x, y in zip(a, b)])

    def add_monomial(self, exponent: int, c: int) -> "TailElement":
        """u + c·π^exponent"""
        F = self.field
        if exponent <= 0:
            return TailElement(self.poly_part + PolyA.monomial(F, -exponent, c), self.tail)
        tail = list(self.tail) + [0] * max(0, exponent - len(self.tail))
        tail[exponent - 1] = F.add(tail[exponent - 1], c)
        return TailElement(self.poly_part, tail)

    def to_puiseux(self, field: FiniteField = None) -> PuiseuxElement:
        field = field or self.field
        terms = {-i: c for i, c in enumerate(self.poly_part.coeffs) if c}
        terms.update({i: a for i, a in enumerate(self.tail, start=1) if a})
        return PuiseuxElement(field, terms)

    def to_ratf(self) -> RatF:
        """u₀ + Σ a_i t^{−i} = (u₀ t^r + Σ a_i t^{r−i}) / t^r"""
        F = self.field
        r = self.r
        num = self.poly_part * PolyA.monomial(F, r)
        for i, a in enumerate(self.tail, start=1):
            if a:
                num = num + PolyA.monomial(F, r - i, a)
        return RatF(num, PolyA.monomial(F, r))

    @classmethod
    def from_ratf(cls, x: RatF, k: int) -> "TailElement":
        """Desarrollo exacto de x ∈ F truncado módulo π^k 𝒪_∞"""
        F = x.field
        quo, rem = divmod(x.num, x.den)
        tail: List[int] = []
        t = PolyA.variable(F)
        inv_lead = F.inv(x.den.lead)
        # rem/den = Σ b_i π^i: cada paso saca el coeficiente de π^i
        for _ in range(1, k):
            rem = rem * t
            c = F.mul(rem[x.den.degree], inv_lead) if rem.degree == x.den.degree else 0
            if c:
                rem = rem - x.den.scale(c)
            tail.append(c)
        return cls(quo, tail).truncate(k)

    @classmethod
    def from_puiseux(cls, x: PuiseuxElement, ground: FiniteField) -> "TailElement":
        if x.e != 1:
            raise ValueError("la cola solo admite exponentes enteros")
        poly: Dict[int, int] = {}
        tail: Dict[int, int] = {}
        for j, c in x.terms:
            if not x.field.in_ground(c):
                raise ValueError("coeficiente fuera de 𝔽_q en un elemento de F_∞")
            if j <= 0:
                poly[-j] = c
            else:
                tail[j] = c
        deg = max(poly) if poly else -1
        r = max(tail) if tail else 0
        return cls(PolyA(ground, [poly.get(i, 0) for i in range(deg + 1)]),
                   [tail.get(i, 0) for i in range(1, r + 1)])

    def __eq__(self, other) -> bool:
        return isinstance(other, TailElement) and (self.poly_part, self.tail) == (other.poly_part, other.tail)

    def __hash__(self) -> int:
        return hash((self.poly_part, self.tail))

    def to_string(self) -> str:
        from app.core.parsing import format_element

        parts = []
        if not self.poly_part.is_zero():
            parts.append(self.poly_part.to_string())
        for i, a in enumerate(self.tail, start=1):
            if a:
                coeff = format_element(a, self.field)
                parts.append(f"pi^{i}" if a == 1 else f"{coeff}*pi^{i}")
        return "+".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"TailElement({self.to_string()!r})"
