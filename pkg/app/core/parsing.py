# app/core/parsing.py - Gramáticas de texto de la CLI
"""
Un único analizador descendente recursivo para todas las gramáticas de entrada:

    poly    := term (('+'|'-') term)*
    term    := factor (['*'] factor)*          # "2t" y "2*t" son equivalentes
    factor  := atom ['^' exponent]
    atom    := nat | 't' | 'a' | 'w' | 'pi' | '(' poly ')'
    exponent:= nat | '(' ['-'] nat ['/' nat] ')'

Símbolos:
    t   la variable de A = 𝔽_q[t]
    a   generador de 𝔽_q sobre 𝔽_p (solo si q no es primo)
    w   generador de la extensión 𝔽_{q^m} sobre 𝔽_q
    pi  el uniformizador 1/t (colas y elementos de Puiseux)

Los errores llevan la columna 1-based del carácter ofensivo.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from app.core.exceptions import ParseError
from app.core.fields import FiniteField
from app.core.polynomials import PolyA, RatF
from app.core.series import PuiseuxElement, TailElement

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z]+)|(?P<op>[-+*/^();=,]))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    column: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None:
            column = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"carácter inesperado {text[column - 1]!r}", text, column)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind) + 1))
        pos = match.end()
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


class _Algebra:
    """Adaptador de valores: cómo construir constantes, símbolos y potencias"""

    def __init__(self, constant: Callable[[int], object], symbols: Dict[str, Callable[[], object]],
                 power: Callable[[object, Fraction, str], object], divide: Optional[Callable] = None):
        self.constant = constant
        self.symbols = symbols
        self.power = power
        self.divide = divide


class _Parser:
    def __init__(self, text: str, algebra: _Algebra):
        self.text = text
        self.algebra = algebra
        self.tokens = tokenize(text)
        self.pos = 0

    # ===== UTILIDADES =====

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def _fail(self, message: str, token: Token = None):
        token = token or self.current
        raise ParseError(message, self.text, token.column)

    def _expect(self, text: str) -> Token:
        if self.current.text != text:
            found = self.current.text or "fin de texto"
            self._fail(f"se esperaba {text!r} y se encontró {found!r}")
        return self._advance()

    def at(self, *texts: str) -> bool:
        return self.current.kind == "op" and self.current.text in texts

    # ===== GRAMÁTICA =====

    def parse(self, stop: tuple = ()):
        value = self.expression()
        if self.current.kind != "end" and not self.at(*stop):
            self._fail(f"símbolo inesperado {self.current.text!r}")
        return value

    def expression(self):
        negate = False
        if self.at("-", "+"):
            negate = self._advance().text == "-"
        value = self.term()
        if negate:
            value = -value
        while self.at("+", "-"):
            op = self._advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while True:
            if self.at("*"):
                self._advance()
                value = value * self.factor()
            elif self.at("/"):
                token = self._advance()
                if self.algebra.divide is None:
                    self._fail("la división no está permitida aquí", token)
                value = self.algebra.divide(value, self.factor(), token)
            elif self.current.kind in ("num", "name") or self.at("("):
                # multiplicación implícita: "2t", "w pi^3"
                value = value * self.factor()
            else:
                return value

    def factor(self):
        value = self.atom()
        if self.at("^"):
            caret = self._advance()
            exponent = self.exponent(caret)
            value = self.algebra.power(value, exponent, caret)
        return value

    def atom(self):
        token = self.current
        if token.kind == "num":
            self._advance()
            return self.algebra.constant(int(token.text))
        if token.kind == "name":
            builder = self.algebra.symbols.get(token.text)
            if builder is None:
                self._fail(f"símbolo desconocido {token.text!r}")
            self._advance()
            return builder()
        if self.at("("):
            self._advance()
            value = self.expression()
            self._expect(")")
            return value
        found = token.text or "fin de texto"
        self._fail(f"se esperaba un término y se encontró {found!r}")

    def exponent(self, caret: Token) -> Fraction:
        token = self.current
        if token.kind == "num":
            self._advance()
            return Fraction(int(token.text))
        if self.at("("):
            self._advance()
            sign = 1
            if self.at("-"):
                self._advance()
                sign = -1
            num = self.current
            if num.kind != "num":
                self._fail("se esperaba un entero en el exponente")
            self._advance()
            den = 1
            if self.at("/"):
                self._advance()
                den_token = self.current
                if den_token.kind != "num" or int(den_token.text) == 0:
                    self._fail("se esperaba un denominador natural no nulo")
                self._advance()
                den = int(den_token.text)
            self._expect(")")
            return Fraction(sign * int(num.text), den)
        found = token.text or "fin de texto"
        self._fail(f"se esperaba un exponente natural y se encontró {found!r}")


# ===== ÁLGEBRAS =====

def _natural_power(value, exponent: Fraction, caret: Token, parser_text: str):
    if exponent.denominator != 1 or exponent < 0:
        raise ParseError("solo se admiten exponentes naturales aquí", parser_text, caret.column + 1)
    return value ** int(exponent)


def _ground_symbols(field: FiniteField, lift: Callable[[int], object]) -> Dict[str, Callable[[], object]]:
    """Símbolo 'a' para el generador de 𝔽_q cuando q no es primo; 'w' es alias si no hay extensión"""
    ground = field.ground
    if ground.base is None:
        return {}
    symbols = {"a": lambda: lift(ground.generator)}
    if field is ground:
        symbols["w"] = symbols["a"]
    return symbols


def _element_algebra(field: FiniteField, text: str) -> _Algebra:
    """Elementos de 𝔽_q o de una extensión simple sobre 𝔽_q, como polinomios en w (o a)"""
    base = field.base if field.base is not None else field
    if field.base is None:
        return _Algebra(constant=lambda n: PolyA.constant(field, field.scalar(n)), symbols={},
                        power=lambda v, e, c: _natural_power(v, e, c, text))
    if field is field.ground:
        symbols = {"a": lambda: PolyA.variable(base), "w": lambda: PolyA.variable(base)}
    else:
        symbols = {"w": lambda: PolyA.variable(base)}
        symbols.update(_ground_symbols(field, lambda g: PolyA.constant(base, g)))
    return _Algebra(constant=lambda n: PolyA.constant(base, base.scalar(n)), symbols=symbols,
                    power=lambda v, e, c: _natural_power(v, e, c, text))


def _reduce_element(value: PolyA, field: FiniteField) -> int:
    if field.base is None:
        return value[0]
    rem = value % PolyA(field.base, field.modulus)
    return field.from_digits(list(rem.coeffs) + [0] * (field.degree - len(rem.coeffs)))


def parse_element(text: str, field: FiniteField) -> int:
    """Código de un elemento de `field` escrito con los símbolos a / w"""
    value = _Parser(text, _element_algebra(field, text)).parse()
    return _reduce_element(value, field)


def parse_poly(text: str, field: FiniteField) -> PolyA:
    """Polinomio en t sobre 𝔽_q"""
    ground = field.ground
    algebra = _Algebra(
        constant=lambda n: PolyA.constant(ground, ground.scalar(n)),
        symbols={"t": lambda: PolyA.variable(ground),
                 **_ground_symbols(ground, lambda g: PolyA.constant(ground, g))},
        power=lambda v, e, c: _natural_power(v, e, c, text),
    )
    return _Parser(text, algebra).parse()


def _ratf_algebra(ground: FiniteField, text: str, with_pi: bool) -> _Algebra:
    def power(value: RatF, exponent: Fraction, caret: Token) -> RatF:
        if exponent.denominator != 1:
            raise ParseError("exponente fraccionario en 𝔽_q(t)", text, caret.column + 1)
        if exponent < 0 and value.is_zero():
            raise ParseError("potencia negativa de cero", text, caret.column)
        return value ** int(exponent)

    def divide(a: RatF, b: RatF, token: Token) -> RatF:
        if b.is_zero():
            raise ParseError("división por cero", text, token.column)
        return a / b

    t = PolyA.variable(ground)
    symbols = {"t": lambda: RatF(t), **_ground_symbols(ground, lambda g: RatF(PolyA.constant(ground, g)))}
    if with_pi:
        symbols["pi"] = lambda: RatF(PolyA.one(ground), t)
    return _Algebra(constant=lambda n: RatF(PolyA.constant(ground, ground.scalar(n))),
                    symbols=symbols, power=power, divide=divide)


def parse_ratfun(text: str, field: FiniteField) -> RatF:
    """Elemento de F = 𝔽_q(t); admite '/' y potencias negativas"""
    return _Parser(text, _ratf_algebra(field.ground, text, with_pi=True)).parse()


def parse_tail(text: str, field: FiniteField) -> TailElement:
    """u = u₀ + Σ a_i π^i; el denominador debe ser una potencia de t"""
    ground = field.ground
    value = parse_ratfun(text, ground)
    den = value.den
    if den.degree > 0 and den != PolyA.monomial(ground, den.degree):
        raise ParseError("una cola solo admite potencias de pi (denominadores t^r)", text, 1)
    r = den.degree
    poly_part, rem = divmod(value.num, den)
    # rem / t^r = Σ_{i} rem_i t^{i-r}: coeficiente de π^{r-i}
    tail = [rem[r - i] for i in range(1, r + 1)]
    return TailElement(poly_part, tail)


def parse_puiseux(text: str, field: FiniteField) -> PuiseuxElement:
    """Σ c_j π^{j/e} con coeficientes en `field`, opcionalmente seguido de ';prec=P/e'"""

    def monomial_power(value: PuiseuxElement, exponent: Fraction, caret: Token) -> PuiseuxElement:
        if exponent.denominator == 1 and exponent >= 0:
            return value ** int(exponent)
        if len(value.terms) != 1 or value.terms[0][1] != 1:
            raise ParseError("exponentes no naturales solo sobre pi o t", text, caret.column + 1)
        j, _ = value.terms[0]
        return PuiseuxElement.monomial(field, Fraction(j, value.e) * exponent)

    def lift(code: int) -> PuiseuxElement:
        return PuiseuxElement.constant(field, code)

    symbols = {
        "pi": lambda: PuiseuxElement.monomial(field, Fraction(1)),
        "t": lambda: PuiseuxElement.monomial(field, Fraction(-1)),
    }
    if field is not field.ground:
        symbols["w"] = lambda: lift(field.generator)
    symbols.update(_ground_symbols(field, lift))
    algebra = _Algebra(constant=lambda n: lift(field.scalar(n)), symbols=symbols, power=monomial_power)
    parser = _Parser(text, algebra)
    value = parser.parse(stop=(";", ","))
    if parser.at(";", ","):
        parser._advance()
        marker = parser.current
        if marker.text != "prec":
            parser._fail("se esperaba el marcador 'prec='")
        parser._advance()
        parser._expect("=")
        precision = _parse_rational(parser)
        if parser.current.kind != "end":
            parser._fail(f"símbolo inesperado {parser.current.text!r}")
        value = value.truncate(precision)
    return value


def _parse_rational(parser: _Parser) -> Fraction:
    sign = 1
    if parser.at("-"):
        parser._advance()
        sign = -1
    token = parser.current
    if token.kind != "num":
        parser._fail("se esperaba un número racional")
    parser._advance()
    den = 1
    if parser.at("/"):
        parser._advance()
        den_token = parser.current
        if den_token.kind != "num" or int(den_token.text) == 0:
            parser._fail("se esperaba un denominador natural no nulo")
        parser._advance()
        den = int(den_token.text)
    return Fraction(sign * int(token.text), den)


# ===== FORMATO =====

def format_element(c: int, field: FiniteField, symbol: Optional[str] = None) -> str:
    """Texto de un elemento en la misma gramática que acepta parse_element; `symbol` renombra el generador"""
    if field.base is None:
        return str(c)
    if symbol is None:
        symbol = "a" if field is field.ground else "w"
    base = field.base
    digits = field.digits(c)
    terms = []
    for i in range(len(digits) - 1, -1, -1):
        d = digits[i]
        if d == 0:
            continue
        coeff = format_element(d, base)
        if i == 0:
            terms.append(coeff)
            continue
        mono = symbol if i == 1 else f"{symbol}^{i}"
        if d == 1:
            terms.append(mono)
        elif coeff.isdigit():
            terms.append(f"{coeff}*{mono}")
        else:
            terms.append(f"({coeff})*{mono}")
    return "+".join(terms) if terms else "0"
