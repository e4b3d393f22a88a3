# app/core/dense.py - Aritmética densa de polinomios sobre un campo finito
"""
Polinomios como listas de códigos (little-endian, sin ceros finales; el cero es []).
Todas las funciones reciben el campo como primer argumento y no mutan sus entradas.
"""
from typing import List, Sequence, Tuple

Coeffs = List[int]


def normalize(a: Sequence[int]) -> Coeffs:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def add(F, a: Sequence[int], b: Sequence[int]) -> Coeffs:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        if c:
            out[i] = F.add(out[i], c)
    return normalize(out)


def neg(F, a: Sequence[int]) -> Coeffs:
    return [F.neg(c) for c in a]


def sub(F, a: Sequence[int], b: Sequence[int]) -> Coeffs:
    return add(F, a, neg(F, b))


def scale(F, a: Sequence[int], c: int) -> Coeffs:
    if c == 0:
        return []
    return normalize([F.mul(x, c) for x in a])


def mul(F, a: Sequence[int], b: Sequence[int]) -> Coeffs:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    fmul, fadd = F.mul, F.add
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = fadd(out[i + j], fmul(x, y))
    return normalize(out)


def divmod_(F, a: Sequence[int], b: Sequence[int]) -> Tuple[Coeffs, Coeffs]:
    if not b:
        raise ZeroDivisionError("división por el polinomio cero")
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], normalize(rem)
    inv_lead = F.inv(b[-1])
    quo = [0] * (len(rem) - db)
    fmul, fsub = F.mul, F.sub
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        c = fmul(c, inv_lead)
        quo[i - db] = c
        for j in range(db + 1):
            if b[j]:
                rem[i - db + j] = fsub(rem[i - db + j], fmul(c, b[j]))
    return normalize(quo), normalize(rem[:db])


def mod(F, a: Sequence[int], b: Sequence[int]) -> Coeffs:
    return divmod_(F, a, b)[1]


def monic(F, a: Sequence[int]) -> Coeffs:
    if not a:
        return []
    return scale(F, a, F.inv(a[-1]))


def gcd(F, a: Sequence[int], b: Sequence[int]) -> Coeffs:
    a, b = normalize(a), normalize(b)
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def xgcd(F, a: Sequence[int], b: Sequence[int]) -> Tuple[Coeffs, Coeffs, Coeffs]:
    """(g, s, t) con s·a + t·b = g mónico"""
    r0, r1 = normalize(a), normalize(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], s0, t0
    inv_lead = F.inv(r0[-1])
    return scale(F, r0, inv_lead), scale(F, s0, inv_lead), scale(F, t0, inv_lead)


def mulmod(F, a: Sequence[int], b: Sequence[int], m: Sequence[int]) -> Coeffs:
    return mod(F, mul(F, a, b), m)


def powmod(F, a: Sequence[int], e: int, m: Sequence[int]) -> Coeffs:
    result: Coeffs = [1]
    base = mod(F, a, m)
    while e:
        if e & 1:
            result = mulmod(F, result, base, m)
        e >>= 1
        if e:
            base = mulmod(F, base, base, m)
    return mod(F, result, m)


def evaluate(F, a: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def derivative(F, a: Sequence[int]) -> Coeffs:
    out = []
    for i in range(1, len(a)):
        c = a[i]
        for _ in range(1, i % F.p):
            c = F.add(c, a[i])
        out.append(c if i % F.p else 0)
    return normalize(out)


def compose(F, a: Sequence[int], b: Sequence[int], m: Sequence[int]) -> Coeffs:
    """a(b) mod m por Horner"""
    acc: Coeffs = []
    for c in reversed(a):
        acc = add(F, mulmod(F, acc, b, m), [c] if c else [])
    return acc
