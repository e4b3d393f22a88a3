# app/modules/modpoly/services/modpoly_service.py - Φ_N por interpolación en A-campos finitos y CRT en t
"""
Para cada primo P ∤ N:  Φ_N(X, j0) ≡ ∏_C (X − j(φ_{j0}/C))  en 𝔽_q[θ] = A/P.
Se interpola en Y sobre ψ(N)+1 valores de j0 y se reconstruyen los coeficientes en A por CRT;
un primo adicional confirma la estabilidad del resultado.
"""
import asyncio
import logging
import math
import random
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterator, List, Optional, Sequence

from app.config.cache import CacheService, irreducibles_entry_name, phi_entry_name
from app.config.settings import settings
from app.core import dense
from app.core.exceptions import CacheCorrupt, DrinfeldToolkitError, InvariantViolation, SizeCapExceeded, WitnessNotFound
from app.core.fields import FiniteField, extension_field, split_roots
from app.core.linalg import SpanDecomposer
from app.core.parsing import format_element, parse_poly
from app.core.polynomials import PolyA, crt_combine, gcd, iter_monic_irreducibles, monic_irreducibles
from app.modules.arith.services import arith_service
from app.modules.drinfeld.models.module import AFieldFinite
from app.modules.drinfeld.services import drinfeld_service
from app.modules.modpoly.models.bivariate import BivarPolyA, Monomial, SpecializedPhi
from app.modules.modpoly.schemas.modpoly import (CrtOut, HeightWitnessOut, ModularPolynomialOut, PhiCoefficientOut,
                                                 RootRelationOut, HeightBandCheckOut)

logger = logging.getLogger(__name__)


# ===== INTERPOLACIÓN =====

def lagrange_interpolate(F: FiniteField, nodes: Sequence[int], values: Sequence[int]) -> List[int]:
    """p de grado < len(nodes) con p(nodes[k]) = values[k] (lista densa)"""
    master = [1]
    for x in nodes:
        master = dense.mul(F, master, [F.neg(x), 1])
    result: List[int] = []
    for x, y in zip(nodes, values):
        if y == 0:
            continue
        basis, _ = dense.divmod_(F, master, [F.neg(x), 1])
        result = dense.add(F, result, dense.scale(F, basis, F.div(y, dense.evaluate(F, basis, x))))
    return dense.normalize(result)


def interpolation_field(N: PolyA, P: PolyA) -> FiniteField:
    """Menor extensión canónica de 𝔽_q[θ] con ψ(N)+1 elementos no nulos"""
    q, d = P.field.order, P.degree
    need = arith_service.psi(N) + 2
    m = 1
    while q ** (d * m) < need:
        m += 1
    return extension_field(q, d * m)


def least_root(P: PolyA, L: FiniteField) -> int:
    roots = split_roots(list(P.coeffs), L)
    if not roots:
        raise InvariantViolation(f"{P} no tiene raíces en {L!r}")
    return roots[0]


class ResidueReader:
    """Lee elementos de 𝔽_q(θ) ⊆ L como restos módulo P en la base 1, θ, …, θ^{deg P − 1}"""

    def __init__(self, L: FiniteField, theta: int, P: PolyA):
        self.L = L
        self.P = P
        powers = [L.pow(theta, k) for k in range(P.degree)]
        self._solver = SpanDecomposer(L.ground, [L.ground_coordinates(x) for x in powers])

    def __call__(self, c: int) -> PolyA:
        if not drinfeld_service.frobenius_fixed(self.L, c, self.P.degree):
            raise InvariantViolation(f"el coeficiente {c} no es fijo por Frobenius^{self.P.degree}")
        coords = self._solver.coordinates(self.L.ground_coordinates(c))
        if coords is None:
            raise InvariantViolation(f"el coeficiente {c} no está en 𝔽_q[θ]")
        return PolyA(self.P.field, coords)


def specialize_phi(N: PolyA, P: PolyA) -> SpecializedPhi:
    """Φ_N mod P: ψ(N)+1 evaluaciones de ∏_C (X − j(φ/C)) e interpolación en Y"""
    drinfeld_service.require_coprime(P, N)
    n = arith_service.psi(N)
    L = interpolation_field(N, P)
    theta = least_root(P, L)
    base = AFieldFinite(L, theta, P)
    nodes = list(range(1, n + 2))
    rows = []
    for j0 in nodes:
        row = drinfeld_service.hecke_polynomial(drinfeld_service.module_from_j(j0, base), N)
        if len(row) != n + 1 or row[-1] != 1:
            raise InvariantViolation(f"∏(X − j(φ/C)) de grado {len(row) - 1} ≠ ψ = {n}")
        rows.append(row)
    reader = ResidueReader(L, theta, P)
    table: Dict[Monomial, PolyA] = {}
    for i in range(n + 1):
        column = lagrange_interpolate(L, nodes, [row[i] for row in rows])
        for j, c in enumerate(column):
            if c:
                table[(i, j)] = reader(c)
    logger.debug(f"🧮 Φ_{N} mod {P} interpolado en {L!r}")
    return SpecializedPhi(N=N, P=P, psi=n, table=table)


def reduce_mod(phi: BivarPolyA, P: PolyA) -> SpecializedPhi:
    return SpecializedPhi(N=phi.N, P=P, psi=phi.psi, table={k: c % P for k, c in phi.coeffs.items()})


def check_stability(phi: BivarPolyA, P: PolyA) -> bool:
    """Φ mod P coincide con la especialización calculada desde cero en P"""
    return reduce_mod(phi, P).table == specialize_phi(phi.N, P).table


# ===== CRT =====

def degree_bound(N: PolyA) -> int:
    """⌊cota superior de la banda⌋ + holgura"""
    return math.floor(arith_service.height_band(N).upper) + settings.limits.CRT_SLACK


def coprime_primes(N: PolyA, candidates: Optional[Iterator[PolyA]] = None) -> Iterator[PolyA]:
    """Irreducibles mónicos coprimos con N en orden (grado, código)"""
    for P in candidates if candidates is not None else iter_monic_irreducibles(N.field):
        if gcd(P, N).degree == 0:
            yield P


def take_primes(primes: Iterator[PolyA], bound: int) -> List[PolyA]:
    chosen, total = [], 0
    while total < bound:
        P = next(primes)
        chosen.append(P)
        total += P.degree
    return chosen


@dataclass
class CrtResult:
    phi: BivarPolyA
    primes: List[PolyA]
    stability_prime: PolyA
    degree_bound: int

    @property
    def modulus_degree(self) -> int:
        return sum(P.degree for P in self.primes)

    def to_payload(self) -> dict:
        return {
            "phi": self.phi.to_dict(),
            "primes": [P.to_string() for P in self.primes],
            "stability_prime": self.stability_prime.to_string(),
            "degree_bound": self.degree_bound,
        }

    @classmethod
    def from_payload(cls, data: dict, field: FiniteField) -> "CrtResult":
        return cls(
            phi=BivarPolyA.from_dict(data["phi"], field),
            primes=[parse_poly(text, field) for text in data["primes"]],
            stability_prime=parse_poly(data["stability_prime"], field),
            degree_bound=int(data["degree_bound"]),
        )

    def crt_out(self) -> CrtOut:
        return CrtOut(primes=[P.to_string() for P in self.primes],
                      stability_prime=self.stability_prime.to_string(),
                      modulus_degree=self.modulus_degree, degree_bound=self.degree_bound, stable=True)


@dataclass
class CrtAccumulator:
    """Combina especializaciones coeficiente a coeficiente"""

    N: PolyA
    bound: int
    primes: List[PolyA] = dc_field(default_factory=list)
    table: Dict[Monomial, PolyA] = dc_field(default_factory=dict)
    modulus: Optional[PolyA] = None

    def add(self, leg: SpecializedPhi) -> None:
        field = self.N.field
        modulus = self.modulus or PolyA.one(field)
        zero = PolyA.zero(field)
        merged = {}
        for key in set(self.table) | set(leg.table):
            value, _ = crt_combine(self.table.get(key, zero), modulus, leg.residue(*key), leg.P)
            if not value.is_zero():
                merged[key] = value
        self.table = merged
        self.modulus = modulus * leg.P
        self.primes.append(leg.P)
        if self.modulus.degree > 2 * self.bound + leg.P.degree:
            raise SizeCapExceeded(f"el CRT de Φ_{self.N} no se estabiliza (grado {self.modulus.degree})")

    def current(self) -> BivarPolyA:
        return BivarPolyA(self.N.field, self.N, arith_service.psi(self.N), dict(self.table))

    def agrees_with(self, leg: SpecializedPhi) -> bool:
        return reduce_mod(self.current(), leg.P).table == leg.table

    def finish(self, stability_prime: PolyA) -> CrtResult:
        phi = self.current()
        phi.validate()
        return CrtResult(phi=phi, primes=list(self.primes), stability_prime=stability_prime, degree_bound=self.bound)


def crt_phi(N: PolyA) -> BivarPolyA:
    """Versión secuencial del pipeline de ModularPolynomialService"""
    return crt_phi_result(N).phi


def crt_phi_result(N: PolyA) -> CrtResult:
    bound = degree_bound(N)
    primes = coprime_primes(N)
    acc = CrtAccumulator(N, bound)
    for P in take_primes(primes, bound):
        acc.add(specialize_phi(N, P))
    while True:
        extra = next(primes)
        leg = specialize_phi(N, extra)
        if acc.agrees_with(leg):
            return acc.finish(extra)
        logger.warning(f"⚠️ Φ_{N} cambia al añadir {extra}; se amplía el módulo")
        acc.add(leg)


class ModularPolynomialService:
    """Φ_N con tramos CRT concurrentes (asyncio.to_thread) y caché en disco"""

    def __init__(self, cache: Optional[CacheService] = None, workers: int = 1):
        self._cache = cache
        self._workers = max(1, workers)
        self._locks: Dict[str, asyncio.Lock] = {}
        self._results: Dict[str, CrtResult] = {}
        self._corrupt: Dict[str, str] = {}

    async def _irreducible_candidates(self, field: FiniteField, max_total: int) -> List[PolyA]:
        """Irreducibles por grado creciente (listas cacheadas) hasta cubrir max_total"""
        out: List[PolyA] = []
        total, d = 0, 1
        while total < max_total:
            polys = await self.irreducibles(field, d)
            out.extend(polys)
            total += d * len(polys)
            d += 1
        return out

    async def irreducibles(self, field: FiniteField, d: int) -> List[PolyA]:
        if self._cache is None:
            return monic_irreducibles(field, d)
        name = irreducibles_entry_name(field.order, d)
        key = {"kind": "irreducibles", "q": field.order, "d": d}
        try:
            payload = await self._cache.load_json(name, key)
            if payload is not None:
                polys = [parse_poly(text, field) for text in payload]
                if all(P.degree == d and P.is_monic() for P in polys):
                    return polys
                raise CacheCorrupt(f"{name}: lista de irreducibles inválida")
        except CacheCorrupt as e:
            logger.warning(f"⚠️ {e}; se recalcula")
        polys = monic_irreducibles(field, d)
        await self._cache.store_json(name, key, [P.to_string() for P in polys])
        return polys

    async def compute_async(self, N: PolyA) -> CrtResult:
        q = N.field.order
        bound = degree_bound(N)
        logger.info(f"🧮 Calculando Φ_{N} sobre 𝔽_{q} (cota de grado {bound}, {self._workers} workers)...")
        candidates = await self._irreducible_candidates(N.field, 4 * bound + 4 * N.degree + 8)
        primes = coprime_primes(N, iter(candidates))
        semaphore = asyncio.Semaphore(self._workers)

        async def leg(P: PolyA) -> SpecializedPhi:
            async with semaphore:
                return await asyncio.to_thread(specialize_phi, N, P)

        # gather conserva el orden de los primos
        legs = await asyncio.gather(*(leg(P) for P in take_primes(primes, bound)))
        acc = CrtAccumulator(N, bound)
        for item in legs:
            acc.add(item)
        while True:
            extra = next(primes)
            check = await leg(extra)
            if acc.agrees_with(check):
                result = acc.finish(extra)
                logger.info(f"✅ Φ_{N}: altura {result.phi.height}, {len(result.primes)} primos")
                return result
            logger.warning(f"⚠️ Φ_{N} cambia al añadir {extra}; se amplía el módulo")
            acc.add(check)

    async def get_phi(self, N: PolyA, refresh: bool = False) -> CrtResult:
        """Φ_N desde la caché si es válida; si no, se calcula y se guarda"""
        name = phi_entry_name(N.field.order, N.to_string())
        lock = self._locks.setdefault(name, asyncio.Lock())
        async with lock:
            if refresh or name not in self._results:
                self._results[name] = await self._get_phi(N, refresh)
            return self._results[name]

    def corruption(self, N: PolyA) -> Optional[str]:
        """Motivo por el que se descartó la entrada en caché de Φ_N durante esta ejecución"""
        return self._corrupt.get(phi_entry_name(N.field.order, N.to_string()))

    async def _get_phi(self, N: PolyA, refresh: bool) -> CrtResult:
        if self._cache is not None and not refresh:
            try:
                cached = await self.load_cached(N)
                if cached is not None:
                    logger.info(f"💾 Φ_{N} leído de la caché")
                    return cached
            except CacheCorrupt as e:
                self._corrupt[phi_entry_name(N.field.order, N.to_string())] = str(e)
                logger.warning(f"⚠️ Caché inválida para Φ_{N}: {e}; se recalcula")
        result = await self.compute_async(N)
        if self._cache is not None:
            await self._cache.store_json(phi_entry_name(N.field.order, N.to_string()), phi_cache_key(N),
                                         result.to_payload())
        return result

    async def load_cached(self, N: PolyA) -> Optional[CrtResult]:
        payload = await self._cache.load_json(phi_entry_name(N.field.order, N.to_string()), phi_cache_key(N))
        if payload is None:
            return None
        try:
            result = CrtResult.from_payload(payload, N.field)
            result.phi.validate()
        except (KeyError, TypeError, ValueError, DrinfeldToolkitError) as e:
            raise CacheCorrupt(f"Φ_{N} en caché no supera la validación: {e}")
        if result.phi.N != N or result.phi.psi != arith_service.psi(N):
            raise CacheCorrupt(f"la entrada no corresponde a N = {N}")
        return result


def phi_cache_key(N: PolyA) -> dict:
    return {"kind": "phi", "q": N.field.order, "N": N.to_string()}


# ===== ALTURA Y BANDA =====

def phi_height(phi: BivarPolyA) -> int:
    return phi.height


def verify_height_band(phi: BivarPolyA) -> HeightBandCheckOut:
    N = phi.N
    q = N.field.order
    h = phi.height
    band = arith_service.height_band(N)
    implied = arith_service.implied_bq(h, N)
    excess = arith_service.normalized_excess(h, N)
    return HeightBandCheckOut(
        h=h,
        lower=band.lower,
        upper=band.upper,
        upper_proof=band.upper_proof,
        passed=band.lower <= h <= band.upper,
        implied_bq=implied,
        implied_bq_nonnegative=implied >= 0,
        normalized_excess=excess,
        excess_in_range=0 <= excess <= (q * q - 1) * arith_service.bq_upper(q) / 2,
    )


def to_output(phi: BivarPolyA) -> ModularPolynomialOut:
    return ModularPolynomialOut(
        q=phi.q,
        N=phi.N.to_string(),
        psi=phi.psi,
        coeffs=[PhiCoefficientOut(i=i, j=j, c=c.to_string()) for (i, j), c in phi.items()],
        height=phi.height,
    )


# ===== RELACIÓN DE RAÍCES =====

def evaluate_at(phi: BivarPolyA, L: FiniteField, theta: int, F: FiniteField, embedding, x: int, y: int) -> int:
    """Φ(x, y) con los coeficientes reducidos t ↦ θ ∈ L y llevados a F"""
    acc = 0
    for (i, j), c in phi.coeffs.items():
        coeff = embedding(c(theta, field=L))
        acc = F.add(acc, F.mul(coeff, F.mul(F.pow(x, i), F.pow(y, j))))
    return acc


def x_polynomial_at(phi: BivarPolyA, L: FiniteField, theta: int, y: int) -> List[int]:
    """Φ(X, y) mod P como lista densa sobre L"""
    out = [0] * (phi.degree_x + 1)
    for (i, j), c in phi.coeffs.items():
        out[i] = L.add(out[i], L.mul(c(theta, field=L), L.pow(y, j)))
    return dense.normalize(out)


def fresh_primes(N: PolyA, exclude: Sequence[PolyA], count: int) -> List[PolyA]:
    """Los primeros `count` primos coprimos con N que no aparecen en `exclude`"""
    used = set(exclude)
    out: List[PolyA] = []
    for P in coprime_primes(N):
        if P not in used:
            out.append(P)
            if len(out) == count:
                return out
    return out


def verify_root_relation(phi: BivarPolyA, trials: int, seed: int = 0,
                         exclude: Sequence[PolyA] = (), pool: int = 4) -> RootRelationOut:
    """Φ(j(φ/C), j(φ)) = 0 y ∏_C (X − j(φ/C)) = Φ(X, j(φ)) en primos no usados por el CRT"""
    N = phi.N
    rng = random.Random(f"root-relation:{seed}:{N.field.order}:{N}")
    primes = fresh_primes(N, exclude, pool)
    failures: List[str] = []
    for trial in range(trials):
        P = rng.choice(primes)
        L = extension_field(N.field.order, P.degree)
        theta = least_root(P, L)
        j0 = rng.randrange(L.order)
        module = drinfeld_service.module_from_j(j0, AFieldFinite(L, theta, P))
        images = drinfeld_service.hecke_j_invariants(module, N)
        F, emb = images.field, images.embedding
        label = f"ensayo {trial}: P = {P}, j0 = {format_element(j0, L)}"
        for C, j in images.entries:
            if evaluate_at(phi, L, theta, F, emb, j, emb(j0)) != 0:
                failures.append(f"{label}: Φ(j(φ/C), j0) ≠ 0 para C = {C.label()}")
            if N.degree > 0 and evaluate_at(phi, L, theta, F, emb, emb(j0), j) != 0:
                failures.append(f"{label}: Φ(j0, j(φ/C)) ≠ 0 para C = {C.label()}")
        if drinfeld_service.hecke_polynomial(module, N) != x_polynomial_at(phi, L, theta, j0):
            failures.append(f"{label}: ∏(X − j(φ/C)) ≠ Φ(X, j0)")
    logger.info(f"📊 Relación de raíces de Φ_{N}: {trials - len(failures)}/{trials} sin fallos")
    return RootRelationOut(trials=trials, primes=[P.to_string() for P in primes],
                           passed=not failures, failures=failures)


# ===== TESTIGO DE ALTURA =====

def top_forms(phi: BivarPolyA, m: int) -> List[List[int]]:
    """b_{i,m}(Y) = Σ_j [t^m] c_{i,j} · Y^j, solo los no nulos"""
    forms = []
    for i in range(phi.degree_x + 1):
        b = dense.normalize([phi.coefficient(i, j)[m] for j in range(phi.degree_y + 1)])
        if b:
            forms.append(b)
    return forms


def specialized_height(phi: BivarPolyA, F: FiniteField, y: int) -> int:
    """h(Φ(X, y)) para y ∈ F: mayor m con algún b_{i,m}(y) ≠ 0"""
    for m in range(phi.height, -1, -1):
        if any(dense.evaluate(F, b, y) != 0 for b in top_forms(phi, m)):
            return m
    return 0


def specialization_height_witness(phi: BivarPolyA) -> HeightWitnessOut:
    """y ∈ 𝔽_{q^k} que no anula ningún b_{i,h} no nulo; entonces h(Φ(X, y)) = h(Φ)"""
    h = phi.height
    forms = top_forms(phi, h)
    for k in range(1, settings.limits.WITNESS_MAX_EXTENSION + 1):
        F = extension_field(phi.q, k)
        for y in F.elements():
            if all(dense.evaluate(F, b, y) != 0 for b in forms):
                hy = specialized_height(phi, F, y)
                if hy != h:
                    raise InvariantViolation(f"h(Φ(X, {y})) = {hy} ≠ {h}")
                return HeightWitnessOut(k=k, y=format_element(y, F), height=h, specialized_height=hy)
    raise WitnessNotFound(f"ningún y en 𝔽_{{{phi.q}^k}}, k ≤ {settings.limits.WITNESS_MAX_EXTENSION}")
