# tests/test_cache.py
import json
import logging

import pytest

from app.config.cache import CacheService, JsonFileStore, irreducibles_entry_name, phi_entry_name, slug
from app.core.exceptions import CacheCorrupt
from app.core.fields import ground_field
from app.core.parsing import parse_poly
from app.core.polynomials import PolyA
from app.modules.modpoly.services.modpoly_service import ModularPolynomialService, phi_cache_key


def test_nombres_de_entrada():
    assert slug("t^2+t+1") == "t_2_t_1"
    assert phi_entry_name(2, "t^2+t+1") == "phi_q2_t_2_t_1.json"
    assert irreducibles_entry_name(3, 4) == "irreducibles_q3_d4.json"


async def test_guardar_y_leer(cache, cache_dir):
    await cache.store_json("x.json", {"kind": "demo"}, {"values": [1, 2, 3]})
    assert await cache.load_json("x.json", {"kind": "demo"}) == {"values": [1, 2, 3]}
    assert await cache.load_json("y.json", {"kind": "demo"}) is None
    envelope = json.loads((cache_dir / "x.json").read_text(encoding="utf-8"))
    assert envelope["key"]["code_version"] == "phi-v1"
    assert (await cache.describe("x.json"))["status"] == "ok"


async def test_clave_distinta(cache):
    await cache.store_json("x.json", {"kind": "demo", "q": 2}, [])
    with pytest.raises(CacheCorrupt):
        await cache.load_json("x.json", {"kind": "demo", "q": 3})


async def test_version_de_codigo(cache, cache_dir):
    await cache.store_json("x.json", {"kind": "demo"}, [1])
    newer = CacheService(JsonFileStore(cache_dir), code_version="phi-v2")
    with pytest.raises(CacheCorrupt):
        await newer.load_json("x.json", {"kind": "demo"})
    assert (await newer.describe("x.json"))["status"] == "stale"


async def test_digest_alterado(cache, cache_dir):
    await cache.store_json("x.json", {"kind": "demo"}, [1, 2])
    path = cache_dir / "x.json"
    envelope = json.loads(path.read_text(encoding="utf-8"))
    envelope["payload"] = [1, 3]
    path.write_text(json.dumps(envelope), encoding="utf-8")
    with pytest.raises(CacheCorrupt):
        await cache.load_json("x.json", {"kind": "demo"})
    assert (await cache.describe("x.json"))["status"] == "corrupt"


async def test_archivo_ilegible(cache, cache_dir):
    cache_dir.mkdir(parents=True, exist_ok=True)
    (cache_dir / "x.json").write_text("{no es json", encoding="utf-8")
    assert (await cache.describe("x.json"))["status"] == "unreadable"
    assert (await cache.describe("z.json"))["status"] == "missing"
    with pytest.raises(CacheCorrupt):
        await cache.load_json("x.json", {"kind": "demo"})


async def test_listar_y_vaciar(cache):
    await cache.store_json(phi_entry_name(2, "t"), {"kind": "phi"}, {})
    await cache.store_json(irreducibles_entry_name(2, 1), {"kind": "irreducibles"}, [])
    health = await cache.health_check()
    assert (health["entries"], health["phi"], health["irreducibles"]) == (2, 1, 1)
    assert await cache.clear() == 2
    assert cache.entries() == []


# ===== Φ_N E IRREDUCIBLES EN CACHÉ =====

async def test_phi_guardado_y_leido(cache, phi_t):
    N = phi_t.phi.N
    await cache.store_json(phi_entry_name(2, "t"), phi_cache_key(N), phi_t.to_payload())
    service = ModularPolynomialService(cache)
    result = await service.get_phi(N)
    assert result.phi.coeffs == phi_t.phi.coeffs
    assert result.primes == phi_t.primes
    assert service.corruption(N) is None


async def test_phi_invalido_con_digest_correcto(cache, phi_t):
    """Un Φ no simétrico no supera la validación aunque el sobre esté intacto"""
    N = phi_t.phi.N
    payload = phi_t.to_payload()
    payload["phi"]["coeffs"] = [e for e in payload["phi"]["coeffs"] if (e["i"], e["j"]) != (0, 3)]
    await cache.store_json(phi_entry_name(2, "t"), phi_cache_key(N), payload)
    with pytest.raises(CacheCorrupt):
        await ModularPolynomialService(cache).load_cached(N)


async def test_phi_corrupto_se_recalcula(cache, cache_dir, caplog):
    F = ground_field(2)
    N = PolyA.one(F)
    name = phi_entry_name(2, N.to_string())
    cache_dir.mkdir(parents=True, exist_ok=True)
    (cache_dir / name).write_text("basura", encoding="utf-8")
    service = ModularPolynomialService(cache)
    with caplog.at_level(logging.WARNING):
        result = await service.get_phi(N)
    assert result.phi.coeffs == {(1, 0): PolyA.one(F), (0, 1): PolyA.one(F)}
    assert service.corruption(N) is not None
    assert any("Caché inválida" in record.getMessage() for record in caplog.records)
    assert (await cache.describe(name))["status"] == "ok"


async def test_irreducibles_en_cache(cache):
    F = ground_field(2)
    name = irreducibles_entry_name(2, 3)
    await cache.store_json(name, {"kind": "irreducibles", "q": 2, "d": 3}, ["t+1"])
    polys = await ModularPolynomialService(cache).irreducibles(F, 3)
    assert [P.to_string() for P in polys] == ["t^3+t+1", "t^3+t^2+1"]
    assert await cache.load_json(name, {"kind": "irreducibles", "q": 2, "d": 3}) == ["t^3+t+1", "t^3+t^2+1"]
    assert await ModularPolynomialService(cache).irreducibles(F, 3) == [parse_poly("t^3+t+1", F),
                                                                         parse_poly("t^3+t^2+1", F)]
