# tests/conftest.py - Fixtures compartidas
import pytest

from app.config.cache import CacheService, GlobalCacheService
from app.config.settings import GlobalSettings, SettingsFactory
from app.core.fields import FiniteField, extension_field, ground_field
from app.core.parsing import parse_poly
from app.core.polynomials import PolyA
from app.modules.modpoly.services import modpoly_service


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="ejecutar también los tests lentos")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="lento: usar --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


# ===== CAMPOS =====

@pytest.fixture
def F2() -> FiniteField:
    return ground_field(2)


@pytest.fixture
def F3() -> FiniteField:
    return ground_field(3)


@pytest.fixture
def F4() -> FiniteField:
    return ground_field(4)


@pytest.fixture
def L4() -> FiniteField:
    """𝔽_16 como extensión cuadrática de 𝔽_4"""
    return extension_field(4, 2)


@pytest.fixture
def poly():
    """poly("t^2+1", 2) → PolyA sobre 𝔽_2"""

    def build(text: str, q: int) -> PolyA:
        return parse_poly(text, ground_field(q))

    return build


# ===== CACHÉ AISLADA =====

@pytest.fixture
def cache_dir(tmp_path):
    """CACHE_DIR temporal; la configuración global vuelve a su valor al terminar"""
    previous = GlobalSettings().get_settings().CACHE_DIR
    test_settings = SettingsFactory.create_test_settings(tmp_path / "cache")
    GlobalSettings().reload_settings(CACHE_DIR=test_settings.CACHE_DIR)
    GlobalCacheService().reset()
    yield test_settings.cache_path
    GlobalSettings().reload_settings(CACHE_DIR=previous)
    GlobalCacheService().reset()


@pytest.fixture
def cache(cache_dir) -> CacheService:
    return GlobalCacheService().get_service()


# ===== Φ_N DE REFERENCIA =====

@pytest.fixture(scope="session")
def phi_t():
    """Φ_t sobre 𝔽_2 (resultado del CRT completo), calculado una vez por sesión"""
    return modpoly_service.crt_phi_result(parse_poly("t", ground_field(2)))
