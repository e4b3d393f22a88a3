# ===== app/config/cache.py - Caché de tablas en disco =====
"""
Servicio de caché direccionado por contenido.
Cada archivo es un sobre {"key": {..., "code_version"}, "digest": sha256(payload), "payload": ...}
"""

import json
import logging
import re
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Optional

import aiofiles
import aiofiles.os

from app.config.settings import ApplicationSettings, settings
from app.core.exceptions import CacheCorrupt
from app.shared.utils.formatting import canonical_json, payload_digest

logger = logging.getLogger(__name__)


def slug(text: str) -> str:
    """'t^2+t+1' → 't_2_t_1'"""
    return re.sub(r"[^0-9A-Za-z]+", "_", text).strip("_") or "1"


def phi_entry_name(q: int, N_text: str) -> str:
    return f"phi_q{q}_{slug(N_text)}.json"


def irreducibles_entry_name(q: int, d: int) -> str:
    return f"irreducibles_q{q}_d{d}.json"


# ===== INTERFACES =====
class ICacheStore(ABC):
    """Interface para almacenes de sobres JSON"""

    @abstractmethod
    async def read(self, name: str) -> Optional[str]:
        pass

    @abstractmethod
    async def write(self, name: str, text: str) -> None:
        pass

    @abstractmethod
    async def remove(self, name: str) -> None:
        pass

    @abstractmethod
    def names(self) -> List[str]:
        pass


# ===== ALMACÉN EN DISCO =====
class JsonFileStore(ICacheStore):
    """Un archivo por entrada dentro de CACHE_DIR"""

    def __init__(self, root: Path):
        self._root = Path(root)

    @property
    def root(self) -> Path:
        return self._root

    def ensure(self) -> None:
        self._root.mkdir(parents=True, exist_ok=True)

    async def read(self, name: str) -> Optional[str]:
        path = self._root / name
        if not path.exists():
            return None
        async with aiofiles.open(path, "r", encoding="utf-8") as f:
            return await f.read()

    async def write(self, name: str, text: str) -> None:
        self.ensure()
        tmp = self._root / f".{name}.tmp"
        async with aiofiles.open(tmp, "w", encoding="utf-8") as f:
            await f.write(text)
        await aiofiles.os.rename(tmp, self._root / name)

    async def remove(self, name: str) -> None:
        path = self._root / name
        if path.exists():
            await aiofiles.os.remove(path)

    def names(self) -> List[str]:
        if not self._root.is_dir():
            return []
        return sorted(p.name for p in self._root.glob("*.json"))


# ===== FACTORY =====
class CacheFactory:
    """Factory para crear almacenes de caché"""

    @staticmethod
    def create_store(config: Optional[ApplicationSettings] = None) -> JsonFileStore:
        config = config or settings
        return JsonFileStore(config.cache_path)


# ===== SERVICIO PRINCIPAL =====
class CacheService:
    """
    Caché de tablas exactas:
    1. Sobres versionados con CODE_VERSION_TAG
    2. Digest sha256 del payload canónico
    3. Entradas inválidas → CacheCorrupt (el llamador recalcula)
    """

    def __init__(self, store: Optional[ICacheStore] = None, code_version: Optional[str] = None):
        self._store = store or CacheFactory.create_store()
        self._code_version = code_version or ApplicationSettings.CODE_VERSION_TAG

    @property
    def store(self) -> ICacheStore:
        return self._store

    async def initialize(self) -> None:
        if isinstance(self._store, JsonFileStore):
            self._store.ensure()
            logger.info(f"💾 Caché lista en {self._store.root}")

    def _full_key(self, key: Dict[str, Any]) -> Dict[str, Any]:
        return {**key, "code_version": self._code_version}

    async def store_json(self, name: str, key: Dict[str, Any], payload: Any) -> None:
        envelope = {"key": self._full_key(key), "digest": payload_digest(payload), "payload": payload}
        await self._store.write(name, canonical_json(envelope))
        logger.info(f"💾 Guardado {name}")

    async def load_json(self, name: str, key: Dict[str, Any]) -> Optional[Any]:
        """Payload validado, None si no existe; CacheCorrupt si no coincide clave, versión o digest"""
        text = await self._store.read(name)
        if text is None:
            return None
        try:
            envelope = json.loads(text)
            payload = envelope["payload"]
            stored_key = envelope["key"]
            digest = envelope["digest"]
        except (ValueError, KeyError, TypeError) as e:
            raise CacheCorrupt(f"{name}: sobre ilegible ({e})")
        if stored_key != self._full_key(key):
            raise CacheCorrupt(f"{name}: clave o versión distinta ({stored_key})")
        if digest != payload_digest(payload):
            raise CacheCorrupt(f"{name}: digest no coincide")
        logger.debug(f"💾 Leído {name}")
        return payload

    async def describe(self, name: str) -> Dict[str, Any]:
        """Estado de una entrada sin interpretar el payload"""
        text = await self._store.read(name)
        if text is None:
            return {"name": name, "status": "missing"}
        try:
            envelope = json.loads(text)
            ok = envelope["digest"] == payload_digest(envelope["payload"])
            version_ok = envelope["key"].get("code_version") == self._code_version
        except (ValueError, KeyError, TypeError, AttributeError):
            return {"name": name, "status": "unreadable"}
        status = "ok" if ok and version_ok else ("stale" if ok else "corrupt")
        return {"name": name, "status": status, "key": envelope["key"]}

    def entries(self) -> List[str]:
        return self._store.names()

    async def remove(self, name: str) -> None:
        await self._store.remove(name)

    async def clear(self) -> int:
        names = self.entries()
        for name in names:
            await self._store.remove(name)
        logger.info(f"💾 Caché vaciada ({len(names)} entradas)")
        return len(names)

    async def health_check(self) -> Dict[str, Any]:
        """Conteo de entradas por tipo"""
        names = self.entries()
        return {
            "healthy": True,
            "entries": len(names),
            "phi": sum(1 for n in names if n.startswith("phi_")),
            "irreducibles": sum(1 for n in names if n.startswith("irreducibles_")),
            "code_version": self._code_version,
        }


# ===== SINGLETON PATTERN =====
class GlobalCacheService:
    """Singleton para el servicio global de caché"""

    _instance = None
    _service = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def get_service(self) -> CacheService:
        if self._service is None:
            self._service = CacheService()
        return self._service

    def reset(self, service: Optional[CacheService] = None) -> CacheService:
        """Sustituir el servicio (p. ej. tras cambiar CACHE_DIR)"""
        self._service = service or CacheService()
        return self._service
