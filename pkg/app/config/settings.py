# app/config/settings.py - Configuración del toolkit
from pathlib import Path
from typing import ClassVar, Optional
from abc import ABC, abstractmethod

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr
from pydantic_settings import BaseSettings, SettingsConfigDict


class IConfigurationSettings(ABC):
    """Interface para configuraciones (Dependency Inversion Principle)"""

    @property
    @abstractmethod
    def cache_path(self) -> Path:
        pass

    @property
    @abstractmethod
    def limits(self) -> "ComputationLimits":
        pass


class ComputationLimits(BaseModel):
    """Topes duros de tamaño y precisión (inmutables)"""

    model_config = ConfigDict(frozen=True)

    MAX_BASE_FIELD_ORDER: int = 2 ** 16
    # campos que se recorren exhaustivamente (find_roots)
    MAX_EXTENSION_ORDER: int = 2 ** 20
    # campos donde la torsión se obtiene por álgebra lineal
    MAX_TORSION_FIELD_ORDER: int = 2 ** 128
    TABLE_ORDER_LIMIT: int = 2 ** 16
    MAX_TORSION_EXTENSION_DEGREE: int = 24
    OMEGA_EXTRA_PRECISION: int = 8
    REDUCTION_ITERATION_FACTOR: int = 4
    WITNESS_MAX_EXTENSION: int = 4
    CRT_SLACK: int = 2


class RunConfig(BaseModel):
    """Configuración de una ejecución de la CLI; la semilla fija todo muestreo"""

    q: Optional[int] = None
    subcommand: str
    arguments: dict = Field(default_factory=dict)
    cache_dir: Path = Path("cache")
    workers: int = 1
    seed: int = 0
    timings: bool = False
    limits: ComputationLimits = Field(default_factory=ComputationLimits)


class ApplicationSettings(BaseSettings, IConfigurationSettings):
    """Configuración principal; solo CACHE_DIR viene del entorno"""

    PROJECT_NAME: ClassVar[str] = "Drinfeld Heights Toolkit"
    VERSION: ClassVar[str] = "1.0.0"
    CODE_VERSION_TAG: ClassVar[str] = "phi-v1"

    CACHE_DIR: Path = Path("cache")
    _limits: ComputationLimits = PrivateAttr(default_factory=ComputationLimits)

    model_config = SettingsConfigDict(env_file=".env", case_sensitive=True, extra="ignore")

    def __init__(self, **kwargs):
        limits = kwargs.pop("limits", None)
        super().__init__(**kwargs)
        self._limits = limits or ComputationLimits()

    @property
    def cache_path(self) -> Path:
        return Path(self.CACHE_DIR)

    @property
    def limits(self) -> ComputationLimits:
        return self._limits

    def with_limits(self, **overrides) -> ComputationLimits:
        """Copia de los límites con algunos valores sustituidos"""
        return self._limits.model_copy(update=overrides)


class SettingsFactory:
    """Factory para crear configuraciones (Factory Pattern)"""

    @staticmethod
    def create_settings(**kwargs) -> ApplicationSettings:
        return ApplicationSettings(**kwargs)

    @staticmethod
    def create_test_settings(cache_dir: Path) -> ApplicationSettings:
        """Configuraciones para testing con un directorio de caché aislado"""
        return ApplicationSettings(CACHE_DIR=cache_dir)


class GlobalSettings:
    """Singleton para configuraciones globales (Singleton Pattern)"""

    _instance = None
    _settings = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def get_settings(self) -> ApplicationSettings:
        """Obtener configuraciones (Lazy Loading)"""
        if self._settings is None:
            self._settings = SettingsFactory.create_settings()
        return self._settings

    def reload_settings(self, **kwargs) -> ApplicationSettings:
        """Recargar configuraciones; el objeto global se actualiza en sitio"""
        fresh = SettingsFactory.create_settings(**kwargs)
        current = self.get_settings()
        current.CACHE_DIR = fresh.CACHE_DIR
        current._limits = fresh.limits
        return current


# Instancia global
settings = GlobalSettings().get_settings()
