# app/shared/utils/schema_export.py - Esquemas JSON versionados de las salidas de la CLI
"""
Genera docs/schemas/<subcomando>.v<N>.json a partir de los modelos pydantic:

    python -m app.shared.utils.schema_export [directorio]
"""
import logging
import sys
from pathlib import Path
from typing import Dict, List, Type

from app.modules.arith.schemas.profile import ArithReport
from app.modules.btree.schemas.tree import BtReduceOut
from app.modules.drinfeld.schemas.drinfeld import DrinfeldQuotientsOut
from app.modules.farey.schemas.farey import FareyListOut
from app.modules.heights.schemas.heights import HeckeHeightsReport
from app.modules.modpoly.schemas.modpoly import ModpolyReport
from app.modules.omega.schemas.omega import OmegaReductionOut
from app.shared.schemas import ExactModel
from app.shared.utils.formatting import canonical_json
from app.verification.schemas import CacheReport, VerifyReport

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

OUTPUT_MODELS: Dict[str, Type[ExactModel]] = {
    "arith": ArithReport,
    "farey": FareyListOut,
    "bt-reduce": BtReduceOut,
    "omega-reduce": OmegaReductionOut,
    "drinfeld-quotients": DrinfeldQuotientsOut,
    "modpoly": ModpolyReport,
    "hecke-heights": HeckeHeightsReport,
    "verify": VerifyReport,
    "cache": CacheReport,
}


def schema_for(model: Type[ExactModel]) -> dict:
    """Esquema de la forma serializada (los racionales viajan como cadenas "p/q")"""
    schema = model.model_json_schema(mode="serialization")
    schema["$id"] = f"{model.__name__}.v{SCHEMA_VERSION}"
    return schema


def export_schemas(target: Path) -> List[Path]:
    target = Path(target)
    target.mkdir(parents=True, exist_ok=True)
    written = []
    for name, model in OUTPUT_MODELS.items():
        path = target / f"{name}.v{SCHEMA_VERSION}.json"
        path.write_text(canonical_json(schema_for(model)) + "\n", encoding="utf-8")
        written.append(path)
    logger.info(f"✅ {len(written)} esquemas escritos en {target}")
    return written


if __name__ == "__main__":
    export_schemas(Path(sys.argv[1]) if len(sys.argv) > 1 else Path("docs/schemas"))
