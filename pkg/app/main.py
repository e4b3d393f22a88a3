# app/main.py - Punto de entrada de la CLI
import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import Any, List, Optional, Sequence, Tuple

from app.config.cache import GlobalCacheService
from app.config.settings import GlobalSettings, RunConfig, SettingsFactory, settings
from app.core.exceptions import DrinfeldToolkitError
from app.core.fields import ground_field
from app.modules.arith.api.commands import ArithCommand
from app.modules.btree.api.commands import BtReduceCommand
from app.modules.drinfeld.api.commands import DrinfeldQuotientsCommand
from app.modules.farey.api.commands import FareyCommand
from app.modules.heights.api.commands import HeckeHeightsCommand
from app.modules.modpoly.api.commands import ModpolyCommand
from app.modules.omega.api.commands import OmegaReduceCommand
from app.shared.commands import BaseCommand
from app.shared.utils.formatting import canonical_json
from app.verification.api.commands import CacheCommand, VerifyCommand

logger = logging.getLogger(__name__)

GLOBAL_FLAGS = ("verbose", "quiet", "timings", "seed", "workers", "cache_dir")


class CommandRegistry:
    """Subcomandos disponibles en orden de ayuda (Registry Pattern)"""

    @staticmethod
    def commands() -> List[BaseCommand]:
        return [
            ArithCommand(),
            FareyCommand(),
            BtReduceCommand(),
            OmegaReduceCommand(),
            DrinfeldQuotientsCommand(),
            ModpolyCommand(),
            HeckeHeightsCommand(),
            VerifyCommand(),
            CacheCommand(),
        ]


class CLIFactory:
    """Factory para crear el parser de la CLI (Factory Pattern)"""

    @staticmethod
    def create_parser() -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="drinfeld-heights",
            description=f"{settings.PROJECT_NAME} {settings.VERSION}: alturas de polinomios modulares de Drinfeld",
        )
        verbosity = parser.add_mutually_exclusive_group()
        verbosity.add_argument("--verbose", action="store_true", help="registro DEBUG")
        verbosity.add_argument("--quiet", action="store_true", help="solo avisos y errores")
        parser.add_argument("--timings", action="store_true", help="incluir tiempos en los informes de verify")
        parser.add_argument("--seed", type=int, default=0, help="semilla de todo muestreo")
        parser.add_argument("--workers", type=int, default=1, help="tramos CRT y casos en paralelo")
        parser.add_argument("--cache-dir", default=None, help="directorio de caché (por defecto CACHE_DIR)")

        subparsers = parser.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMANDO")
        for command in CommandRegistry.commands():
            command.register(subparsers)
        return parser


def parse_arguments(argv: Sequence[str]) -> argparse.Namespace:
    return CLIFactory.create_parser().parse_args(list(argv))


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """q se valida aquí (UnsupportedField si no es potencia de primo)"""
    q = getattr(args, "q", None)
    if q is not None:
        ground_field(q)
    arguments = {k: v for k, v in vars(args).items() if k not in GLOBAL_FLAGS + ("command", "subcommand", "q")}
    return RunConfig(
        q=q,
        subcommand=args.subcommand,
        arguments=arguments,
        cache_dir=Path(args.cache_dir) if args.cache_dir else SettingsFactory.create_settings().cache_path,
        workers=max(1, args.workers),
        seed=args.seed,
        timings=args.timings,
    )


def parse_inputs(argv: Sequence[str]) -> Tuple[RunConfig, argparse.Namespace]:
    """argv → RunConfig"""
    args = parse_arguments(argv)
    return build_run_config(args), args


class ApplicationLifecycle:
    """Preparación de registro, configuración y caché para una ejecución"""

    @staticmethod
    def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
        level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
        logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True)

    @staticmethod
    def startup(config: RunConfig) -> None:
        GlobalSettings().reload_settings(CACHE_DIR=config.cache_dir, limits=config.limits)
        GlobalCacheService().reset()
        logger.debug(f"🔧 {config.subcommand} con caché en {config.cache_dir}, semilla {config.seed}")


class OutputWriter:
    """JSON canónico en stdout; los resultados de texto se imprimen tal cual"""

    @staticmethod
    def render(result: Any) -> str:
        if isinstance(result, str):
            return result
        return canonical_json(result.to_json_dict())

    @staticmethod
    def emit(result: Any) -> None:
        sys.stdout.write(OutputWriter.render(result) + "\n")
        sys.stdout.flush()

    @staticmethod
    def emit_error(error: DrinfeldToolkitError) -> None:
        sys.stdout.write(canonical_json(error.to_dict()) + "\n")
        sys.stdout.flush()


async def execute(config: RunConfig, args: argparse.Namespace) -> int:
    command: BaseCommand = args.command
    args.workers, args.seed, args.timings = config.workers, config.seed, config.timings
    result = await command.execute(args)
    OutputWriter.emit(result)
    return 0 if command.succeeded(result) else 1


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Código de salida: 0 éxito, 1 verificación, 2 entrada, 3 no soportado, 4 límites"""
    argv = sys.argv[1:] if argv is None else argv
    args = parse_arguments(argv)
    ApplicationLifecycle.configure_logging(args.verbose, args.quiet)
    try:
        config = build_run_config(args)
        ApplicationLifecycle.startup(config)
        return asyncio.run(execute(config, args))
    except DrinfeldToolkitError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        OutputWriter.emit_error(e)
        return e.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
