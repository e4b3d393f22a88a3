# app/verification/api/commands.py - Subcomandos verify y cache
import argparse

from app.config.cache import CacheService, GlobalCacheService, phi_entry_name
from app.config.settings import settings
from app.core.exceptions import DrinfeldToolkitError, PreconditionViolated
from app.core.fields import ground_field
from app.core.parsing import parse_poly
from app.modules.modpoly.services import modpoly_service
from app.modules.modpoly.services.modpoly_service import ModularPolynomialService
from app.shared.commands import BaseCommand
from app.verification.schemas import CacheEntryOut, CacheReport, VerifyReport
from app.verification.suite_manager import SuiteManager
from app.verification.suites.base_suite import SuiteContext


class VerifyCommand(BaseCommand):
    name = "verify"
    help = "Ejecuta las suites de verificación (arith, farey, btree, omega, modpoly, heights o all)"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--suite", default="all", help=f"{', '.join(SuiteManager.available())} o all")
        self.add_q(parser, required=False)

    async def _execute(self, args: argparse.Namespace) -> VerifyReport:
        if args.q is not None:
            ground_field(args.q)
        workers = getattr(args, "workers", 1)
        context = SuiteContext(
            seed=getattr(args, "seed", 0),
            phi_service=ModularPolynomialService(GlobalCacheService().get_service(), workers),
            q=args.q,
            workers=workers,
            timings=getattr(args, "timings", False),
        )
        manager = SuiteManager(context)
        reports = await manager.run(manager.resolve(args.suite))
        return VerifyReport(seed=context.seed, q=args.q, suites=reports, passed=all(r.passed for r in reports))

    def succeeded(self, result: VerifyReport) -> bool:
        return result.passed


class CacheCommand(BaseCommand):
    name = "cache"
    help = "Gestión de la caché de Φ_N e irreducibles: list, clear, show --q --N, verify"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("action", choices=["list", "clear", "show", "verify"])
        self.add_q(parser, required=False)
        parser.add_argument("--N", help="polinomio mónico en t (para show)")

    async def _execute(self, args: argparse.Namespace) -> CacheReport:
        cache = GlobalCacheService().get_service()
        root = str(settings.cache_path)
        if args.action == "clear":
            return CacheReport(action="clear", cache_dir=root, removed=await cache.clear())
        if args.action == "show":
            return await self._show(cache, args, root)
        entries = [CacheEntryOut(**await cache.describe(name)) for name in cache.entries()]
        if args.action == "verify":
            entries = [await self._deep_check(cache, entry) for entry in entries]
        return CacheReport(action=args.action, cache_dir=root, entries=entries)

    async def _show(self, cache: CacheService, args: argparse.Namespace, root: str) -> CacheReport:
        if args.q is None or args.N is None:
            raise PreconditionViolated("cache show necesita --q y --N")
        N = self.modulus(args, args.N)
        name = phi_entry_name(args.q, N.to_string())
        result = await ModularPolynomialService(cache).load_cached(N)
        if result is None:
            return CacheReport(action="show", cache_dir=root, entries=[CacheEntryOut(name=name, status="missing")])
        entry = CacheEntryOut(**await cache.describe(name))
        return CacheReport(action="show", cache_dir=root, entries=[entry],
                           phi=modpoly_service.to_output(result.phi).to_json_dict())

    @staticmethod
    async def _deep_check(cache: CacheService, entry: CacheEntryOut) -> CacheEntryOut:
        """Las entradas de Φ con digest correcto se validan además como polinomio modular"""
        key = entry.key or {}
        if entry.status != "ok" or key.get("kind") != "phi":
            return entry
        try:
            N = parse_poly(key["N"], ground_field(int(key["q"])))
            await ModularPolynomialService(cache).load_cached(N)
        except (DrinfeldToolkitError, KeyError, ValueError):
            return CacheEntryOut(name=entry.name, status="invalid", key=entry.key)
        return entry

    def succeeded(self, result: CacheReport) -> bool:
        if result.action != "verify":
            return True
        return all(entry.status == "ok" for entry in result.entries)
