"""
CLI dependencies - shared arguments and service factories for every verb.
"""
import argparse
from pathlib import Path
from typing import Optional

from app.core.config import settings
from app.schemas.run_config import RunConfig
from app.schemas.sweep import BaselineKind, SweepSpec
from app.services.config_service import ConfigService
from app.services.csv_export_service import CsvExportService
from app.services.optimum_service import OptimumService
from app.services.sweep_service import SweepService

REFERENCE_PRESET = "fig3"


def add_run_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="TOML run configuration")
    parser.add_argument("--preset", choices=["fig1", "fig2", "fig3", "fig4"], help="Figure preset")
    parser.add_argument("--out", type=Path, help="Output file (CSV or JSON)")
    parser.add_argument("--workers", type=int, default=0, help=f"Worker processes (default FWM_WORKERS={settings.FWM_WORKERS})")
    parser.add_argument(
        "--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
        help="Override a config value, e.g. params.f=0.0 (repeatable)",
    )
    parser.add_argument("--rel-tol", type=float, help="Integrator relative tolerance")


def load_run_config(args: argparse.Namespace, mode: str) -> RunConfig:
    """Config file + preset + --set overrides, validated."""
    overrides = list(args.overrides)
    if args.rel_tol is not None:
        overrides.append(f"settings.rel_tol={args.rel_tol!r}")
    return ConfigService.load(
        args.config,
        overrides,
        mode=mode,
        preset=args.preset,
        output_path=str(args.out) if args.out else None,
    )


def get_workers(args: argparse.Namespace, config: Optional[RunConfig] = None) -> int:
    configured = config.workers if config is not None and config.workers else 0
    return settings.get_workers(args.workers or configured)


def get_sweep_service(args: argparse.Namespace, config: RunConfig) -> SweepService:
    return SweepService(config.settings, get_workers(args, config))


def get_optimum_service(args: argparse.Namespace, config: RunConfig) -> OptimumService:
    return OptimumService(get_sweep_service(args, config))


def get_csv_export_service() -> CsvExportService:
    return CsvExportService()


def get_reference_spec(config: RunConfig) -> Optional[SweepSpec]:
    """Single-emitter sweep whose optimum is the SINGLE_EMITTER_OPTIMUM baseline."""
    if config.baseline != BaselineKind.SINGLE_EMITTER_OPTIMUM:
        return None
    reference = ConfigService.build({"preset": REFERENCE_PRESET, "mode": "optimize"}).sweep_spec()
    solver = config.sweep.solver if config.sweep is not None else reference.solver
    return reference.model_copy(update={"solver": solver})
