"""
simulate - one steady state of a configured system.
"""
import argparse
import logging

from app.cli.deps import add_run_arguments, get_csv_export_service, load_run_config
from app.services.analytic_service import AnalyticService
from app.services.integration_service import IntegrationService

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("simulate", help="Integrate one parameter set to steady state")
    add_run_arguments(parser)
    parser.add_argument(
        "--solver", choices=["integrate", "fixed_point"], default="integrate",
        help="Time integration (authoritative) or the algebraic fixed point",
    )
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    config = load_run_config(args, "simulate")

    if args.solver == "fixed_point":
        result = AnalyticService().fixed_point_solve(config.params)
    else:
        result = IntegrationService(config.settings).integrate_to_steady_state(config.params)

    print(f"|α3|² = {result.fwm_intensity:.10e}")
    for index, emitter in enumerate(result.state.emitters, start=1):
        print(f"ρ_ee[{index}] = {emitter.rho_ee:.10e}  (y = {emitter.inversion:+.12f})")
    print(f"converged = {result.converged}  residual = {result.final_residual:.3e}  t = {result.elapsed_sim_time:.6g}")

    if config.output_path is not None:
        get_csv_export_service().emit_csv(result, config.output_path, {"preset": config.preset})
        print(f"wrote {config.output_path}")

    if not result.converged:
        logger.warning("Returning the last state; steady state not reached")
        return 3
    return 0
