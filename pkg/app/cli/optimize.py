"""
optimize - refined location of the maximum enhancement.
"""
import argparse
from pathlib import Path

from app.cli.deps import add_run_arguments, get_optimum_service, get_reference_spec, load_run_config
from app.core.exceptions import OutputWriteError
from app.services.config_service import ConfigService


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("optimize", help="Find the optimum of the configured sweep")
    add_run_arguments(parser)
    parser.add_argument(
        "--compare-single", action="store_true",
        help="For two emitters: also report the ratio to the single-emitter (fig3) optimum",
    )
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    config = load_run_config(args, "optimize")
    spec = config.sweep_spec()
    service = get_optimum_service(args, config)

    if args.compare_single and spec.base_params.n_emitters == 2:
        single_spec = ConfigService.build({"preset": "fig3", "mode": "optimize"}).sweep_spec()
        single_spec = single_spec.model_copy(update={"solver": spec.solver})
        report = service.coupled_vs_single_report(single_spec, spec, config.settings)
        optimum = report.coupled
        payload = report.model_dump_json(indent=2)
        print(f"single optimum: {report.single.param_value:.6f} (factor {report.single.factor:.6g})")
        print(f"coupled/single ratio: {report.ratio:.6g}")
    else:
        optimum = service.find_optimum(
            spec, config.baseline, config.settings, reference=get_reference_spec(config)
        )
        payload = optimum.model_dump_json(indent=2)

    print(f"optimum {spec.target} = {optimum.param_value:.6f}")
    print(f"factor = {optimum.factor:.6g}  (bracket {optimum.bracket[0]:.6f} .. {optimum.bracket[1]:.6f})")
    if optimum.seed is not None:
        print(f"seeded with enhancement root {optimum.seed:.6f}")

    if config.output_path is not None:
        try:
            Path(config.output_path).write_text(payload, encoding="utf-8")
        except OSError as exc:
            raise OutputWriteError(f"Cannot write {config.output_path}: {exc}") from exc
        print(f"wrote {config.output_path}")
    return 0
