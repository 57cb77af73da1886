"""
sweep - intensity, factor and population curves over one parameter.
"""
import argparse

from app.cli.deps import (
    add_run_arguments,
    get_csv_export_service,
    get_reference_spec,
    get_sweep_service,
    load_run_config,
)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("sweep", help="Sweep one parameter and write the curve as CSV")
    add_run_arguments(parser)
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    config = load_run_config(args, "sweep")
    spec = config.sweep_spec()
    curve = get_sweep_service(args, config).run_sweep(
        spec, config.baseline, config.settings, reference=get_reference_spec(config)
    )

    factors = curve.factors
    values = curve.param_values
    print(f"baseline ({curve.baseline_kind.value}) |α3|² = {curve.baseline_intensity:.10e}")
    print(f"min factor {factors.min():.6e} at {spec.target} = {values[factors.argmin()]:.6f}")
    print(f"max factor {factors.max():.6e} at {spec.target} = {values[factors.argmax()]:.6f}")
    if curve.flagged:
        print(f"{len(curve.flagged)} points did not converge (converged=False in the output)")

    if config.output_path is not None:
        get_csv_export_service().emit_csv(curve, config.output_path, {
            "preset": config.preset,
            "params": config.params.model_dump(mode="json"),
        })
        print(f"wrote {config.output_path}")
    return 0
