"""
validate - run the reproduction checks and print claim vs computed value.
"""
import argparse
from pathlib import Path

import pandas as pd

from app.cli.deps import get_workers
from app.core.exceptions import OutputWriteError
from app.schemas.state import IntegrationSettings
from app.schemas.validation import ValidationReport
from app.services.validation_service import ValidationService


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("validate", help="Run the validation suite")
    parser.add_argument("--out", type=Path, help="Write the report as JSON")
    parser.add_argument("--workers", type=int, default=0)
    parser.add_argument("--rel-tol", type=float, help="Loosen or tighten the integrator tolerance")
    parser.set_defaults(handler=handle)


def format_report(report: ValidationReport) -> str:
    frame = pd.DataFrame([
        {
            "check": check.name,
            "status": check.status,
            "computed": check.computed,
            "tolerance": check.tolerance,
            "claim": check.claim,
            "time [s]": f"{check.runtime_s:.1f}",
        }
        for check in report.checks
    ])
    verdict = "PASS" if report.passed else "FAIL"
    return f"{frame.to_string(index=False)}\n\nvalidation {verdict}"


def handle(args: argparse.Namespace) -> int:
    overrides = {"rel_tol": args.rel_tol} if args.rel_tol is not None else {}
    settings = IntegrationSettings(**overrides)
    report = ValidationService(settings, get_workers(args)).run_validation_suite()

    print(format_report(report))
    if args.out is not None:
        try:
            Path(args.out).write_text(report.model_dump_json(indent=2), encoding="utf-8")
        except OSError as exc:
            raise OutputWriteError(f"Cannot write {args.out}: {exc}") from exc
    return 0 if report.passed else 1
