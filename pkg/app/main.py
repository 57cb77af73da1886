import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from app.cli import optimize, simulate, sweep, validate
from app.core.config import settings
from app.core.exceptions import FWMError
from app.core.logging import configure_logging
from app.services.config_service import ConfigService

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fwm",
        description=f"{settings.PROJECT_NAME}: four-wave mixing in a grating coupled to quantum emitters",
    )
    parser.add_argument("--log-level", default=None, help=f"Logging level (default {settings.LOG_LEVEL})")

    subparsers = parser.add_subparsers(dest="command", required=True)
    # simulate / sweep / optimize / validate
    for verb in (simulate, sweep, optimize, validate):
        verb.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)

    try:
        return args.handler(args)
    except FWMError as exc:
        logger.error("%s: %s", type(exc).__name__, exc.detail)
        print(f"error: {exc.detail}", file=sys.stderr)
        return exc.exit_code
    except ValidationError as exc:
        error = ConfigService.translate_errors(exc)
        print(f"error: {error.detail}", file=sys.stderr)
        return error.exit_code


if __name__ == "__main__":
    sys.exit(main())
