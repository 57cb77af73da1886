import logging
from typing import Optional

from app.core.config import settings

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


def configure_logging(level: Optional[str] = None, log_file: Optional[str] = None) -> None:
    """Set up stream logging, mirrored to a file when one is configured."""
    handlers: list[logging.Handler] = [logging.StreamHandler()]
    path = log_file if log_file is not None else settings.LOG_FILE
    if path:
        handlers.append(logging.FileHandler(path, encoding="utf-8"))

    logging.basicConfig(
        level=(level or settings.LOG_LEVEL).upper(),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )
