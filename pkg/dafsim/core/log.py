from __future__ import annotations

import logging
import sys

from dafsim.core.config import settings

LOG_FORMAT = "%(levelname)-5.5s [%(name)s] %(message)s"

logger = logging.getLogger("dafsim")


def _is_stderr_handler(handler: logging.Handler) -> bool:
    return type(handler) is logging.StreamHandler and getattr(handler, "stream", None) is sys.stderr


def configure_logging(level: str | int | None = None) -> logging.Logger:
    """Attach a single stderr handler to the ``dafsim`` logger tree (idempotent)."""
    lvl = level if level is not None else settings.LOG_LEVEL
    if isinstance(lvl, str):
        lvl = logging.getLevelName(lvl.upper())
        if not isinstance(lvl, int):
            lvl = logging.INFO

    if not any(_is_stderr_handler(h) for h in logger.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt="%H:%M:%S"))
        logger.addHandler(handler)
    logger.setLevel(lvl)
    logger.propagate = False
    return logger
