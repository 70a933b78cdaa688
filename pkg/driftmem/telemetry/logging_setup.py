import logging
import sys
from typing import Optional

from driftmem.config import DRIFTMEM_LOG_LEVEL

LOG_FORMAT = "ts=%(asctime)s level=%(levelname)s logger=%(name)s msg=%(message)s"


def configure_logging(level: Optional[str] = None) -> None:
    """Install one key=value stream handler on the package logger; safe to call twice."""
    logger = logging.getLogger("driftmem")
    logger.setLevel((level or DRIFTMEM_LOG_LEVEL).upper())
    for handler in logger.handlers:
        if getattr(handler, "_driftmem", False):
            return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._driftmem = True
    logger.addHandler(handler)
