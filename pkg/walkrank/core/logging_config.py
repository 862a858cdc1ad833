import logging
from typing import Optional

import sentry_sdk

from walkrank.core.config import settings

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: Optional[str] = None) -> logging.Logger:
    """Attach a single stream handler to the package logger."""
    logger = logging.getLogger("walkrank")
    logger.setLevel((level or settings.LOG_LEVEL).upper())
    for stale in list(logger.handlers):
        logger.removeHandler(stale)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.propagate = False
    return logger


def init_monitoring() -> bool:
    # Sentry initialization
    if settings.SENTRY_DSN and settings.SENTRY_DSN != "your-sentry-dsn":
        sentry_sdk.init(dsn=settings.SENTRY_DSN, traces_sample_rate=0.1)
        return True
    return False
