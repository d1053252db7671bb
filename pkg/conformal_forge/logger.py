"""Loguru sinks shared by every conformal_forge module."""

import sys
from pathlib import Path
from typing import Any

from loguru import logger

from conformal_forge.config import Settings, load_settings

CONSOLE_FORMAT = (
    "<green>{time:HH:mm:ss.SSS}</green> | <level>{level: <8}</level> | "
    "<cyan>[{extra[module]: <12}]</cyan> | <level>{message}</level>"
)
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | [{extra[module]: <12}] | {message}"

_configured = False


def _handlers(settings: Settings) -> list[dict[str, Any]]:
    # stdout is reserved for reports
    handlers: list[dict[str, Any]] = [{
        "sink": sys.stderr,
        "level": "DEBUG" if settings.debug else "WARNING",
        "format": CONSOLE_FORMAT,
        "colorize": True,
    }]
    if settings.log_file:
        path = Path(settings.log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append({
            "sink": str(path),
            "level": "DEBUG",
            "format": FILE_FORMAT,
            "rotation": "10 MB",
            "retention": "1 day",
            "encoding": "utf-8",
        })
    return handlers


def configure_logger() -> None:
    """Install the console sink and, if configured, the DEBUG file sink.

    Runs once per process; later calls are no-ops.
    """
    global _configured
    if _configured:
        return
    logger.configure(handlers=_handlers(load_settings()), extra={"module": "-"})
    _configured = True


def get_logger(module_name: str):
    """Logger bound to a module tag such as "GD" or "ANALYSIS".

    Args:
        module_name: Tag shown in the [module] column

    Returns:
        The bound loguru logger
    """
    configure_logger()
    return logger.bind(module=module_name)
