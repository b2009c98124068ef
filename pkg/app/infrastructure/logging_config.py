"""Configuração de logging da aplicação."""

import logging
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

from app.config import settings


LOG_FORMAT = "[%(name)s] %(message)s"
DATE_FORMAT = "%H:%M:%S"


def configure_logging(level: Optional[str] = None, debug: Optional[bool] = None) -> None:
    """
    Configurar o logger raiz com RichHandler em stderr.

    Args:
        level: Nível de log (padrão: settings.log_level)
        debug: Força DEBUG quando verdadeiro (padrão: settings.debug)
    """
    debug = settings.debug if debug is None else debug
    level = "DEBUG" if debug else (level or settings.log_level).upper()

    handler = RichHandler(
        console=Console(stderr=True),
        show_path=debug,
        rich_tracebacks=debug,
        log_time_format=DATE_FORMAT,
    )
    handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))

    root = logging.getLogger()
    for existing in list(root.handlers):
        if isinstance(existing, RichHandler):
            root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(level)
