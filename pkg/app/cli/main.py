"""Aplicação principal de linha de comando."""

import sys

import click
import typer

from app.cli.commands import analysis, riccati
from app.config import settings
from app.controller.problem_controller import ExitCode
from app.infrastructure.logging_config import configure_logging


app = typer.Typer(
    name="cgdare",
    help=f"{settings.app_name} v{settings.app_version}: equação de Riccati discreta generalizada com restrição.",
    no_args_is_help=True,
    add_completion=False,
)


@app.callback()
def main(
    log_level: str = typer.Option(settings.log_level, "--log-level", help="Nível de log em stderr"),
    debug: bool = typer.Option(settings.debug, "--debug", help="Log em DEBUG com tracebacks"),
):
    """Relatórios JSON em stdout (ou --out); resumo e logs em stderr."""
    configure_logging(log_level, debug)


app.command("solve")(riccati.solve)
app.command("verify")(riccati.verify)
app.command("stein")(analysis.stein)
app.command("spectral")(analysis.spectral)
app.command("stabilize")(analysis.stabilize)


def run() -> None:
    """Ponto de entrada; erros de uso saem com o código de entrada inválida."""
    try:
        code = app(standalone_mode=False)
    except click.UsageError as e:
        e.show()
        sys.exit(ExitCode.INVALID_INPUT)
    except click.Abort:
        sys.exit(ExitCode.INVALID_INPUT)
    sys.exit(code or ExitCode.OK)


if __name__ == "__main__":
    run()
