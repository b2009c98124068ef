"""Execução de comandos e saída dos relatórios."""

from typing import Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from app.controller.problem_controller import CommandError, ExitCode, ProblemController
from app.dtos.problem_dtos import ExecutionOptionsDTO
from app.dtos.report_dtos import ReportDTO


stderr_console = Console(stderr=True, soft_wrap=True)


def print_error(message: str) -> None:
    stderr_console.print(f"erro: {message}", markup=False, highlight=False)


def print_summary(report: ReportDTO) -> None:
    """Resumo legível do relatório em stderr."""
    table = Table(title=f"cgdare {report.command}", show_header=False)
    table.add_row("n, m", f"{report.n}, {report.m}")
    if report.solve:
        table.add_row("status", report.solve.status)
        table.add_row("iterações", str(report.solve.iterations))
        if report.solve.classification:
            table.add_row("classificação", report.solve.classification)
        if report.solve.r0:
            table.add_row("dim R₀", str(report.solve.r0.dim))
    for candidate in report.candidates or []:
        table.add_row(f"X[{candidate.index}]", candidate.classification)
    if report.stein:
        table.add_row("consistente", str(report.stein.consistent))
        table.add_row("dim família", str(report.stein.family_dim))
    if report.spectral:
        table.add_row("posto normal Φ", str(report.spectral.normal_rank))
        if report.spectral.rank_R_X is not None:
            table.add_row("posto R_X", str(report.spectral.rank_R_X))
    if report.stabilize:
        table.add_row("dim R₀", str(report.stabilize.r0_dim))
        table.add_row("ρ(A_cl)", f"{report.stabilize.closed_loop_radius:.6g}")
    for name, passed in report.checks.items():
        table.add_row(name, "[green]ok[/green]" if passed else "[red]falhou[/red]")
    stderr_console.print(table)


def execute_command(command: str, problem_file: str, out: Optional[str], **options) -> None:
    """
    Executar o comando, escrever o relatório e sair com o código do contrato.

    Args:
        command: Nome do comando
        problem_file: Arquivo de problema
        out: Arquivo de saída (stdout quando None)
        **options: Opções de linha de comando
    """
    try:
        execution = ExecutionOptionsDTO(**options)
    except ValidationError as e:
        print_error(str(e))
        raise typer.Exit(code=ExitCode.INVALID_INPUT)

    controller = ProblemController()
    try:
        report = controller.run(command, problem_file, execution)
    except CommandError as e:
        print_error(e.detail)
        raise typer.Exit(code=e.exit_code)

    if out:
        controller.save(report, out)
    else:
        typer.echo(controller.render(report), nl=False)
    print_summary(report)
    raise typer.Exit(code=controller.exit_code(report))
