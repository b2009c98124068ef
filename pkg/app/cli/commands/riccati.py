"""Comandos da iteração de Riccati."""

from typing import Optional

import typer

from app.cli.output import execute_command


def solve(
    problem_file: str = typer.Argument(..., help="Arquivo de problema (YAML ou JSON)"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Tolerância de posto, convergência e PSD"),
    max_iter: Optional[int] = typer.Option(None, "--max-iter", help="Máximo de iterações"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Semente"),
    out: Optional[str] = typer.Option(None, "--out", help="Arquivo do relatório (padrão: stdout)"),
):
    """
    Calcular a solução PSD mínima da CGDARE.

    Saída 0 se convergir, 2 se divergir, 3 se atingir o máximo de iterações.
    """
    execute_command("solve", problem_file, out, tol=tol, max_iter=max_iter, seed=seed)


def verify(
    problem_file: str = typer.Argument(..., help="Arquivo de problema com X_candidates"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Tolerância de posto, convergência e PSD"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Semente"),
    out: Optional[str] = typer.Option(None, "--out", help="Arquivo do relatório (padrão: stdout)"),
):
    """Classificar as candidatas X e conferir ker X, R₀ e V*."""
    execute_command("verify", problem_file, out, tol=tol, seed=seed)
