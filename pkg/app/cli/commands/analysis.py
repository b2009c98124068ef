"""Comandos de análise: Stein, espectro e estabilização."""

from typing import Optional

import typer

from app.cli.output import execute_command


def stein(
    problem_file: str = typer.Argument(..., help="Arquivo com n, A e Q"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Tolerância de posto, convergência e PSD"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Semente dos membros amostrados"),
    out: Optional[str] = typer.Option(None, "--out", help="Arquivo do relatório (padrão: stdout)"),
):
    """Resolver X = AᵀXA + Q e descrever a família de soluções."""
    execute_command("stein", problem_file, out, tol=tol, seed=seed)


def spectral(
    problem_file: str = typer.Argument(..., help="Arquivo de problema"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Tolerância de posto, convergência e PSD"),
    max_iter: Optional[int] = typer.Option(None, "--max-iter", help="Máximo de iterações"),
    samples: Optional[int] = typer.Option(None, "--samples", help="Pontos de amostragem de Φ (mínimo 8)"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Semente da amostragem"),
    out: Optional[str] = typer.Option(None, "--out", help="Arquivo do relatório (padrão: stdout)"),
):
    """Posto normal de Φ e identidades dos fatores espectrais."""
    execute_command(
        "spectral", problem_file, out, tol=tol, max_iter=max_iter, samples=samples, seed=seed
    )


def stabilize(
    problem_file: str = typer.Argument(..., help="Arquivo de problema"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Tolerância de posto, convergência e PSD"),
    max_iter: Optional[int] = typer.Option(None, "--max-iter", help="Máximo de iterações"),
    poles: Optional[str] = typer.Option(None, "--poles", help="Polos em R₀, p. ex. '0.5,0.1+0.2j,0.1-0.2j'"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Semente da alocação"),
    out: Optional[str] = typer.Option(None, "--out", help="Arquivo do relatório (padrão: stdout)"),
):
    """
    Alocar o espectro em R₀ pelo termo livre do controle ótimo.

    Sem --poles, todos os polos de R₀ vão para zero.
    """
    execute_command(
        "stabilize", problem_file, out, tol=tol, max_iter=max_iter, poles=poles, seed=seed
    )
