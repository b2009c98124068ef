"""Implementação em arquivos YAML/JSON do repositório de problemas."""

import logging
from pathlib import Path

import yaml
from pydantic import ValidationError

from app.domain.exceptions import ProblemFileError
from app.dtos.problem_dtos import ProblemFileDTO
from app.dtos.report_dtos import ReportDTO
from app.repositories.iproblem_repository import IProblemRepository


logger = logging.getLogger(__name__)


class _LineLoader(yaml.SafeLoader):
    """SafeLoader que guarda a linha de cada chave de primeiro nível."""


def _construct_mapping(loader: _LineLoader, node: yaml.MappingNode, deep: bool = False):
    if not hasattr(loader, "key_lines"):
        loader.key_lines = {}
    for key_node, _ in node.value:
        loader.key_lines.setdefault(str(key_node.value), key_node.start_mark.line + 1)
    return loader.construct_mapping(node, deep=deep)


_LineLoader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _construct_mapping)


def _field_path(loc) -> str:
    parts = []
    for item in loc:
        if isinstance(item, int):
            parts.append(f"[{item}]")
        else:
            parts.append(("." if parts else "") + str(item))
    return "".join(parts) or "<raiz>"


class YAMLProblemRepository(IProblemRepository):
    """Lê problemas em YAML (ou JSON) e grava relatórios em JSON."""

    def _parse(self, path: str):
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ProblemFileError(f"Não foi possível ler {path}: {e.strerror or e}") from e
        loader = _LineLoader(text)
        try:
            data = loader.get_single_data()
        except yaml.MarkedYAMLError as e:
            line = e.problem_mark.line + 1 if e.problem_mark else None
            raise ProblemFileError(f"Arquivo malformado: {e.problem}", line=line) from e
        finally:
            loader.dispose()
        if not isinstance(data, dict):
            raise ProblemFileError("O arquivo deve conter um mapeamento de chaves")
        return data, getattr(loader, "key_lines", {})

    def load_problem(self, path: str) -> ProblemFileDTO:
        """Ler e validar um arquivo de problema."""
        data, key_lines = self._parse(path)
        try:
            problem = ProblemFileDTO.model_validate(data)
        except ValidationError as e:
            error = e.errors()[0]
            field = _field_path(error["loc"])
            top = str(error["loc"][0]) if error["loc"] else None
            raise ProblemFileError(error["msg"], field=field, line=key_lines.get(top)) from e
        logger.debug("Problema lido de %s: n=%d, m=%d", path, problem.n, problem.m)
        return problem

    def dump_report(self, report: ReportDTO) -> str:
        return report.model_dump_json(indent=2) + "\n"

    def save_report(self, report: ReportDTO, path: str) -> None:
        """Gravar o relatório em JSON."""
        Path(path).write_text(self.dump_report(report), encoding="utf-8")
        logger.info("Relatório gravado em %s", path)

    def load_report(self, path: str) -> ReportDTO:
        """Ler um relatório JSON."""
        try:
            return ReportDTO.model_validate_json(Path(path).read_text(encoding="utf-8"))
        except (OSError, ValidationError) as e:
            raise ProblemFileError(f"Relatório inválido em {path}: {e}") from e
