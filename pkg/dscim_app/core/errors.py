# -*- coding: utf-8 -*-
"""
core/errors.py
Hierarquia de exceções do simulador.

- A biblioteca só levanta; quem traduz para código de saída é o cli.py
  e quem traduz para mensagem é a camada de UI.
"""

from __future__ import annotations

from typing import Optional


class DscimError(Exception):
    """Raiz de todos os erros do pacote."""

    exit_code = 1


class InvalidSpecError(DscimError):
    """LfsrSpec inconsistente (semente zero sem zero_insert, taps fora de 8 bits...)."""

    exit_code = 3


class ConfigError(DscimError):
    """MacroConfig / RunConfig violando invariantes."""

    exit_code = 3


class InputValidationError(DscimError):
    """
    Entrada inválida: CSV malformado, valor fora de [-128, 127], formatos incompatíveis.
    Guarda arquivo/linha/coluna quando conhecidos.
    """

    exit_code = 2

    def __init__(self, message: str, path: Optional[str] = None,
                 line: Optional[int] = None, column: Optional[int] = None):
        self.path = path
        self.line = line
        self.column = column
        where = []
        if path:
            where.append(str(path))
        if line is not None:
            where.append(f"linha {line}")
        if column is not None:
            where.append(f"coluna {column}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class RangeError(InputValidationError, ValueError):
    """Operando fora do intervalo permitido."""


class RowIndexError(InputValidationError, IndexError):
    """Índice de linha fora do grupo de 4^k linhas."""


class InvariantViolation(DscimError):
    """Invariante interno quebrado (ex.: exclusão mútua no OR). Sempre é bug."""

    exit_code = 4
