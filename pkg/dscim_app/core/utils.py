# -*- coding: utf-8 -*-
"""
core/utils.py
Utilitários e constantes compartilhadas por todo o app.

- Constantes do macro (128 linhas, 8 bits, fundo de escala).
- Helpers de hex, hash estável de configuração e contagem de threads.
"""

from __future__ import annotations

import os
import json
import hashlib
import dataclasses
from enum import Enum
from typing import Any, Optional, Union

from .errors import ConfigError

# =========================================================
# Constantes do macro
# =========================================================
BITS = 8
LEVELS = 1 << BITS                 # 256 valores por eixo
GRID_POINTS = LEVELS * LEVELS      # 65536 pontos no mapa 2D
SIGN_OFFSET = 1 << (BITS - 1)      # 2^7
INT8_MIN, INT8_MAX = -128, 127

DEFAULT_ROWS = 128
DEFAULT_COLUMNS = 32

THREADS_ENV = "DSCIM_THREADS"


def full_scale(rows: int = DEFAULT_ROWS) -> int:
    """Fundo de escala do termo b: H·255²."""
    return rows * (LEVELS - 1) ** 2


def parse_hex(txt: Union[str, int, None], default: int = 0) -> int:
    if txt is None:
        return default
    if isinstance(txt, int):
        return txt
    s = str(txt).strip().lower()
    if not s:
        return default
    try:
        return int(s, 16)
    except ValueError:
        raise ConfigError(f"valor hexadecimal inválido: {txt!r}")


def f_hex(v: int) -> str:
    return f"0x{int(v):02X}"


def default_threads() -> int:
    try:
        n = int(os.environ.get(THREADS_ENV, "1"))
    except ValueError:
        n = 1
    return max(1, n)


# =========================================================
# Serialização estável (configs em metadados / hash)
# =========================================================
def to_jsonable(obj: Any) -> Any:
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        if hasattr(obj, "to_dict"):
            return obj.to_dict()
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "item") and callable(obj.item):   # escalares numpy
        return obj.item()
    return obj


def stable_json(obj: Any, indent: Optional[int] = None) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=indent, ensure_ascii=False)


def config_hash(obj: Any) -> str:
    return hashlib.sha256(stable_json(obj).encode("utf-8")).hexdigest()[:16]
