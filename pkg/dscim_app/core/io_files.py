# -*- coding: utf-8 -*-
"""
core/io_files.py
Leitura de matrizes (CSV / XLSX) e escrita de resultados com a configuração embutida.

Formatos:
- ativações: uma linha por vetor, H inteiros com sinal
- pesos: H linhas × colunas
- trace: CSV com cabeçalho x,w (e opcionalmente `column` para separar colunas)
- saída CSV: 1ª linha "# config: {...}", depois a tabela; JSON: {"config": ..., ...}
- sidecar <arquivo>.meta.json com data/hora (o arquivo principal não tem timestamp)
"""

from __future__ import annotations

import json
from io import BytesIO, StringIO
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, IO, Optional, Tuple, Union

import numpy as np
import pandas as pd

from .errors import ConfigError, InputValidationError
from .utils import INT8_MAX, INT8_MIN, stable_json

Source = Union[str, Path, IO[bytes]]


def _name(source: Source) -> str:
    return str(getattr(source, "name", source))


def _csv_text(source: Source) -> str:
    if hasattr(source, "read"):
        data = source.read()
        return data.decode("utf-8-sig") if isinstance(data, bytes) else data
    return Path(source).read_text(encoding="utf-8-sig")


def _read_raw(source: Source) -> pd.DataFrame:
    """
    Tabela de strings sem linhas em branco / comentários.
    O índice guarda a linha original (base 0) para as mensagens de erro.
    """
    nome = _name(source)
    if hasattr(source, "seek"):
        source.seek(0)
    try:
        if nome.lower().endswith((".xlsx", ".xlsm")):
            raw = pd.read_excel(source, header=None, dtype=str, engine="openpyxl")
            first = raw.iloc[:, 0].fillna("").astype(str).str.strip() if not raw.empty else pd.Series(dtype=str)
            return raw[~(first.str.startswith("#") | raw.isna().all(axis=1))]
        lines = _csv_text(source).splitlines()
        keep = [i for i, ln in enumerate(lines) if ln.strip() and not ln.lstrip().startswith("#")]
        if not keep:
            return pd.DataFrame()
        raw = pd.read_csv(StringIO("\n".join(lines[i] for i in keep)), header=None, dtype=str,
                          skipinitialspace=True)
        raw.index = keep
        return raw
    except pd.errors.EmptyDataError:
        raise InputValidationError("arquivo vazio", path=nome)
    except pd.errors.ParserError as e:
        raise InputValidationError(f"CSV malformado: {e}", path=nome)
    except (OSError, UnicodeDecodeError) as e:
        raise InputValidationError(f"não foi possível ler o arquivo: {e}", path=nome)


def read_int_matrix(source: Source, name: str = "matriz") -> np.ndarray:
    """Matriz de inteiros INT8; erros apontam linha/coluna (base 1) do arquivo."""
    nome = _name(source)
    body = _read_raw(source)
    if body.empty:
        raise InputValidationError(f"{name} sem dados", path=nome)
    body = body.dropna(axis=1, how="all")

    values = body.apply(lambda s: pd.to_numeric(s.astype(str).str.strip(), errors="coerce"))
    bad = values.isna() | (values % 1 != 0)
    if bad.to_numpy().any():
        r, c = np.argwhere(bad.to_numpy())[0]
        raise InputValidationError(
            f"{name}: valor inválido {body.iat[r, c]!r}", path=nome, line=int(body.index[r]) + 1, column=int(c) + 1)
    mat = values.to_numpy(dtype=np.int64)
    out_of_range = (mat < INT8_MIN) | (mat > INT8_MAX)
    if out_of_range.any():
        r, c = np.argwhere(out_of_range)[0]
        raise InputValidationError(
            f"{name}: {mat[r, c]} fora de [{INT8_MIN}, {INT8_MAX}]",
            path=nome, line=int(body.index[r]) + 1, column=int(c) + 1)
    return mat


def read_activations(source: Source, rows: int) -> np.ndarray:
    A = read_int_matrix(source, "ativações")
    if A.shape[1] != rows:
        raise InputValidationError(f"ativações com {A.shape[1]} valores por vetor; esperado {rows}", path=_name(source))
    return A


def read_weights(source: Source, rows: int) -> np.ndarray:
    W = read_int_matrix(source, "pesos")
    if W.shape[0] != rows:
        raise InputValidationError(f"pesos com {W.shape[0]} linhas; esperado {rows}", path=_name(source))
    return W


def read_trace(source: Source) -> Tuple[np.ndarray, np.ndarray]:
    nome = _name(source)
    try:
        df = pd.read_csv(source, comment="#", skipinitialspace=True)
    except pd.errors.EmptyDataError:
        raise InputValidationError("trace vazio", path=nome)
    except (pd.errors.ParserError, OSError, UnicodeDecodeError) as e:
        raise InputValidationError(f"trace ilegível: {e}", path=nome)
    if df.empty or not {"x", "w"} <= set(df.columns):
        raise InputValidationError("trace vazio ou sem colunas x,w", path=nome)
    if "column" not in df.columns:
        df["column"] = 0
    blocks = [g for _, g in df.groupby("column", sort=True)]
    sizes = {len(g) for g in blocks}
    if len(sizes) != 1:
        raise InputValidationError(f"colunas do trace com tamanhos diferentes: {sorted(sizes)}", path=nome)
    for col in ("x", "w"):
        num = pd.to_numeric(df[col], errors="coerce")
        bad = (num.isna() | (num != np.floor(num))).to_numpy()
        if bad.any():
            i = int(bad.argmax())
            raise InputValidationError(f"valor não inteiro em {col} (registro {i + 1}): {df[col].iloc[i]!r}",
                                       path=nome, column=list(df.columns).index(col) + 1)
        df[col] = num
    blocks = [g for _, g in df.groupby("column", sort=True)]
    X = np.stack([g["x"].to_numpy(dtype=np.int64) for g in blocks])
    W = np.stack([g["w"].to_numpy(dtype=np.int64) for g in blocks])
    for m in (X, W):
        if m.min() < INT8_MIN or m.max() > INT8_MAX:
            raise InputValidationError("trace com valores fora de INT8", path=nome)
    return X, W


def read_json(source: Source) -> Dict:
    nome = _name(source)
    try:
        if hasattr(source, "read"):
            data = source.read()
            return json.loads(data.decode("utf-8") if isinstance(data, bytes) else data)
        return json.loads(Path(source).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"não foi possível ler {nome}: {e}")


# =========================================================
# Escrita
# =========================================================
def _write_sidecar(path: Path, meta: Optional[Dict]) -> Path:
    side = path.with_name(path.name + ".meta.json")
    payload = {"created_at": datetime.now(timezone.utc).isoformat(), **(meta or {})}
    side.write_text(stable_json(payload, indent=2), encoding="utf-8")
    return side


def table_to_csv_text(df: pd.DataFrame, config: Dict) -> str:
    buf = StringIO()
    buf.write(f"# config: {stable_json(config)}\n")
    df.to_csv(buf, index=False, lineterminator="\n")
    return buf.getvalue()


def table_to_xlsx_bytes(df: pd.DataFrame, config: Dict) -> bytes:
    buf = BytesIO()
    with pd.ExcelWriter(buf, engine="openpyxl") as xw:
        df.to_excel(xw, sheet_name="resultados", index=False)
        pd.DataFrame({"config": [stable_json(config)]}).to_excel(xw, sheet_name="config", index=False)
    return buf.getvalue()


def write_table(df: pd.DataFrame, path: Union[str, Path], config: Dict, fmt: str = "csv",
                meta: Optional[Dict] = None) -> Path:
    path = Path(path)
    if fmt == "json":
        body = {"config": config, "rows": json.loads(df.to_json(orient="records", double_precision=15))}
        path.write_text(stable_json(body, indent=2) + "\n", encoding="utf-8")
    elif fmt == "xlsx":
        path.write_bytes(table_to_xlsx_bytes(df, config))
    elif fmt == "csv":
        path.write_text(table_to_csv_text(df, config), encoding="utf-8")
    else:
        raise ConfigError(f"formato de saída desconhecido: {fmt}")
    _write_sidecar(path, meta)
    return path


def write_json(obj: Any, path: Union[str, Path], meta: Optional[Dict] = None) -> Path:
    path = Path(path)
    path.write_text(stable_json(obj, indent=2) + "\n", encoding="utf-8")
    _write_sidecar(path, meta)
    return path


def read_table(path: Union[str, Path]) -> Tuple[pd.DataFrame, Dict]:
    """Lê de volta um CSV escrito por write_table (config + tabela)."""
    path = Path(path)
    with path.open(encoding="utf-8") as f:
        first = f.readline()
        config = json.loads(first.split(":", 1)[1]) if first.startswith("# config:") else {}
        df = pd.read_csv(f)
    return df, config
