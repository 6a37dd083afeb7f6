# -*- coding: utf-8 -*-
"""
core/run_config.py
Configuração de execução: presets DS-CIM1 / DS-CIM2 + sobrescritas explícitas.

Arquivo JSON (todas as chaves opcionais):
{
  "mode": "dscim1" | "dscim2" | "custom",
  "macro": {"bitstream_len": 256, "prng_a": {"style": "galois", "taps_hex": "0x1D",
            "seed_hex": "0x01", "zero_insert": true}, ...},
  "distribution": {"kind": "uniform_signed", "sigma": 32, "clip": 127, "p_zero": 0},
  "master_seed": 0, "trials": 500, "budget": 256, "format": "csv",
  "lengths": [64, 128, 256], "sparsity_grid": [0, 0.25, 0.5, 0.75, 0.875, 1],
  "workload": {"output_count": 4096, "vector_len": 128, "weight_columns": 32},
  "saturation": {"n": [1, 4, 16, 64], "p": [0.01, 0.05, 0.1, 0.25, 0.5]}
}
Sobrescritas que contrariam o preset vencem, com aviso no log.
Sem prng_a/prng_w explícitos, vale o par de TUNED_PRNG para o N escolhido.
"""

from __future__ import annotations

import logging
from enum import Enum
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .analysis import DEFAULT_LENGTHS, DEFAULT_SPARSITY_GRID, InputDistribution
from .errors import ConfigError, DscimError
from .macro import MacroConfig, tuned_prng
from .perf import WorkloadSpec
from .rng import LfsrSpec

logger = logging.getLogger(__name__)


class Mode(str, Enum):
    DSCIM1 = "dscim1"
    DSCIM2 = "dscim2"
    CUSTOM = "custom"


# DS-CIM1: oito OR16 por coluna; DS-CIM2: dois OR64 com acumulador latch4
MODE_PRESETS: Dict[Mode, Dict[str, Any]] = {
    Mode.DSCIM1: {"group_size": 16},
    Mode.DSCIM2: {"group_size": 64, "accumulator": "latch4"},
    Mode.CUSTOM: {},
}

OUTPUT_FORMATS = ("json", "csv", "xlsx")
DEFAULT_SAT_N = (1, 4, 16, 64)
DEFAULT_SAT_P = (0.0, 0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0)


@dataclass
class RunConfig:
    mode: Mode = Mode.DSCIM1
    macro: MacroConfig = field(default_factory=MacroConfig)
    distribution: InputDistribution = field(default_factory=InputDistribution)
    output_format: str = "csv"
    master_seed: int = 0
    trials: int = 500
    budget: int = 256
    lengths: Tuple[int, ...] = DEFAULT_LENGTHS
    sparsity_grid: Tuple[float, ...] = DEFAULT_SPARSITY_GRID
    workload: Optional[WorkloadSpec] = None
    sat_n: Tuple[int, ...] = DEFAULT_SAT_N
    sat_p: Tuple[float, ...] = DEFAULT_SAT_P
    warnings: List[str] = field(default_factory=list)
    prng_pinned: bool = False


def _normalize(key: str, value: Any) -> Any:
    if key in ("prng_a", "prng_w") and isinstance(value, dict):
        return LfsrSpec.from_dict(value)
    return value


def resolve_macro(mode: Mode, overrides: Optional[Dict[str, Any]] = None,
                  warnings: Optional[List[str]] = None) -> MacroConfig:
    mode = Mode(mode)
    preset = MODE_PRESETS[mode]
    kw: Dict[str, Any] = dict(preset)
    for key, value in (overrides or {}).items():
        if key == "shift":
            continue  # derivado de group_size
        if key not in MacroConfig.__dataclass_fields__:
            raise ConfigError(f"campo desconhecido em macro: {key!r}")
        try:
            value = _normalize(key, value)
        except DscimError:
            raise
        except (TypeError, ValueError, AttributeError) as e:
            raise ConfigError(f"macro.{key} inválido: {e}")
        if key in preset and value != preset[key]:
            msg = f"sobrescrita {key}={value!r} substitui o preset {mode.value} ({key}={preset[key]!r})"
            logger.warning(msg)
            if warnings is not None:
                warnings.append(msg)
        kw[key] = value
    try:
        # sem PRNG explícito: par otimizado para o N pedido
        if "prng_a" not in kw and "prng_w" not in kw:
            pair = tuned_prng(kw.get("bitstream_len", MacroConfig.bitstream_len))
            if pair:
                kw["prng_a"], kw["prng_w"] = pair
        return MacroConfig(**kw)
    except DscimError:
        raise
    except (TypeError, ValueError, AttributeError) as e:
        raise ConfigError(f"configuração do macro inválida: {e}")


def load_run_config(data: Optional[Dict[str, Any]] = None, mode: Optional[str] = None,
                    macro_overrides: Optional[Dict[str, Any]] = None, **fields: Any) -> RunConfig:
    """
    Monta o RunConfig a partir do JSON (já carregado) + flags da linha de comando.
    Flags vencem o arquivo; o arquivo vence os defaults.
    """
    if data is not None and not isinstance(data, dict):
        raise ConfigError("o arquivo de configuração deve conter um objeto JSON")
    data = dict(data or {})
    try:
        m = Mode(mode or data.get("mode", Mode.DSCIM1.value))
    except ValueError:
        raise ConfigError(f"modo desconhecido: {mode or data.get('mode')!r}")

    warnings: List[str] = []
    if not isinstance(data.get("macro", {}), dict):
        raise ConfigError("a chave macro deve ser um objeto")
    overrides = dict(data.get("macro", {}))
    overrides.update(macro_overrides or {})
    macro = resolve_macro(m, overrides, warnings)
    pinned = "prng_a" in overrides or "prng_w" in overrides

    try:
        rc = _build_run_config(data, m, macro, warnings)
    except DscimError:
        raise
    except (TypeError, ValueError, AttributeError) as e:
        raise ConfigError(f"configuração de execução inválida: {e}")
    rc.prng_pinned = pinned
    for key, value in fields.items():
        if value is not None:
            setattr(rc, key, value)
    if rc.output_format not in OUTPUT_FORMATS:
        raise ConfigError(f"formato de saída desconhecido: {rc.output_format}")
    if rc.trials < 1:
        raise ConfigError("trials deve ser >= 1")
    return rc


def _build_run_config(data: Dict[str, Any], m: Mode, macro: MacroConfig, warnings: List[str]) -> RunConfig:
    dist = InputDistribution.from_dict(data["distribution"]) if "distribution" in data else InputDistribution()
    sat = data.get("saturation", {})
    wl = data.get("workload")
    return RunConfig(
        mode=m,
        macro=macro,
        distribution=dist,
        output_format=str(data.get("format", "csv")),
        master_seed=int(data.get("master_seed", 0)),
        trials=int(data.get("trials", 500)),
        budget=int(data.get("budget", 256)),
        lengths=tuple(int(v) for v in data.get("lengths", DEFAULT_LENGTHS)),
        sparsity_grid=tuple(float(v) for v in data.get("sparsity_grid", DEFAULT_SPARSITY_GRID)),
        workload=WorkloadSpec.from_dict(wl) if wl else None,
        sat_n=tuple(int(v) for v in sat.get("n", DEFAULT_SAT_N)),
        sat_p=tuple(float(v) for v in sat.get("p", DEFAULT_SAT_P)),
        warnings=warnings,
    )
