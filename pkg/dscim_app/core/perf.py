# -*- coding: utf-8 -*-
"""
core/perf.py
Modelo analítico de latência / vazão / proxy de energia.

- Ciclos: cada passada processa até `cmr` vetores de ativação em N ciclos.
- Energia: só contagem de ativações do acumulador (sem joules).
- Densidade relativa = cmr / area_factor(cmr); area_factor só tem os pontos {1: 1, 64: 2}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from typing import Dict, Optional

from .errors import ConfigError
from .macro import Accumulator, MacroConfig

AREA_FACTOR: Dict[int, float] = {1: 1.0, 64: 2.0}


@dataclass(frozen=True)
class WorkloadSpec:
    output_count: int
    vector_len: int = 128
    weight_columns: int = 32

    def __post_init__(self):
        for name in ("output_count", "vector_len", "weight_columns"):
            if int(getattr(self, name)) < 1:
                raise ConfigError(f"{name} deve ser positivo")

    @classmethod
    def from_dict(cls, d: Dict) -> "WorkloadSpec":
        return cls(**{k: int(v) for k, v in d.items() if k in cls.__dataclass_fields__})


@dataclass(frozen=True)
class PerfReport:
    cycles: int
    baseline_cycles: int
    utilization: float
    accumulator_activations: int
    activations_per_output: int
    throughput_gain: float
    relative_compute_density: Optional[float]
    tiles: int

    def to_dict(self) -> Dict:
        return asdict(self)


def activation_count(N: int, kind: Accumulator) -> int:
    if N < 1:
        raise ConfigError("N deve ser >= 1")
    return math.ceil(N / 4) if Accumulator(kind) is Accumulator.LATCH4 else int(N)


def activation_ratio(N: int, kind: Accumulator) -> float:
    return activation_count(N, kind) / N


def area_factor(cmr: int) -> Optional[float]:
    # sem interpolação: fora da tabela não há densidade
    return AREA_FACTOR.get(int(cmr))


def latency_model(work: WorkloadSpec, cfg: MacroConfig) -> PerfReport:
    N = cfg.bitstream_len
    tiles = math.ceil(work.vector_len / cfg.rows) * math.ceil(work.weight_columns / cfg.columns)
    passes = math.ceil(work.output_count / cfg.cmr)
    cycles = tiles * passes * N
    baseline = tiles * work.output_count * N
    per_output = activation_count(N, cfg.accumulator)
    outputs = work.output_count * work.weight_columns * math.ceil(work.vector_len / cfg.rows)
    af = area_factor(cfg.cmr)
    return PerfReport(
        cycles=cycles,
        baseline_cycles=baseline,
        utilization=work.output_count / (passes * cfg.cmr),
        accumulator_activations=per_output * outputs,
        activations_per_output=per_output,
        throughput_gain=baseline / cycles,
        relative_compute_density=(cfg.cmr / af) if af else None,
        tiles=tiles,
    )
