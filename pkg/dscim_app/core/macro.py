# -*- coding: utf-8 -*-
"""
core/macro.py
Simulação ciclo a ciclo de uma coluna DS-CIM e do macro 128×32.

Pipeline de uma coluna (psum = Σ x·w):
  1. x' = x + 128, w' = w + 128                        (inverte o bit de sinal)
  2. a_s = x' >> k, w_s = w' >> k                       (abre espaço p/ 4^k regiões)
  3. a cada ciclo, (RA, RW) dos PRNGs compartilhados → bit de produto por linha
  4. OR por grupo de G = 4^k linhas → soma da coluna no ciclo
  5. acumulação (direta ou latch4) → C
  6. termo b ≈ C·65536·4^k / N ;  psum = b − 2^7·Σx − 2^7·Σw'

Funções:
- to_unsigned, term_c, term_d, rescale
- accumulate_direct, accumulate_latch4
- simulate_column, simulate_macro
"""

from __future__ import annotations

import logging
from enum import Enum
from dataclasses import dataclass, field, replace
from functools import lru_cache
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ConfigError, InputValidationError, InvariantViolation
from .rng import LfsrSpec, LfsrStyle, prng_array
from .sng import RegionMode, axis_table, region_arrays
from .utils import (
    DEFAULT_COLUMNS, DEFAULT_ROWS, GRID_POINTS, INT8_MAX, INT8_MIN, LEVELS,
    SIGN_OFFSET, config_hash, default_threads,
)

logger = logging.getLogger(__name__)

GROUP_SHIFT: Dict[int, int] = {1: 0, 4: 1, 16: 2, 64: 3}
MAX_CMR = 64

# Par (PRNGA, PRNGW) por comprimento, o mesmo para OR-MAC16 e OR-MAC64:
# vencedores de seed_search(group_sizes=(16, 64)) com entrada uniforme.
TUNED_PRNG: Dict[int, Tuple[LfsrSpec, LfsrSpec]] = {
    64: (LfsrSpec(LfsrStyle.FIBONACCI, 0x65, 0x2A), LfsrSpec(LfsrStyle.FIBONACCI, 0xF5, 0x3D)),
    128: (LfsrSpec(LfsrStyle.GALOIS, 0xE7, 0x18), LfsrSpec(LfsrStyle.FIBONACCI, 0xE7, 0xF9)),
    256: (LfsrSpec(LfsrStyle.GALOIS, 0xCF, 0x99), LfsrSpec(LfsrStyle.GALOIS, 0xCF, 0xD4)),
}

DEFAULT_PRNG_A, DEFAULT_PRNG_W = TUNED_PRNG[256]


class Sampler(str, Enum):
    PRNG = "prng"
    EXHAUSTIVE = "exhaustive"


class Accumulator(str, Enum):
    DIRECT = "direct"
    LATCH4 = "latch4"


class Compensation(str, Enum):
    NONE = "none"
    MIDPOINT = "midpoint"


# =========================================================
# Tipos
# =========================================================
@dataclass(frozen=True)
class MacroConfig:
    rows: int = DEFAULT_ROWS
    columns: int = DEFAULT_COLUMNS
    group_size: int = 16
    bitstream_len: int = 256
    prng_a: LfsrSpec = DEFAULT_PRNG_A
    prng_w: LfsrSpec = DEFAULT_PRNG_W
    sampler: Sampler = Sampler.PRNG
    accumulator: Accumulator = Accumulator.DIRECT
    compensation: Compensation = Compensation.NONE
    cmr: int = MAX_CMR
    region_mode: RegionMode = RegionMode.XOR
    debug: bool = False

    def __post_init__(self):
        try:
            for name, enum_cls in (("sampler", Sampler), ("accumulator", Accumulator),
                                   ("compensation", Compensation), ("region_mode", RegionMode)):
                object.__setattr__(self, name, enum_cls(getattr(self, name)))
        except ValueError as e:
            raise ConfigError(str(e))
        if self.group_size not in GROUP_SHIFT:
            raise ConfigError(f"group_size deve ser 1, 4, 16 ou 64 (recebido {self.group_size})")
        if self.rows < 1 or self.rows % self.group_size:
            raise ConfigError(f"rows={self.rows} não é múltiplo de G={self.group_size}")
        if self.columns < 1:
            raise ConfigError("columns deve ser >= 1")
        if not 1 <= self.cmr <= MAX_CMR:
            raise ConfigError(f"cmr deve estar em [1, {MAX_CMR}] (recebido {self.cmr})")
        if self.region_mode is RegionMode.REFLECT and self.shift != 1:
            raise ConfigError("region_mode=reflect exige G=4 (k=1)")
        if self.sampler is Sampler.EXHAUSTIVE:
            object.__setattr__(self, "bitstream_len", GRID_POINTS)
        if self.bitstream_len < 1:
            raise ConfigError("bitstream_len deve ser >= 1")

    @property
    def shift(self) -> int:
        return GROUP_SHIFT[self.group_size]

    @property
    def groups(self) -> int:
        return self.rows // self.group_size

    def to_dict(self) -> Dict:
        return {
            "rows": self.rows,
            "columns": self.columns,
            "group_size": self.group_size,
            "shift": self.shift,
            "bitstream_len": self.bitstream_len,
            "prng_a": self.prng_a.to_dict(),
            "prng_w": self.prng_w.to_dict(),
            "sampler": self.sampler.value,
            "accumulator": self.accumulator.value,
            "compensation": self.compensation.value,
            "cmr": self.cmr,
            "region_mode": self.region_mode.value,
            "debug": bool(self.debug),
        }

    @classmethod
    def from_dict(cls, d: Dict) -> "MacroConfig":
        kw = {k: v for k, v in d.items() if k in cls.__dataclass_fields__}
        for key in ("prng_a", "prng_w"):
            if isinstance(kw.get(key), dict):
                kw[key] = LfsrSpec.from_dict(kw[key])
        return cls(**kw)

    def digest(self) -> str:
        return config_hash(self.to_dict())


@dataclass
class SignedColumn:
    x: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=np.int64).ravel()
        self.w = np.asarray(self.w, dtype=np.int64).ravel()
        if self.x.shape != self.w.shape:
            raise InputValidationError(
                f"ativações ({self.x.size}) e pesos ({self.w.size}) com tamanhos diferentes")
        for name, v in (("x", self.x), ("w", self.w)):
            if v.size and (v.min() < INT8_MIN or v.max() > INT8_MAX):
                raise InputValidationError(f"{name} fora de [{INT8_MIN}, {INT8_MAX}]")

    @property
    def rows(self) -> int:
        return int(self.x.size)


@dataclass
class ColumnResult:
    count: int
    per_cycle: np.ndarray
    term_b_est: int
    term_c: int
    term_d: int
    psum_est: int
    accumulator_activations: int
    group_bits: Optional[np.ndarray] = field(default=None, repr=False)


# =========================================================
# Transformação com sinal → sem sinal e termos c / d
# =========================================================
def to_unsigned(x):
    """x + 128; no padrão de bits equivale a inverter o bit de sinal."""
    if isinstance(x, np.ndarray):
        return x.astype(np.int64) + SIGN_OFFSET
    return int(x) + SIGN_OFFSET


def term_c(x: Sequence[int]) -> int:
    return SIGN_OFFSET * int(np.sum(np.asarray(x, dtype=np.int64)))


@lru_cache(maxsize=8192)
def _term_d_lut(w: Tuple[int, ...]) -> int:
    return SIGN_OFFSET * sum(v + SIGN_OFFSET for v in w)


def term_d(w: Sequence[int]) -> int:
    """2^7·Σw'; calculado offline por coluna de pesos (LUT memoizada)."""
    return _term_d_lut(tuple(int(v) for v in np.asarray(w).ravel()))


def rescale(C: int, N: int, k: int, compensation: Compensation = Compensation.NONE,
            group_sums: Optional[Tuple[int, int]] = None, rows: int = DEFAULT_ROWS) -> int:
    """
    Estimativa do termo b a partir da contagem C.
    none:     round(C·65536·4^k / N)
    midpoint: soma o valor esperado dos bits descartados pelo shift,
              2^(k-1)(2^k-1)(Σa_s+Σw_s) + H(2^k-1)²/4, com bits baixos uniformes.
    Arredondamento: meio para cima, em aritmética inteira.
    """
    if N < 1:
        raise ConfigError("N deve ser >= 1")
    num = 4 * int(C) * GRID_POINTS * (4 ** k)
    den = 4 * int(N)
    if Compensation(compensation) is Compensation.MIDPOINT and k > 0:
        if group_sums is None:
            raise ConfigError("compensação midpoint exige (Σa_s, Σw_s)")
        sa, sw = (int(v) for v in group_sums)
        low = (1 << k) - 1
        corr4 = (1 << (k + 1)) * low * (sa + sw) + rows * low * low
        num += int(N) * corr4
    return (num + den // 2) // den


# =========================================================
# Acumuladores
# =========================================================
def accumulate_direct(per_cycle: Sequence[int]) -> Tuple[int, int]:
    arr = np.asarray(per_cycle, dtype=np.int64)
    return int(arr.sum()), int(arr.size)


def accumulate_latch4(per_cycle: Sequence[int]) -> Tuple[int, int]:
    """
    Quatro latches recebem um valor por ciclo; no 4º ciclo o somador dispara uma vez.
    Sobra (N mod 4) é descarregada com uma ativação extra.
    """
    arr = np.asarray(per_cycle, dtype=np.int64)
    full = arr.size // 4
    quads = arr[:full * 4].reshape(full, 4).sum(axis=1)
    tail = arr[full * 4:]
    total = int(quads.sum()) + int(tail.sum())
    return total, full + (1 if tail.size else 0)


_ACCUMULATORS = {
    Accumulator.DIRECT: accumulate_direct,
    Accumulator.LATCH4: accumulate_latch4,
}


# =========================================================
# Simulação
# =========================================================
def _group_bits_prng(cfg: MacroConfig, a_tab: np.ndarray, w_tab: np.ndarray) -> np.ndarray:
    N = cfg.bitstream_len
    ra = prng_array(cfg.prng_a, N)
    rw = prng_array(cfg.prng_w, N)
    prod = (a_tab[ra] & w_tab[rw]).reshape(N, cfg.groups, cfg.group_size)
    if cfg.debug:
        worst = int(prod.sum(axis=2).max()) if N else 0
        if worst > 1:
            raise InvariantViolation(f"{worst} entradas do OR em 1 no mesmo ciclo (exclusão mútua quebrada)")
    return prod.any(axis=2)


def _group_bits_exhaustive(cfg: MacroConfig, a_tab: np.ndarray, w_tab: np.ndarray) -> np.ndarray:
    # hits[g, RA, RW] = nº de linhas do grupo g ativas no ponto (RA, RW)
    a3 = a_tab.reshape(LEVELS, cfg.groups, cfg.group_size).astype(np.uint8)
    w3 = w_tab.reshape(LEVELS, cfg.groups, cfg.group_size).astype(np.uint8)
    hits = np.einsum("agh,bgh->gab", a3, w3)
    if cfg.debug:
        worst = int(hits.max())
        if worst > 1:
            raise InvariantViolation(f"{worst} entradas do OR em 1 no mesmo ponto (exclusão mútua quebrada)")
    # RA no laço externo, RW no interno
    return (hits > 0).reshape(cfg.groups, GRID_POINTS).T


def simulate_column(cfg: MacroConfig, col: SignedColumn, keep_group_bits: bool = False) -> ColumnResult:
    if col.rows != cfg.rows:
        raise InputValidationError(f"coluna com {col.rows} linhas; configuração espera {cfg.rows}")
    k = cfg.shift
    a_s = to_unsigned(col.x) >> k
    w_s = to_unsigned(col.w) >> k
    r_a, r_w = region_arrays(cfg.rows, k)
    a_tab = axis_table(a_s, r_a, k, cfg.region_mode)
    w_tab = axis_table(w_s, r_w, k, cfg.region_mode)

    if cfg.sampler is Sampler.EXHAUSTIVE:
        group_bits = _group_bits_exhaustive(cfg, a_tab, w_tab)
    else:
        group_bits = _group_bits_prng(cfg, a_tab, w_tab)

    per_cycle = group_bits.sum(axis=1).astype(np.int64)
    count, activations = _ACCUMULATORS[cfg.accumulator](per_cycle)

    b_est = rescale(count, cfg.bitstream_len, k, cfg.compensation,
                    (int(a_s.sum()), int(w_s.sum())), cfg.rows)
    tc = term_c(col.x)
    td = term_d(col.w)
    return ColumnResult(
        count=count,
        per_cycle=per_cycle,
        term_b_est=b_est,
        term_c=tc,
        term_d=td,
        psum_est=b_est - tc - td,
        accumulator_activations=activations,
        group_bits=group_bits if keep_group_bits else None,
    )


def simulate_macro(cfg: MacroConfig, A, W, threads: Optional[int] = None) -> List[List[ColumnResult]]:
    """
    A: [vetores × H] ativações com sinal; W: [H × colunas] pesos com sinal.
    Vetores entram em lotes de no máximo `cmr` (uma réplica de OR-MAC por vetor);
    todas as réplicas usam o mesmo fluxo PRNGA e o mesmo PRNGW, pré-calculados.
    Retorna resultados[vetor][coluna].
    """
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    W = np.asarray(W, dtype=np.int64)
    if W.ndim == 1:
        W = W[:, None]
    if A.shape[1] != cfg.rows or W.shape[0] != cfg.rows:
        raise InputValidationError(
            f"formatos incompatíveis: A {A.shape}, W {W.shape}, H={cfg.rows}")
    if W.shape[1] > cfg.columns:
        raise InputValidationError(f"W tem {W.shape[1]} colunas; o macro tem {cfg.columns}")

    P, n_cols = A.shape[0], W.shape[1]
    batches = [(s, min(s + cfg.cmr, P)) for s in range(0, P, cfg.cmr)]
    if len(batches) > 1:
        logger.info(f"{P} vetores em {len(batches)} lotes de até {cfg.cmr} (CMR)")

    # aquece o cache dos fluxos antes de paralelizar
    if cfg.sampler is Sampler.PRNG:
        prng_array(cfg.prng_a, cfg.bitstream_len)
        prng_array(cfg.prng_w, cfg.bitstream_len)

    jobs = [(p, c) for lo, hi in batches for p in range(lo, hi) for c in range(n_cols)]

    def _run(job):
        p, c = job
        return simulate_column(cfg, SignedColumn(A[p], W[:, c]))

    workers = threads or default_threads()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            flat = list(ex.map(_run, jobs))
    else:
        flat = [_run(j) for j in jobs]

    out: List[List[ColumnResult]] = [[None] * n_cols for _ in range(P)]  # type: ignore[list-item]
    for (p, c), res in zip(jobs, flat):
        out[p][c] = res
    return out


def tuned_prng(N: int) -> Optional[Tuple[LfsrSpec, LfsrSpec]]:
    return TUNED_PRNG.get(int(N))


def with_length(cfg: MacroConfig, N: int, retune: bool = False) -> MacroConfig:
    """
    Mesma configuração com outro N; N = 65536 liga o amostrador exaustivo.
    retune=True troca os PRNGs pelo par de TUNED_PRNG quando N tem entrada.
    """
    if N == GRID_POINTS:
        return replace(cfg, sampler=Sampler.EXHAUSTIVE, bitstream_len=N)
    pair = tuned_prng(N) if retune else None
    if pair:
        cfg = replace(cfg, prng_a=pair[0], prng_w=pair[1])
    return replace(cfg, sampler=Sampler.PRNG, bitstream_len=int(N))
