# -*- coding: utf-8 -*-
"""
core/oracles.py
Referências exatas e baselines de trabalhos anteriores.

Funções:
- exact_psum                → produto interno INT8 exato
- enumerate_expected_count  → contagem exata no mapa 65536 pontos (Σ a_s·w_s)
- naive_scim_count          → OR de n linhas com geradores independentes (Monte-Carlo)
- or_saturation_rel_error   → curva analítica de saturação do OR
- naive_column_simulate     → OR-MAC unipolar sem remapeamento (PRNG por linha)
- bipolar_mac_simulate      → OR-MAC bipolar (W+ / W−), aproximação comportamental
- row_lfsr_specs, lfsr_streams → um LFSR maximal independente por linha

naive_scim_count usa numpy.random (Generator semeado), independente do
catálogo de LFSR, para não misturar qualidade do PRNG com saturação.
O baseline bipolar usa LFSRs maximais por linha, como o hardware anterior.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import RangeError
from .macro import MacroConfig, SignedColumn, to_unsigned
from .rng import ANCHOR_STATE, POLYNOMIAL_CATALOG, LfsrSpec, catalog_spec, prng_array
from .utils import GRID_POINTS, LEVELS

BIPOLAR_LABEL = "aproximação comportamental"


@dataclass(frozen=True)
class SaturationPoint:
    n: int
    p: float
    expected_or: float
    ideal_sum: float
    rel_error: float


@dataclass(frozen=True)
class NaiveResult:
    or_count: int
    term_b_est: int
    term_b_exact: int


@dataclass(frozen=True)
class BipolarResult:
    estimate: int
    exact: int
    pos_count: int
    neg_count: int
    label: str = BIPOLAR_LABEL


def exact_psum(col: SignedColumn) -> int:
    return int(np.dot(col.x, col.w))


def enumerate_expected_count(col: SignedColumn, cfg: MacroConfig) -> int:
    # regiões disjuntas → a contagem da união é a soma das áreas
    k = cfg.shift
    a_s = to_unsigned(col.x) >> k
    w_s = to_unsigned(col.w) >> k
    return int(np.dot(a_s, w_s))


def naive_scim_count(products_p: Sequence[float], N: int, seed: int = 0) -> Tuple[int, float]:
    p = np.asarray(products_p, dtype=float).ravel()
    if p.size and (p.min() < 0 or p.max() > 1):
        raise RangeError("probabilidades fora de [0, 1]")
    rng = np.random.default_rng(seed)
    bits = rng.random((int(N), p.size)) < p[None, :]
    return int(bits.any(axis=1).sum()), float(p.sum() * N)


def or_saturation_rel_error(n: int, p: float) -> SaturationPoint:
    if n < 1:
        raise RangeError(f"fan-in n deve ser >= 1 (recebido {n})")
    if not 0.0 <= p <= 1.0:
        raise RangeError(f"p fora de [0, 1]: {p}")
    expected_or = p if n == 1 else 1.0 - (1.0 - p) ** n
    ideal = n * p
    rel = 0.0 if p == 0 or n == 1 else 1.0 - expected_or / ideal
    return SaturationPoint(n=n, p=p, expected_or=expected_or, ideal_sum=ideal, rel_error=rel)


# =========================================================
# LFSRs independentes por linha
# =========================================================
@lru_cache(maxsize=len(POLYNOMIAL_CATALOG))
def _catalog_cycle(index: int) -> Tuple[np.ndarray, np.ndarray]:
    # ciclo de 256 estados (zero inserido) e a posição de cada estado nele
    cycle = prng_array(catalog_spec(index, ANCHOR_STATE), LEVELS).astype(np.int64)
    pos = np.empty(LEVELS, dtype=np.int64)
    pos[cycle] = np.arange(LEVELS)
    return cycle, pos


def row_lfsr_specs(rows: int, seed=0) -> List[LfsrSpec]:
    """
    Um LFSR maximal por linha: polinômio do catálogo em rodízio a partir de um
    deslocamento sorteado, semente sorteada. Mesmo `seed` → mesmos geradores.
    """
    rng = np.random.default_rng(seed)
    offset = int(rng.integers(0, len(POLYNOMIAL_CATALOG)))
    seeds = rng.integers(0, LEVELS, rows)
    return [catalog_spec((offset + j) % len(POLYNOMIAL_CATALOG), int(seeds[j])) for j in range(rows)]


def lfsr_streams(specs: Sequence[LfsrSpec], N: int) -> np.ndarray:
    """[N, linhas] amostras; coluna j == prng_array(specs[j], N)."""
    t = np.arange(int(N))
    out = np.empty((int(N), len(specs)), dtype=np.int64)
    for j, spec in enumerate(specs):
        idx = POLYNOMIAL_CATALOG.index((spec.style, spec.taps))
        cycle, pos = _catalog_cycle(idx)
        out[:, j] = cycle[(pos[spec.seed] + t) % LEVELS]
    return out


def naive_column_simulate(a_u, w_u, group_size: int, N: int, rng: Optional[np.random.Generator] = None,
                          streams: Optional[Tuple[np.ndarray, np.ndarray]] = None) -> NaiveResult:
    """
    OR-MAC unipolar de trabalhos anteriores: cada linha tem seus próprios PRNGs,
    sem shift e sem remapeamento, então o OR satura quando há vários 1s no ciclo.
    Amostras: `streams` = (RA, RW) [N, H] prontos, ou sorteadas de `rng`.
    """
    a = np.asarray(a_u, dtype=np.int64).ravel()
    w = np.asarray(w_u, dtype=np.int64).ravel()
    H = a.size
    if H % group_size:
        raise RangeError(f"{H} linhas não formam grupos de {group_size}")
    if streams is not None:
        ra, rw = streams
        if ra.shape != (N, H) or rw.shape != (N, H):
            raise RangeError(f"fluxos com formato {ra.shape}/{rw.shape}; esperado {(N, H)}")
    else:
        rng = rng if rng is not None else np.random.default_rng()
        ra = rng.integers(0, LEVELS, size=(N, H))
        rw = rng.integers(0, LEVELS, size=(N, H))
    prod = ((ra < a[None, :]) & (rw < w[None, :])).reshape(N, H // group_size, group_size)
    count = int(prod.any(axis=2).sum())
    est = (2 * count * GRID_POINTS + N) // (2 * N)
    return NaiveResult(or_count=count, term_b_est=int(est), term_b_exact=int(np.dot(a, w)))


def bipolar_mac_simulate(activations_u, weights, cfg: MacroConfig, seed: int = 0) -> BipolarResult:
    """
    Baseline bipolar: ativações sem sinal, pesos com sinal separados em W+ e W−,
    dois OR-MAC independentes e estimativa = diferença das contagens escaladas.
    Cada linha de cada caminho tem seu próprio LFSR maximal; mesma reescala nos dois.
    """
    a = np.clip(np.asarray(activations_u, dtype=np.int64).ravel(), 0, LEVELS - 1)
    w = np.asarray(weights, dtype=np.int64).ravel()
    w_pos = np.where(w > 0, w, 0)
    w_neg = np.where(w < 0, -w, 0)
    N, H = cfg.bitstream_len, a.size
    results = []
    for path, w_path in enumerate((w_pos, w_neg)):
        ra = lfsr_streams(row_lfsr_specs(H, [seed, path, 0]), N)
        rw = lfsr_streams(row_lfsr_specs(H, [seed, path, 1]), N)
        results.append(naive_column_simulate(a, w_path, cfg.group_size, N, streams=(ra, rw)))
    pos, neg = results
    return BipolarResult(
        estimate=pos.term_b_est - neg.term_b_est,
        exact=int(np.dot(a, w)),
        pos_count=pos.or_count,
        neg_count=neg.or_count,
    )
