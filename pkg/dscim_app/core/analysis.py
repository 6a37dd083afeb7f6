# -*- coding: utf-8 -*-
"""
core/analysis.py
Bancada estatística: RMSE normalizado, varreduras (esparsidade / comprimento),
busca de PRNG + sementes e exportação da distribuição empírica de erro.

Normalização: erro / (H·255²), o fundo de escala do termo b sem sinal.
Sementes por tentativa: numpy.random.default_rng([master_seed, i]); o resultado
não depende da ordem de execução nem do número de threads.
"""

from __future__ import annotations

import json
import math
import logging
from enum import Enum
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from functools import lru_cache
from pathlib import Path
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from .errors import ConfigError, InputValidationError
from .macro import MacroConfig, SignedColumn, simulate_column, simulate_macro, to_unsigned, with_length
from .oracles import BIPOLAR_LABEL, bipolar_mac_simulate, exact_psum, naive_column_simulate, naive_scim_count, or_saturation_rel_error
from .rng import POLYNOMIAL_CATALOG, LfsrSpec, LfsrStyle, catalog_index
from .utils import INT8_MAX, INT8_MIN, default_threads, full_scale, stable_json

logger = logging.getLogger(__name__)

DEFAULT_LENGTHS: Tuple[int, ...] = (64, 128, 256)
DEFAULT_SPARSITY_GRID: Tuple[float, ...] = (0.0, 0.25, 0.5, 0.75, 0.875, 1.0)
DEFAULT_SEED_STRIDE = 16
NORMALIZATION = "H*255^2"


class DistKind(str, Enum):
    UNIFORM = "uniform_signed"
    GAUSSIAN = "gaussian"
    SPARSE = "sparse"
    TRACE = "file-trace"


class Estimator(str, Enum):
    DSCIM = "dscim"
    NAIVE = "naive"


# =========================================================
# Distribuições de entrada
# =========================================================
@dataclass(frozen=True)
class InputDistribution:
    kind: DistKind = DistKind.UNIFORM
    sigma: float = 32.0
    clip: int = INT8_MAX
    p_zero: float = 0.0
    trace_path: Optional[str] = None

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", DistKind(self.kind))
        except ValueError:
            raise ConfigError(f"distribuição desconhecida: {self.kind!r}")
        if not 0.0 <= self.p_zero <= 1.0:
            raise ConfigError(f"p_zero fora de [0, 1]: {self.p_zero}")
        if self.kind is DistKind.TRACE and not self.trace_path:
            raise ConfigError("file-trace exige trace_path")

    @property
    def label(self) -> str:
        if self.kind is DistKind.GAUSSIAN:
            return f"gaussian(sigma={self.sigma:g}, clip={self.clip})"
        if self.kind is DistKind.SPARSE:
            return f"sparse(p_zero={self.p_zero:g})"
        if self.kind is DistKind.TRACE:
            return f"file-trace({Path(self.trace_path).name})"
        return self.kind.value if not self.p_zero else f"{self.kind.value}(p_zero={self.p_zero:g})"

    def to_dict(self) -> Dict:
        return {"kind": self.kind.value, "sigma": self.sigma, "clip": self.clip,
                "p_zero": self.p_zero, "trace_path": self.trace_path}

    @classmethod
    def from_dict(cls, d: Dict) -> "InputDistribution":
        kw = {k: v for k, v in d.items() if k in cls.__dataclass_fields__}
        return cls(**kw)


# mistura de calibração da busca de sementes
CALIBRATION_MIX: Tuple[InputDistribution, ...] = (
    InputDistribution(DistKind.UNIFORM),
    InputDistribution(DistKind.GAUSSIAN, sigma=32.0, clip=127),
    InputDistribution(DistKind.SPARSE, p_zero=0.875),
)


@lru_cache(maxsize=16)
def _load_trace(path: str) -> Tuple[np.ndarray, np.ndarray]:
    from .io_files import read_trace
    return read_trace(path)


def draw_operands(dist: InputDistribution, rng: np.random.Generator, rows: int,
                  trial: int = 0) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Sorteia (x, w, máscara de zeros) de uma coluna com `rows` linhas."""
    if dist.kind is DistKind.TRACE:
        X, W = _load_trace(str(dist.trace_path))
        if X.shape[1] != rows:
            raise InputValidationError(
                f"trace com colunas de {X.shape[1]} linhas; configuração espera {rows}", path=dist.trace_path)
        i = trial % X.shape[0]
        x, w = X[i].copy(), W[i].copy()
    elif dist.kind is DistKind.GAUSSIAN:
        lim = min(int(dist.clip), INT8_MAX)
        x = np.clip(np.rint(rng.normal(0.0, dist.sigma, rows)), -lim, lim).astype(np.int64)
        w = np.clip(np.rint(rng.normal(0.0, dist.sigma, rows)), -lim, lim).astype(np.int64)
    else:
        x = rng.integers(INT8_MIN, INT8_MAX + 1, rows)
        w = rng.integers(INT8_MIN, INT8_MAX + 1, rows)
    mask = rng.random(rows) < dist.p_zero if dist.p_zero > 0 else np.zeros(rows, dtype=bool)
    x[mask] = 0
    return x, w, mask


# =========================================================
# Estatísticas de erro
# =========================================================
@dataclass
class ErrorStats:
    rmse_norm: float
    mean_bias_norm: float
    max_abs_norm: float
    trials: int
    raw_errors: np.ndarray = field(repr=False)

    @classmethod
    def from_errors(cls, errors: Sequence[int], scale: float) -> "ErrorStats":
        ints = [int(e) for e in errors]
        if not ints:
            raise InputValidationError("nenhuma tentativa para agregar")
        T = len(ints)
        # somas inteiras exatas: independe da ordem das tentativas
        rmse = math.sqrt(sum(e * e for e in ints) / T) / scale
        bias = sum(ints) / T / scale
        return cls(
            rmse_norm=max(rmse, abs(bias)),
            mean_bias_norm=bias,
            max_abs_norm=max(abs(e) for e in ints) / scale,
            trials=T,
            raw_errors=np.asarray(ints, dtype=float) / scale,
        )

    def to_row(self) -> Dict:
        return {
            "rmse_norm": self.rmse_norm,
            "mean_bias_norm": self.mean_bias_norm,
            "max_abs_norm": self.max_abs_norm,
            "trials": self.trials,
        }


def _parallel_map(fn: Callable, items: Sequence, threads: Optional[int]) -> List:
    workers = threads or default_threads()
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, items))
    return [fn(i) for i in items]


def _trial_error(cfg: MacroConfig, dist: InputDistribution, master_seed: int,
                 estimator: Estimator, i: int) -> int:
    rng = np.random.default_rng([master_seed, i])
    x, w, mask = draw_operands(dist, rng, cfg.rows, i)
    if estimator is Estimator.NAIVE:
        # trabalho anterior: ativações sem sinal, zeros de fato esparsos
        a_u = np.where(mask, 0, to_unsigned(x))
        res = naive_column_simulate(a_u, to_unsigned(w), cfg.group_size, cfg.bitstream_len, rng)
        return res.term_b_est - res.term_b_exact
    col = SignedColumn(x, w)
    return simulate_column(cfg, col).psum_est - exact_psum(col)


def rmse_eval(cfg: MacroConfig, dist: InputDistribution, trials: int, master_seed: int = 0,
              threads: Optional[int] = None, estimator: Union[Estimator, str] = Estimator.DSCIM) -> ErrorStats:
    if trials < 1:
        raise ConfigError("trials deve ser >= 1")
    est = Estimator(estimator)
    errors = _parallel_map(lambda i: _trial_error(cfg, dist, master_seed, est, i), list(range(trials)), threads)
    return ErrorStats.from_errors(errors, full_scale(cfg.rows))


def sparsity_sweep(cfg: MacroConfig, grid: Iterable[float] = DEFAULT_SPARSITY_GRID, trials: int = 500,
                   master_seed: int = 0, dist: Optional[InputDistribution] = None,
                   threads: Optional[int] = None,
                   estimator: Union[Estimator, str] = Estimator.DSCIM) -> List[Tuple[float, ErrorStats]]:
    base = dist or InputDistribution(DistKind.UNIFORM)
    out = []
    for p in grid:
        if not 0.0 <= p <= 1.0:
            raise ConfigError(f"ponto de esparsidade fora de [0, 1]: {p}")
        d = replace(base, kind=DistKind.SPARSE if base.kind is DistKind.UNIFORM else base.kind, p_zero=float(p))
        out.append((float(p), rmse_eval(cfg, d, trials, master_seed, threads, estimator)))
    return out


def length_sweep(cfg: MacroConfig, lengths: Iterable[int] = DEFAULT_LENGTHS,
                 dist: Optional[InputDistribution] = None, trials: int = 500, master_seed: int = 0,
                 threads: Optional[int] = None, retune: bool = False) -> List[Tuple[int, ErrorStats]]:
    """retune=True avalia cada N com o par de sementes otimizado para ele (TUNED_PRNG)."""
    d = dist or InputDistribution(DistKind.UNIFORM)
    return [(int(N), rmse_eval(with_length(cfg, int(N), retune), d, trials, master_seed, threads))
            for N in lengths]


def simulation_frame(cfg: MacroConfig, A, W, threads: Optional[int] = None) -> pd.DataFrame:
    """Uma linha por (vetor, coluna): psum estimado, exato e erro normalizado."""
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    W = np.asarray(W, dtype=np.int64)
    if W.ndim == 1:
        W = W[:, None]
    results = simulate_macro(cfg, A, W, threads)
    scale = full_scale(cfg.rows)
    rows = []
    for p, per_vec in enumerate(results):
        for c, res in enumerate(per_vec):
            exact = exact_psum(SignedColumn(A[p], W[:, c]))
            rows.append({
                "vector": p, "column": c,
                "psum_est": res.psum_est, "psum_exact": exact,
                "error_norm": (res.psum_est - exact) / scale,
                "C": res.count, "accumulator_activations": res.accumulator_activations,
            })
    return pd.DataFrame(rows)


def sweep_frame(points: List[Tuple[float, ErrorStats]], key: str) -> pd.DataFrame:
    return pd.DataFrame([{key: p, **s.to_row()} for p, s in points])


def compare_baselines(cfg: MacroConfig, dist: Optional[InputDistribution] = None, trials: int = 200,
                      master_seed: int = 0) -> Dict[str, ErrorStats]:
    """DS-CIM remapeado vs. OR-MAC bipolar nas mesmas colunas e mesmo N."""
    d = dist or InputDistribution(DistKind.UNIFORM)
    ours, theirs = [], []
    for i in range(trials):
        rng = np.random.default_rng([master_seed, i])
        x, w, _ = draw_operands(d, rng, cfg.rows, i)
        col = SignedColumn(x, w)
        ours.append(simulate_column(cfg, col).psum_est - exact_psum(col))
        bip = bipolar_mac_simulate(to_unsigned(x), w, cfg, seed=master_seed * 1_000_003 + i)
        theirs.append(bip.estimate - bip.exact)
    scale = full_scale(cfg.rows)
    return {"dscim": ErrorStats.from_errors(ours, scale),
            f"bipolar ({BIPOLAR_LABEL})": ErrorStats.from_errors(theirs, scale)}


def saturation_curve(n_list: Iterable[int], p_grid: Iterable[float], trials: int = 200, N: int = 256,
                     master_seed: int = 0) -> pd.DataFrame:
    """Curva analítica de saturação do OR + Monte-Carlo (média e erro-padrão)."""
    rows = []
    for n in n_list:
        for j, p in enumerate(p_grid):
            pt = or_saturation_rel_error(int(n), float(p))
            cycles = int(N) * int(trials)
            or_count, _ = naive_scim_count([p] * int(n), cycles, seed=[master_seed, int(n), j])
            rate = or_count / cycles
            se_rate = math.sqrt(pt.expected_or * (1 - pt.expected_or) / cycles)
            if pt.ideal_sum > 0:
                mc_rel = 1.0 - rate / pt.ideal_sum
                mc_se = se_rate / pt.ideal_sum
            else:
                mc_rel, mc_se = 0.0, 0.0
            rows.append({
                "n": int(n), "p": float(p),
                "expected_or": pt.expected_or, "ideal_sum": pt.ideal_sum,
                "analytic_rel_error": pt.rel_error,
                "mc_or_rate": rate, "mc_rel_error": mc_rel, "mc_se": mc_se,
            })
    return pd.DataFrame(rows)


# =========================================================
# Busca de PRNG / sementes
# =========================================================
@dataclass
class SeedSearchResult:
    best_config: Tuple[LfsrSpec, LfsrSpec]
    objective: float
    evaluated: int
    per_length: Dict[int, Tuple[LfsrSpec, LfsrSpec]]
    per_length_objective: Dict[int, float]
    default_objective: float

    def to_dict(self) -> Dict:
        return {
            "best_config": {"prng_a": self.best_config[0].to_dict(), "prng_w": self.best_config[1].to_dict()},
            "objective": self.objective,
            "default_objective": self.default_objective,
            "evaluated": self.evaluated,
            "per_length": {str(N): {"prng_a": a.to_dict(), "prng_w": w.to_dict(),
                                    "objective": self.per_length_objective[N]}
                           for N, (a, w) in sorted(self.per_length.items())},
        }


def _seed_grid(stride: int, full: bool) -> List[int]:
    return list(range(1, 256)) if full else list(range(1, 256, max(1, int(stride))))


def _candidate(idx: int, seeds: List[int], catalog, zero_insert: bool):
    per_axis = len(catalog) * len(seeds)
    ka, kw = divmod(idx, per_axis)
    ia, sa = divmod(ka, len(seeds))
    iw, sw = divmod(kw, len(seeds))
    key = (ia, seeds[sa], iw, seeds[sw])
    spec_a = LfsrSpec(style=catalog[ia][0], taps=catalog[ia][1], seed=seeds[sa], zero_insert=zero_insert)
    spec_w = LfsrSpec(style=catalog[iw][0], taps=catalog[iw][1], seed=seeds[sw], zero_insert=zero_insert)
    return key, spec_a, spec_w


def seed_search(cfg: MacroConfig, catalog: Sequence[Tuple[LfsrStyle, int]] = POLYNOMIAL_CATALOG,
                lengths: Iterable[int] = DEFAULT_LENGTHS,
                mix: Sequence[InputDistribution] = CALIBRATION_MIX,
                budget: int = 256, trials: int = 200, master_seed: int = 0,
                seed_stride: int = DEFAULT_SEED_STRIDE, full: bool = False,
                group_sizes: Optional[Sequence[int]] = None,
                threads: Optional[int] = None) -> SeedSearchResult:
    """
    Busca em grade (exaustiva ou com orçamento) do par (PRNGA, PRNGW) que minimiza
    o RMSE médio na mistura de calibração. A configuração base é sempre o
    candidato 0; o restante do orçamento é amostrado de forma determinística.
    Empates: (índice do polinômio, semente) crescentes.
    """
    if budget < 1:
        raise ConfigError("budget deve ser >= 1")
    seeds = _seed_grid(seed_stride, full)
    lengths = [int(N) for N in lengths]
    if not catalog or not seeds or not lengths or not mix:
        raise ConfigError("espaço de busca vazio")
    space = (len(catalog) * len(seeds)) ** 2
    zi = cfg.prng_a.zero_insert

    base_key = (catalog_index(cfg.prng_a), cfg.prng_a.seed, catalog_index(cfg.prng_w), cfg.prng_w.seed)
    candidates = [(base_key, cfg.prng_a, cfg.prng_w)]
    if budget - 1 >= space:
        picks = range(space)
    else:
        rng = np.random.default_rng(master_seed)
        picks = np.sort(rng.choice(space, size=budget - 1, replace=False))
    for idx in picks:
        cand = _candidate(int(idx), seeds, catalog, zi)
        if cand[0] != base_key:
            candidates.append(cand)
    candidates = candidates[:budget]

    gs = list(group_sizes) if group_sizes else [cfg.group_size]

    def _objective(spec_a: LfsrSpec, spec_w: LfsrSpec, N: int) -> float:
        vals = []
        for G in gs:
            c = replace(with_length(cfg, N), prng_a=spec_a, prng_w=spec_w, group_size=G)
            vals.extend(rmse_eval(c, d, trials, master_seed, threads=1).rmse_norm for d in mix)
        return float(np.mean(vals))

    def _score(cand):
        _, a, w = cand
        return [_objective(a, w, N) for N in lengths]

    logger.info(f"busca de sementes: {len(candidates)} de {space} configurações, N={lengths}")
    scores = _parallel_map(_score, candidates, threads)

    agg = [float(np.mean(s)) for s in scores]
    order = sorted(range(len(candidates)), key=lambda i: (agg[i], candidates[i][0]))
    best = order[0]

    per_length, per_length_obj = {}, {}
    for j, N in enumerate(lengths):
        i = min(range(len(candidates)), key=lambda i: (scores[i][j], candidates[i][0]))
        per_length[N] = (candidates[i][1], candidates[i][2])
        per_length_obj[N] = scores[i][j]

    logger.info(f"melhor objetivo {agg[best]:.5f} (base {agg[0]:.5f})")
    return SeedSearchResult(
        best_config=(candidates[best][1], candidates[best][2]),
        objective=agg[best],
        evaluated=len(candidates),
        per_length=per_length,
        per_length_objective=per_length_obj,
        default_objective=agg[0],
    )


# =========================================================
# Exportação do modelo de erro
# =========================================================
def export_error_model(stats: ErrorStats, path: Union[str, Path], cfg: Optional[MacroConfig] = None,
                       dist: Optional[InputDistribution] = None) -> Tuple[Path, Path]:
    """CSV com um erro normalizado por linha + sidecar JSON com metadados."""
    if stats.trials < 1 or len(stats.raw_errors) == 0:
        raise InputValidationError("ErrorStats vazio")
    path = Path(path)
    pd.DataFrame({"error_norm": stats.raw_errors}).to_csv(path, index=False, float_format="%.17g")
    meta = {
        "config": cfg.to_dict() if cfg else None,
        "config_hash": cfg.digest() if cfg else None,
        "distribution": dist.to_dict() if dist else None,
        "distribution_label": dist.label if dist else None,
        "normalization": NORMALIZATION,
        "created_at": datetime.now(timezone.utc).isoformat(),
        **stats.to_row(),
    }
    side = path.with_suffix(path.suffix + ".json")
    side.write_text(stable_json(meta, indent=2), encoding="utf-8")
    return path, side


def load_error_model(path: Union[str, Path]) -> Tuple[np.ndarray, Dict]:
    path = Path(path)
    df = pd.read_csv(path, float_precision="round_trip")
    side = path.with_suffix(path.suffix + ".json")
    meta = json.loads(side.read_text(encoding="utf-8")) if side.exists() else {}
    return df["error_norm"].to_numpy(dtype=float), meta
