# -*- coding: utf-8 -*-
"""
state/cache_wrappers.py
Wrappers cacheados (@st.cache_data) sobre o core, para a UI não recalcular em reruns.

A configuração chega como dict (MacroConfig.to_dict / InputDistribution.to_dict):
o hash do Streamlit fica estável e o core recebe os objetos reconstruídos.
"""

from __future__ import annotations

from typing import Dict, List, Tuple
from io import BytesIO
from pathlib import Path
from tempfile import TemporaryDirectory

import numpy as np
import pandas as pd
import streamlit as st

from dscim_app.core.analysis import (
    InputDistribution, compare_baselines, export_error_model, length_sweep, rmse_eval, saturation_curve, seed_search,
    simulation_frame, sparsity_sweep, sweep_frame,
)
from dscim_app.core.io_files import read_activations, read_weights
from dscim_app.core.macro import MacroConfig


@st.cache_data(show_spinner=False)
def cached_read_operands(act_bytes: bytes, act_name: str, w_bytes: bytes, w_name: str,
                         rows: int) -> Tuple[np.ndarray, np.ndarray]:
    a, w = BytesIO(act_bytes), BytesIO(w_bytes)
    a.name, w.name = act_name, w_name
    return read_activations(a, rows), read_weights(w, rows)


@st.cache_data(show_spinner=False)
def cached_simulation(cfg: Dict, A: np.ndarray, W: np.ndarray) -> pd.DataFrame:
    return simulation_frame(MacroConfig.from_dict(cfg), A, W)


@st.cache_data(show_spinner=False)
def cached_length_sweep(cfg: Dict, lengths: Tuple[int, ...], dist: Dict, trials: int,
                        master_seed: int, retune: bool = False) -> pd.DataFrame:
    points = length_sweep(MacroConfig.from_dict(cfg), lengths, InputDistribution.from_dict(dist),
                          trials, master_seed, retune=retune)
    return sweep_frame(points, "N")


@st.cache_data(show_spinner=False)
def cached_sparsity_sweep(cfg: Dict, grid: Tuple[float, ...], trials: int, master_seed: int,
                          estimators: Tuple[str, ...]) -> pd.DataFrame:
    frames: List[pd.DataFrame] = []
    for est in estimators:
        df = sweep_frame(sparsity_sweep(MacroConfig.from_dict(cfg), grid, trials, master_seed,
                                        estimator=est), "p_zero")
        df.insert(0, "estimator", est)
        frames.append(df)
    return pd.concat(frames, ignore_index=True)


@st.cache_data(show_spinner=False)
def cached_compare_baselines(cfg: Dict, trials: int, master_seed: int) -> pd.DataFrame:
    stats = compare_baselines(MacroConfig.from_dict(cfg), trials=trials, master_seed=master_seed)
    return pd.DataFrame([{"estimador": k, **s.to_row()} for k, s in stats.items()])


@st.cache_data(show_spinner=False)
def cached_seed_search(cfg: Dict, lengths: Tuple[int, ...], budget: int, trials: int,
                       master_seed: int) -> Dict:
    return seed_search(MacroConfig.from_dict(cfg), lengths=lengths, budget=budget, trials=trials,
                       master_seed=master_seed).to_dict()


@st.cache_data(show_spinner=False)
def cached_saturation_curve(n_list: Tuple[int, ...], p_grid: Tuple[float, ...], trials: int, N: int,
                            master_seed: int) -> pd.DataFrame:
    return saturation_curve(n_list, p_grid, trials=trials, N=N, master_seed=master_seed)


@st.cache_data(show_spinner=False)
def cached_error_model(cfg: Dict, dist: Dict, trials: int, master_seed: int) -> Tuple[bytes, bytes]:
    """(CSV de erros, sidecar JSON) prontos para download."""
    macro, d = MacroConfig.from_dict(cfg), InputDistribution.from_dict(dist)
    stats = rmse_eval(macro, d, trials, master_seed)
    with TemporaryDirectory() as tmp:
        csv_path, side = export_error_model(stats, Path(tmp) / "error_model.csv", macro, d)
        return csv_path.read_bytes(), side.read_bytes()
