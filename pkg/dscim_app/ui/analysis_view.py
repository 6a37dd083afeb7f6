# -*- coding: utf-8 -*-
"""
ui/analysis_view.py
Aba 2 · Análise de Erro: varredura de N, varredura de esparsidade
(DS-CIM vs. OR-MAC ingênuo), comparação com o OR-MAC bipolar e
exportação da distribuição de erro.
"""

from __future__ import annotations

import streamlit as st

from dscim_app.core.analysis import DEFAULT_LENGTHS, DEFAULT_SPARSITY_GRID, DistKind, Estimator, InputDistribution
from dscim_app.core.errors import DscimError
from dscim_app.core.utils import GRID_POINTS
from dscim_app.state.cache_wrappers import (
    cached_compare_baselines, cached_error_model, cached_length_sweep, cached_sparsity_sweep,
)
from dscim_app.state.ui_state import get_result, store_result


def _distribution_inputs() -> InputDistribution:
    kind = st.selectbox("Distribuição de entrada", [DistKind.UNIFORM.value, DistKind.GAUSSIAN.value,
                                                    DistKind.SPARSE.value], key="an_dist")
    if kind == DistKind.GAUSSIAN.value:
        c1, c2 = st.columns(2)
        sigma = c1.number_input("σ", min_value=1.0, max_value=128.0, value=32.0, key="an_sigma")
        clip = c2.number_input("clip", min_value=1, max_value=127, value=127, key="an_clip")
        return InputDistribution(DistKind.GAUSSIAN, sigma=float(sigma), clip=int(clip))
    if kind == DistKind.SPARSE.value:
        p = st.slider("Fração de ativações zero", 0.0, 1.0, 0.875, 0.005, key="an_pzero")
        return InputDistribution(DistKind.SPARSE, p_zero=float(p))
    return InputDistribution(DistKind.UNIFORM)


def render_analysis_tab(params: dict) -> None:
    cfg = params["macro"]
    st.subheader("Análise de erro (RMSE normalizado por H·255²)")
    if cfg is None:
        st.warning("Corrija a configuração na barra lateral.")
        return
    trials, seed = int(params["trials"]), int(params["master_seed"])
    st.caption(f"{trials} tentativas, master seed {seed}. "
               f"N = {GRID_POINTS} usa o amostrador exaustivo (sem aleatoriedade).")

    # =========================
    # Comprimento
    # =========================
    st.markdown("#### Varredura de comprimento")
    dist = _distribution_inputs()
    lengths = st.multiselect("N", [16, 32, 64, 128, 256, 512, 1024, GRID_POINTS], default=list(DEFAULT_LENGTHS),
                             key="an_lengths")
    if st.button("📉 Varrer N", key="an_len_btn") and lengths:
        try:
            with st.spinner("Avaliando..."):
                store_result("sweep_result", cached_length_sweep(cfg.to_dict(), tuple(sorted(lengths)),
                                                                 dist.to_dict(), trials, seed,
                                                                 bool(params.get("tuned_prng"))))
        except DscimError as e:
            st.error(str(e))
    df_len = get_result("sweep_result")
    if df_len is not None:
        st.dataframe(df_len, use_container_width=True)
        st.line_chart(df_len.set_index("N")[["rmse_norm", "mean_bias_norm"]])

    # =========================
    # Esparsidade
    # =========================
    st.markdown("---")
    st.markdown("#### Varredura de esparsidade")
    with_naive = st.toggle("Incluir OR-MAC ingênuo (PRNG independente por linha)", value=True, key="an_naive")
    if st.button("📉 Varrer esparsidade", key="an_sp_btn"):
        ests = (Estimator.DSCIM.value, Estimator.NAIVE.value) if with_naive else (Estimator.DSCIM.value,)
        try:
            with st.spinner("Avaliando..."):
                st.session_state["sparsity_result"] = cached_sparsity_sweep(
                    cfg.to_dict(), DEFAULT_SPARSITY_GRID, trials, seed, ests)
        except DscimError as e:
            st.error(str(e))
    df_sp = st.session_state.get("sparsity_result")
    if df_sp is not None:
        st.dataframe(df_sp, use_container_width=True)
        st.line_chart(df_sp.pivot(index="p_zero", columns="estimator", values="rmse_norm"))

    # =========================
    # Bipolar + exportação
    # =========================
    st.markdown("---")
    c1, c2 = st.columns(2)
    with c1:
        st.markdown("#### OR-MAC bipolar")
        if st.button("⚖️ Comparar", key="an_bip_btn"):
            st.dataframe(cached_compare_baselines(cfg.to_dict(), min(trials, 200), seed),
                         use_container_width=True)
    with c2:
        st.markdown("#### Modelo de erro")
        if st.button("📦 Gerar distribuição de erro", key="an_exp_btn"):
            csv_bytes, json_bytes = cached_error_model(cfg.to_dict(), dist.to_dict(), trials, seed)
            st.download_button("⬇️ error_model.csv", csv_bytes, file_name="error_model.csv", mime="text/csv")
            st.download_button("⬇️ error_model.csv.json", json_bytes, file_name="error_model.csv.json",
                               mime="application/json")
