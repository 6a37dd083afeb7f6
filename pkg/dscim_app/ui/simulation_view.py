# -*- coding: utf-8 -*-
"""
ui/simulation_view.py
Aba 1 · Simulação: ativações × pesos pelo macro, comparado ao MAC exato.

Entrada por upload (CSV/XLSX) ou sorteio uniforme INT8 com a master seed.
Resultado persistido em session_state até trocar arquivos ou configuração.
"""

from __future__ import annotations

import numpy as np
import streamlit as st

from dscim_app.core.errors import DscimError
from dscim_app.core.io_files import table_to_csv_text, table_to_xlsx_bytes
from dscim_app.core.utils import INT8_MAX, INT8_MIN
from dscim_app.state.cache_wrappers import cached_read_operands, cached_simulation
from dscim_app.state.ui_state import (
    clear_result, files_signature, get_result, store_result, uploads_changed,
)
from dscim_app.ui.components.uploads import uploads_simulation


def _random_operands(cfg, vectors: int, columns: int, seed: int):
    rng = np.random.default_rng(seed)
    A = rng.integers(INT8_MIN, INT8_MAX + 1, (vectors, cfg.rows))
    W = rng.integers(INT8_MIN, INT8_MAX + 1, (cfg.rows, columns))
    return A, W


def render_simulation_tab(params: dict) -> None:
    cfg = params["macro"]
    st.subheader("Simulação do macro")
    if cfg is None:
        st.warning("Corrija a configuração na barra lateral.")
        return
    for w in params["warnings"]:
        st.caption(f"⚠️ {w}")

    origem = st.radio("Origem dos operandos:", ["Upload", "Aleatório (uniforme INT8)"], horizontal=True,
                      key="sim_origem")
    act_file = w_file = None
    if origem == "Upload":
        act_file, w_file = uploads_simulation()
    else:
        c1, c2 = st.columns(2)
        vectors = c1.number_input("Vetores de ativação", min_value=1, max_value=512, value=64, key="sim_vec")
        columns = c2.number_input("Colunas de peso", min_value=1, max_value=cfg.columns, value=4, key="sim_cols")

    a1, a2 = st.columns(2)
    run_click = a1.button("▶️ Simular", type="primary", key="sim_run")
    if a2.button("🧹 Limpar", key="sim_clear"):
        clear_result("sim_result")
        st.rerun()

    if run_click:
        try:
            if origem == "Upload":
                if not act_file or not w_file:
                    st.warning("Envie ativações e pesos antes de simular.")
                    return
                A, W = cached_read_operands(act_file.getvalue(), act_file.name,
                                            w_file.getvalue(), w_file.name, cfg.rows)
            else:
                A, W = _random_operands(cfg, int(vectors), int(columns), int(params["master_seed"]))
            with st.spinner("Simulando..."):
                df = cached_simulation(cfg.to_dict(), A, W)
        except DscimError as e:
            st.error(str(e))
            return
        store_result("sim_result", df)
        st.session_state["sim_files_sig"] = files_signature([act_file, w_file])
        st.session_state["sim_config_hash"] = cfg.digest()

    df = get_result("sim_result")
    if df is None:
        st.info("Escolha os operandos e clique em **Simular**.")
        return  # short-circuit
    # Arquivos mudaram?
    if origem == "Upload" and uploads_changed(st.session_state["sim_files_sig"], [act_file, w_file]):
        st.info("Os arquivos enviados mudaram desde a última simulação. Clique em **Simular** para atualizar.")
    if st.session_state["sim_config_hash"] != cfg.digest():
        st.info("A configuração mudou desde a última simulação. Clique em **Simular** para atualizar.")

    err = df["error_norm"].to_numpy()
    m1, m2, m3, m4 = st.columns(4)
    m1.metric("Saídas", f"{len(df)}")
    m2.metric("RMSE normalizado", f"{np.sqrt(np.mean(err ** 2)):.3%}")
    m3.metric("Viés", f"{err.mean():+.3%}")
    m4.metric("Ativações do acumulador / saída", f"{int(df['accumulator_activations'].iloc[0])}")

    st.dataframe(df, use_container_width=True, height=360)
    st.scatter_chart(df, x="psum_exact", y="psum_est")

    config = {"macro": cfg.to_dict(), "config_hash": cfg.digest()}
    d1, d2 = st.columns(2)
    d1.download_button("⬇️ CSV", table_to_csv_text(df, config), file_name="simulacao.csv", mime="text/csv")
    d2.download_button("⬇️ XLSX", table_to_xlsx_bytes(df, config), file_name="simulacao.xlsx",
                       mime="application/vnd.openxmlformats-officedocument.spreadsheetml.sheet")
