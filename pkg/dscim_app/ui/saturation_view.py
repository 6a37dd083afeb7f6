# -*- coding: utf-8 -*-
"""
ui/saturation_view.py
Aba 4 · Saturação do OR: erro relativo de um OR de n entradas
independentes com probabilidade p (analítico + Monte-Carlo).
"""

from __future__ import annotations

import streamlit as st

from dscim_app.core.run_config import DEFAULT_SAT_N, DEFAULT_SAT_P
from dscim_app.state.cache_wrappers import cached_saturation_curve
from dscim_app.state.ui_state import get_result, store_result


def render_saturation_tab(params: dict) -> None:
    st.subheader("Saturação do OR com entradas independentes")
    st.caption("É o mecanismo de erro do OR-MAC ingênuo; o remapeamento de regiões do DS-CIM elimina a "
               "sobreposição entre linhas do mesmo grupo.")
    c1, c2 = st.columns(2)
    n_list = c1.multiselect("Fan-in n", [1, 2, 4, 8, 16, 32, 64, 128], default=list(DEFAULT_SAT_N), key="sat_n")
    cycles = c2.select_slider("Ciclos por tentativa", options=[64, 128, 256, 512, 1024], value=256, key="sat_N")

    if st.button("🔀 Calcular curva", type="primary", key="sat_run") and n_list:
        store_result("sat_result", cached_saturation_curve(tuple(sorted(n_list)), DEFAULT_SAT_P,
                                                           min(int(params["trials"]), 200), int(cycles),
                                                           int(params["master_seed"])))
    df = get_result("sat_result")
    if df is None:
        st.info("Escolha os fan-ins e clique em **Calcular curva**.")
        return
    st.line_chart(df.pivot(index="p", columns="n", values="analytic_rel_error"))
    st.dataframe(df, use_container_width=True)
