# -*- coding: utf-8 -*-
"""
ui/seedsearch_view.py
Aba 3 · Busca de Sementes: par (PRNGA, PRNGW) que minimiza o RMSE médio
na mistura de calibração (uniforme, gaussiana, esparsa).
"""

from __future__ import annotations

import pandas as pd
import streamlit as st

from dscim_app.core.analysis import DEFAULT_LENGTHS
from dscim_app.core.utils import stable_json
from dscim_app.state.cache_wrappers import cached_seed_search
from dscim_app.state.ui_state import clear_result, get_result, store_result


def _spec_label(d: dict) -> str:
    return f"{d['style']} {d['taps_hex']} / semente {d['seed_hex']}"


def render_seedsearch_tab(params: dict) -> None:
    cfg = params["macro"]
    st.subheader("Busca de PRNG e sementes")
    if cfg is None:
        st.warning("Corrija a configuração na barra lateral.")
        return
    st.caption("A configuração atual da barra lateral é sempre avaliada como candidato 0. "
               "O restante do orçamento é amostrado de forma determinística pela master seed.")

    c1, c2, c3 = st.columns(3)
    budget = c1.number_input("Orçamento (configurações)", min_value=1, max_value=4096, value=32, key="ss_budget")
    trials = c2.number_input("Tentativas por distribuição", min_value=10, max_value=2000, value=100, key="ss_trials")
    lengths = c3.multiselect("N", [64, 128, 256], default=list(DEFAULT_LENGTHS), key="ss_lengths")

    a1, a2 = st.columns(2)
    if a1.button("🔎 Buscar", type="primary", key="ss_run") and lengths:
        with st.spinner("Avaliando candidatos..."):
            store_result("seed_result", cached_seed_search(cfg.to_dict(), tuple(sorted(lengths)), int(budget),
                                                           int(trials), int(params["master_seed"])))
    if a2.button("🧹 Limpar", key="ss_clear"):
        clear_result("seed_result")
        st.rerun()

    res = get_result("seed_result")
    if res is None:
        st.info("Defina o orçamento e clique em **Buscar**.")
        return

    m1, m2, m3 = st.columns(3)
    m1.metric("Melhor objetivo", f"{res['objective']:.3%}")
    m2.metric("Configuração atual", f"{res['default_objective']:.3%}",
              delta=f"{res['objective'] - res['default_objective']:+.3%}", delta_color="inverse")
    m3.metric("Avaliadas", f"{res['evaluated']}")
    st.write(f"**PRNGA:** {_spec_label(res['best_config']['prng_a'])}  \n"
             f"**PRNGW:** {_spec_label(res['best_config']['prng_w'])}")

    per_len = pd.DataFrame([
        {"N": int(N), "PRNGA": _spec_label(v["prng_a"]), "PRNGW": _spec_label(v["prng_w"]),
         "objetivo": v["objective"]}
        for N, v in res["per_length"].items()
    ])
    st.dataframe(per_len, use_container_width=True)
    st.download_button("⬇️ JSON", stable_json(res, indent=2), file_name="seedsearch.json", mime="application/json")
