# -*- coding: utf-8 -*-
"""
ui/perf_view.py
Aba 5 · Desempenho: ciclos, ganho de vazão pelo CMR e proxy de energia do acumulador.
"""

from __future__ import annotations

from dataclasses import replace

import pandas as pd
import streamlit as st

from dscim_app.core.errors import DscimError
from dscim_app.core.macro import Accumulator
from dscim_app.core.perf import WorkloadSpec, activation_ratio, latency_model


def render_perf_tab(params: dict) -> None:
    cfg = params["macro"]
    st.subheader("Modelo de desempenho")
    if cfg is None:
        st.warning("Corrija a configuração na barra lateral.")
        return

    c1, c2, c3 = st.columns(3)
    try:
        work = WorkloadSpec(
            output_count=int(c1.number_input("Vetores de ativação", min_value=1, value=4096, key="pf_P")),
            vector_len=int(c2.number_input("Comprimento do vetor", min_value=1, value=cfg.rows, key="pf_len")),
            weight_columns=int(c3.number_input("Colunas de peso", min_value=1, value=cfg.columns, key="pf_cols")),
        )
        rep = latency_model(work, cfg)
        base = latency_model(work, replace(cfg, cmr=1))
    except DscimError as e:
        st.error(str(e))
        return

    m1, m2, m3, m4 = st.columns(4)
    m1.metric("Ciclos", f"{rep.cycles:,}".replace(",", "."))
    m2.metric("Ganho de vazão", f"{rep.throughput_gain:.1f}×")
    m3.metric("Utilização", f"{rep.utilization:.1%}")
    dens = rep.relative_compute_density
    m4.metric("Densidade relativa", f"{dens:g}×" if dens is not None else "—")

    ratio = activation_ratio(cfg.bitstream_len, Accumulator.LATCH4)
    st.write(f"Ativações do acumulador por saída: **{rep.activations_per_output}** "
             f"(latch4 usa {ratio:.0%} das ativações do direto).")
    st.dataframe(pd.DataFrame([{"config": f"CMR={cfg.cmr}", **rep.to_dict()},
                               {"config": "CMR=1", **base.to_dict()}]), use_container_width=True)
