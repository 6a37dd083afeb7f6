# -*- coding: utf-8 -*-
"""
ui/layout.py
Layout global (config da página, título/caption), sidebar de parâmetros
e criação das abas.

A UI não simula nada aqui: só coleta parâmetros e devolve o MacroConfig
resolvido para as views consumirem.
"""

from __future__ import annotations

from typing import Tuple
import streamlit as st

from dscim_app.core.errors import DscimError
from dscim_app.core.macro import DEFAULT_PRNG_A, DEFAULT_PRNG_W, Accumulator, Compensation, Sampler, tuned_prng
from dscim_app.core.rng import POLYNOMIAL_CATALOG, catalog_index, catalog_spec
from dscim_app.core.run_config import Mode, resolve_macro
from dscim_app.core.sng import RegionMode
from dscim_app.core.utils import f_hex, parse_hex


def setup_page() -> None:
    """Configura a página e exibe título/caption."""
    st.set_page_config(
        page_title="DS-CIM • Simulador",
        layout="wide",
        initial_sidebar_state="expanded",
    )
    st.title("DS-CIM — Simulador comportamental de compute-in-memory estocástico")
    st.caption(
        "PRNG compartilhado + remapeamento de regiões por linha: contagem OR estimando o MAC INT8 "
        "de uma coluna de 128 linhas. Resultados determinísticos para a mesma configuração."
    )


def _catalog_label(i: int) -> str:
    style, taps = POLYNOMIAL_CATALOG[i]
    return f"{style.value} {f_hex(taps)}"


def _spec_label(spec) -> str:
    return f"{spec.style.value} {f_hex(spec.taps)} / {f_hex(spec.seed)}"


def _prng_inputs(label: str, default, key: str):
    idx = max(catalog_index(default), 0)
    poly = st.selectbox(f"{label}: polinômio", range(len(POLYNOMIAL_CATALOG)), index=idx,
                        format_func=_catalog_label, key=f"{key}_poly")
    seed_txt = st.text_input(f"{label}: semente (hex)", value=f_hex(default.seed), key=f"{key}_seed")
    return catalog_spec(poly, parse_hex(seed_txt, default.seed))


def sidebar_params() -> dict:
    """
    Cria a seção de parâmetros na sidebar e retorna um dicionário:
    macro (MacroConfig), tuned_prng, trials, master_seed, warnings.
    """
    params = {"warnings": []}
    prng_ok = True
    with st.sidebar:
        with st.expander("⚙️ Macro", expanded=True):
            mode = st.selectbox("Modo", [m.value for m in Mode], index=0, key="p_mode")
            custom = mode == Mode.CUSTOM.value
            overrides = {
                "bitstream_len": st.select_slider("N (ciclos)", options=[16, 32, 64, 128, 256, 512, 1024],
                                                  value=256, key="p_N"),
                "sampler": st.radio("Amostrador", [s.value for s in Sampler], horizontal=True, key="p_sampler"),
                "compensation": st.radio("Compensação", [c.value for c in Compensation], horizontal=True,
                                         key="p_comp"),
                "cmr": st.number_input("CMR (vetores por passada)", min_value=1, max_value=64, value=64, key="p_cmr"),
                "region_mode": st.radio("Regiões", [r.value for r in RegionMode], horizontal=True, key="p_region"),
            }
            if custom:
                overrides["group_size"] = st.selectbox("Tamanho do grupo OR", [1, 4, 16, 64], index=2, key="p_G")
                overrides["accumulator"] = st.radio("Acumulador", [a.value for a in Accumulator],
                                                    horizontal=True, key="p_acc")
        with st.expander("🎲 PRNG", expanded=False):
            params["tuned_prng"] = st.checkbox("Sementes otimizadas por N", value=True, key="p_tuned")
            if params["tuned_prng"]:
                pair = tuned_prng(overrides["bitstream_len"])
                if pair:
                    st.caption(f"PRNGA {_spec_label(pair[0])} · PRNGW {_spec_label(pair[1])}")
                else:
                    st.caption("Sem par otimizado para este N; usando o padrão.")
            else:
                try:
                    overrides["prng_a"] = _prng_inputs("PRNGA", DEFAULT_PRNG_A, "pa")
                    overrides["prng_w"] = _prng_inputs("PRNGW", DEFAULT_PRNG_W, "pw")
                except DscimError as e:
                    st.error(str(e))
                    params["warnings"].append(f"PRNG inválido: {e}")
                    prng_ok = False
        with st.expander("📐 Estatística", expanded=False):
            params["trials"] = st.number_input("Tentativas", min_value=10, max_value=20000, value=500, step=50,
                                               key="p_trials")
            params["master_seed"] = st.number_input("Master seed", min_value=0, value=0, step=1, key="p_seed")

    try:
        params["macro"] = resolve_macro(Mode(mode), overrides, params["warnings"]) if prng_ok else None
    except DscimError as e:
        st.sidebar.error(f"Configuração inválida: {e}")
        params["macro"] = None
    return params


def build_tabs() -> Tuple:
    """Cria as abas principais e as retorna para que as views façam o render."""
    return st.tabs([
        "🧮 Simulação", "📉 Análise de Erro", "🔎 Busca de Sementes", "🔀 Saturação OR", "⏱️ Desempenho",
    ])
