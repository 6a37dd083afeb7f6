# -*- coding: utf-8 -*-
"""
app.py
Orquestrador do painel DS-CIM (streamlit run app.py).

- Configura página (layout.setup_page)
- Inicializa estado (ui_state.init_ui_state)
- Lê parâmetros do macro na sidebar e cria as abas
- Direciona cada aba para sua view

  dscim_app/core/   → simulação, oráculos, análise, modelo de desempenho
  dscim_app/state/  → caches e estado da interface
  dscim_app/ui/     → views e componentes visuais
"""

from __future__ import annotations

from dscim_app.ui.layout import setup_page, sidebar_params, build_tabs
from dscim_app.state.ui_state import init_ui_state

from dscim_app.ui.simulation_view import render_simulation_tab
from dscim_app.ui.analysis_view import render_analysis_tab
from dscim_app.ui.seedsearch_view import render_seedsearch_tab
from dscim_app.ui.saturation_view import render_saturation_tab
from dscim_app.ui.perf_view import render_perf_tab


setup_page()
init_ui_state()
params = sidebar_params()

tab_sim, tab_err, tab_seed, tab_sat, tab_perf = build_tabs()

with tab_sim:
    render_simulation_tab(params)

with tab_err:
    render_analysis_tab(params)

with tab_seed:
    render_seedsearch_tab(params)

with tab_sat:
    render_saturation_tab(params)

with tab_perf:
    render_perf_tab(params)
