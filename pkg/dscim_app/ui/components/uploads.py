# -*- coding: utf-8 -*-
"""
ui/components/uploads.py
Uploads isolados por contexto (matrizes da simulação / trace de operandos).
"""

from __future__ import annotations

from typing import Optional, Tuple
import streamlit as st


def uploads_simulation() -> Tuple[Optional[object], Optional[object]]:
    """
    Uploads de ativações (vetores × H) e pesos (H × colunas).
    Retorna (act_file, w_file).
    """
    st.subheader("📤 Matrizes de entrada")
    c1, c2 = st.columns(2)
    with c1:
        act_file = st.file_uploader("Ativações INT8 (.csv / .xlsx):", type=["csv", "xlsx"], key="act_up")
    with c2:
        w_file = st.file_uploader("Pesos INT8 (.csv / .xlsx):", type=["csv", "xlsx"], key="w_up")
    return act_file, w_file
