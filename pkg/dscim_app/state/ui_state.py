# -*- coding: utf-8 -*-
"""
state/ui_state.py
Inicialização e operações de estado da UI (session_state).

Sem simulação aqui: só chaves com valores padrão, assinaturas de upload
e limpeza dos resultados de cada aba.
"""

from __future__ import annotations

from typing import Iterable, Optional, Tuple
import streamlit as st

# resultados persistidos entre reruns
RESULT_KEYS = ("sim_result", "sweep_result", "sparsity_result", "seed_result", "sat_result")


def init_ui_state() -> None:
    """Garante que todas as chaves existam no session_state. Idempotente."""
    for key in RESULT_KEYS:
        st.session_state.setdefault(key, None)
    st.session_state.setdefault("sim_files_sig", None)
    st.session_state.setdefault("sim_config_hash", None)


def files_signature(files: Optional[Iterable]) -> Optional[Tuple]:
    """Assinatura estável (nome, tamanho) de uploads; detecta troca de arquivos."""
    files = [f for f in (files or []) if f is not None]
    if not files:
        return None
    return tuple(sorted((getattr(f, "name", ""), getattr(f, "size", 0)) for f in files))


def uploads_changed(stored_sig: Optional[Tuple], files: Optional[Iterable]) -> bool:
    """True quando há uploads e eles diferem dos usados no último processamento."""
    current = files_signature(files)
    return current is not None and current != stored_sig


def store_result(key: str, value) -> None:
    st.session_state[key] = value


def get_result(key: str):
    return st.session_state.get(key)


def clear_result(key: str) -> None:
    st.session_state[key] = None
    if key == "sim_result":
        st.session_state["sim_files_sig"] = None
        st.session_state["sim_config_hash"] = None
