# -*- coding: utf-8 -*-
"""Simulador comportamental de macros DS-CIM (compute-in-memory estocástico)."""

__version__ = "0.1.0"
