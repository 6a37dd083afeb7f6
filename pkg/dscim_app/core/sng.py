# -*- coding: utf-8 -*-
"""
core/sng.py
Geração de números estocásticos (comparadores) com remapeamento de regiões
do mapa de amostragem 2D.

O mapa 256×256 de pontos (RA, RW) é dividido em 2^k × 2^k retângulos; a linha j
de um grupo de 4^k linhas ocupa o retângulo (j mod 2^k, j div 2^k). Um ponto
cai em no máximo um retângulo, logo no máximo uma entrada do OR vale 1.

Comparador canônico (modo xor):  bit = (R XOR (r << (8-k))) < v_s
Comparador alternativo (reflect, só k=1):
    r = 0 → R < v_s
    r = 1 → R > NOT(v_s)        (dado invertido + direção do comparador invertida)
"""

from __future__ import annotations

from enum import Enum
from dataclasses import dataclass

import numpy as np

from .errors import RangeError, RowIndexError
from .utils import BITS, LEVELS

VALID_SHIFTS = (0, 1, 2, 3)


class RegionMode(str, Enum):
    XOR = "xor"
    REFLECT = "reflect"


@dataclass(frozen=True)
class ShiftedOperand:
    raw: int
    shifted: int
    k: int


@dataclass(frozen=True)
class RegionAssignment:
    row_in_group: int
    r_a: int
    r_w: int
    k: int


def _check_shift(k: int) -> None:
    if k not in VALID_SHIFTS:
        raise RangeError(f"shift k deve estar em {VALID_SHIFTS} (recebido {k})")


def shift_value(raw: int, k: int) -> ShiftedOperand:
    _check_shift(k)
    if not 0 <= raw < LEVELS:
        raise RangeError(f"operando sem sinal fora de [0, 256): {raw}")
    return ShiftedOperand(raw=int(raw), shifted=int(raw) >> k, k=k)


def region_of_row(j: int, k: int) -> RegionAssignment:
    _check_shift(k)
    side = 1 << k
    if not 0 <= j < side * side:
        raise RowIndexError(f"linha {j} fora do grupo de {side * side} linhas")
    return RegionAssignment(row_in_group=j, r_a=j % side, r_w=j // side, k=k)


def axis_bit(v: ShiftedOperand, r: int, R: int, mode: RegionMode = RegionMode.XOR) -> int:
    if mode is RegionMode.REFLECT:
        if v.k != 1:
            raise RangeError("modo reflect só existe para k=1")
        if r == 0:
            return int(R < v.shifted)
        return int(R > (~v.shifted & 0xFF))
    return int((R ^ (r << (BITS - v.k))) < v.shifted)


def row_product_bit(a: ShiftedOperand, w: ShiftedOperand, assign: RegionAssignment,
                    RA: int, RW: int, mode: RegionMode = RegionMode.XOR) -> int:
    if not a.k == w.k == assign.k:
        raise RangeError(f"shifts divergentes: a.k={a.k}, w.k={w.k}, região k={assign.k}")
    return axis_bit(a, assign.r_a, RA, mode) & axis_bit(w, assign.r_w, RW, mode)


# ---------------------------------------------------------
# Versões vetorizadas (uma linha por coluna do array)
# ---------------------------------------------------------
def region_arrays(rows: int, k: int):
    """(r_a, r_w) de cada linha de uma coluna de `rows` linhas, grupos consecutivos de 4^k."""
    side = 1 << k
    j = np.arange(rows) % (side * side)
    return j % side, j // side


def axis_table(shifted: np.ndarray, regions: np.ndarray, k: int,
               mode: RegionMode = RegionMode.XOR) -> np.ndarray:
    """
    Tabela bool [256, H]: bit do comparador para cada valor aleatório R e cada linha.
    O simulador indexa essa tabela pela sequência do PRNG.
    """
    R = np.arange(LEVELS, dtype=np.int64)[:, None]
    s = np.asarray(shifted, dtype=np.int64)[None, :]
    r = np.asarray(regions, dtype=np.int64)[None, :]
    if mode is RegionMode.REFLECT:
        if k != 1:
            raise RangeError("modo reflect só existe para k=1")
        return np.where(r == 0, R < s, R > (~s & 0xFF))
    return (R ^ (r << (BITS - k))) < s
