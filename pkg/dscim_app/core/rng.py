# -*- coding: utf-8 -*-
"""
core/rng.py
Geradores pseudo-aleatórios de 8 bits (PRNGA / PRNGW) baseados em LFSR.

Funções:
- prng_next      → um passo (valor emitido + novo estado)
- prng_sequence  → n amostras a partir da semente
- prng_array     → mesma coisa em numpy, com cache (usado pelo simulador)
- period_check   → comprimento do ciclo a partir da semente

Convenções:
- taps: bit i = coeficiente de x^i em P(x) = x^8 + Σ c_i x^i  (x^8+x^4+x^3+x^2+1 → 0x1D).
- Galois: multiplica o registrador por x módulo P.
- Fibonacci: desloca à esquerda e realimenta a paridade do registrador
  mascarado pelos taps espelhados.
- O valor emitido é o registrador ANTES do passo (a 1ª amostra é a semente).
- zero_insert: o estado 0 entra entre o predecessor de 0x01 e o próprio 0x01,
  levando o período de 255 para 256.
"""

from __future__ import annotations

from enum import Enum
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np

from .errors import InvalidSpecError, RangeError
from .utils import LEVELS, f_hex, parse_hex

ANCHOR_STATE = 0x01

# Os 16 polinômios primitivos de grau 8 (termo x^8 omitido).
MAXIMAL_TAPS: Tuple[int, ...] = (
    0x1D, 0x2B, 0x2D, 0x4D, 0x5F, 0x63, 0x65, 0x69,
    0x71, 0x87, 0x8D, 0xA9, 0xC3, 0xCF, 0xE7, 0xF5,
)


class LfsrStyle(str, Enum):
    FIBONACCI = "fibonacci"
    GALOIS = "galois"


# Catálogo da busca de sementes: cada polinômio nas duas formas.
POLYNOMIAL_CATALOG: Tuple[Tuple[LfsrStyle, int], ...] = tuple(
    (style, taps) for style in (LfsrStyle.GALOIS, LfsrStyle.FIBONACCI) for taps in MAXIMAL_TAPS
)


@dataclass(frozen=True)
class LfsrSpec:
    style: LfsrStyle = LfsrStyle.GALOIS
    taps: int = 0x1D
    seed: int = 0x01
    zero_insert: bool = True

    def __post_init__(self):
        try:
            object.__setattr__(self, "style", LfsrStyle(self.style))
        except ValueError:
            raise InvalidSpecError(f"estilo de LFSR desconhecido: {self.style!r}")
        if not 0 <= int(self.taps) < LEVELS:
            raise InvalidSpecError(f"taps fora de 8 bits: {self.taps}")
        if not 0 <= int(self.seed) < LEVELS:
            raise InvalidSpecError(f"semente fora de 8 bits: {self.seed}")
        if self.seed == 0 and not self.zero_insert:
            # estado absorvente
            raise InvalidSpecError("semente 0 só é válida com zero_insert")

    def with_seed(self, seed: int) -> "LfsrSpec":
        return replace(self, seed=int(seed))

    def to_dict(self) -> Dict:
        return {
            "style": self.style.value,
            "taps_hex": f_hex(self.taps),
            "seed_hex": f_hex(self.seed),
            "zero_insert": bool(self.zero_insert),
        }

    @classmethod
    def from_dict(cls, d: Dict) -> "LfsrSpec":
        return cls(
            style=d.get("style", LfsrStyle.GALOIS.value),
            taps=parse_hex(d.get("taps_hex", d.get("taps")), 0x1D),
            seed=parse_hex(d.get("seed_hex", d.get("seed")), 0x01),
            zero_insert=bool(d.get("zero_insert", True)),
        )


@dataclass(frozen=True)
class PrngState:
    spec: LfsrSpec
    state: int
    zero_pending: bool = False

    @classmethod
    def initial(cls, spec: LfsrSpec) -> "PrngState":
        return cls(spec=spec, state=spec.seed, zero_pending=(spec.seed == 0))


def catalog_spec(index: int, seed: int, zero_insert: bool = True) -> LfsrSpec:
    style, taps = POLYNOMIAL_CATALOG[index]
    return LfsrSpec(style=style, taps=taps, seed=seed, zero_insert=zero_insert)


def catalog_index(spec: LfsrSpec) -> int:
    """Posição do polinômio no catálogo; -1 se não estiver lá."""
    try:
        return POLYNOMIAL_CATALOG.index((spec.style, spec.taps))
    except ValueError:
        return -1


def _reverse8(v: int) -> int:
    return int(f"{v & 0xFF:08b}"[::-1], 2)


def _raw_step(spec: LfsrSpec, s: int) -> int:
    if spec.style is LfsrStyle.GALOIS:
        nxt = (s << 1) & 0xFF
        if s & 0x80:
            nxt ^= spec.taps
        return nxt
    fb = bin(s & _reverse8(spec.taps)).count("1") & 1
    return ((s << 1) | fb) & 0xFF


def prng_next(state: PrngState) -> Tuple[PrngState, int]:
    spec = state.spec
    out = state.state
    if state.zero_pending:
        return PrngState(spec, ANCHOR_STATE, False), out
    nxt = _raw_step(spec, state.state)
    if spec.zero_insert and nxt == ANCHOR_STATE:
        return PrngState(spec, 0, True), out
    return PrngState(spec, nxt, False), out


@lru_cache(maxsize=4096)
def prng_array(spec: LfsrSpec, n: int) -> np.ndarray:
    """Sequência de n bytes como array uint8 somente-leitura (cacheado por spec)."""
    if n < 1:
        raise RangeError(f"n deve ser >= 1 (recebido {n})")
    out = np.empty(n, dtype=np.uint8)
    st = PrngState.initial(spec)
    for i in range(n):
        st, out[i] = prng_next(st)
    out.setflags(write=False)
    return out


def prng_sequence(spec: LfsrSpec, n: int) -> List[int]:
    return [int(v) for v in prng_array(spec, int(n))]


def period_check(spec: LfsrSpec) -> int:
    """Comprimento do ciclo alcançado a partir da semente (detecção por força bruta)."""
    seen: Dict[Tuple[int, bool], int] = {}
    st = PrngState.initial(spec)
    i = 0
    while (st.state, st.zero_pending) not in seen:
        seen[(st.state, st.zero_pending)] = i
        st, _ = prng_next(st)
        i += 1
    return i - seen[(st.state, st.zero_pending)]
