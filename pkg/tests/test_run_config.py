import logging

import pytest

from dscim_app.core.analysis import DistKind
from dscim_app.core.errors import ConfigError, InvalidSpecError
from dscim_app.core.macro import TUNED_PRNG, Accumulator, MacroConfig
from dscim_app.core.rng import LfsrSpec, LfsrStyle
from dscim_app.core.run_config import Mode, load_run_config, resolve_macro
from dscim_app.core.utils import parse_hex


def test_presets():
    assert resolve_macro(Mode.DSCIM1).group_size == 16
    d2 = resolve_macro(Mode.DSCIM2)
    assert (d2.group_size, d2.accumulator) == (64, Accumulator.LATCH4)
    assert resolve_macro(Mode.CUSTOM) == MacroConfig()


def test_override_wins_with_warning(caplog):
    warnings = []
    with caplog.at_level(logging.WARNING, logger="dscim_app.core.run_config"):
        cfg = resolve_macro(Mode.DSCIM2, {"group_size": 16}, warnings)
    assert cfg.group_size == 16
    assert len(warnings) == 1 and "group_size" in warnings[0]
    assert "preset dscim2" in caplog.text


def test_matching_override_is_silent():
    warnings = []
    resolve_macro(Mode.DSCIM2, {"accumulator": "latch4", "bitstream_len": 64}, warnings)
    assert warnings == []


def test_unknown_macro_field():
    with pytest.raises(ConfigError):
        resolve_macro(Mode.DSCIM1, {"adder": "tree"})


def test_load_run_config_from_dict():
    rc = load_run_config({
        "mode": "dscim2",
        "macro": {"bitstream_len": 64, "shift": 3,
                  "prng_w": {"style": "galois", "taps_hex": "0x2B", "seed_hex": "0x10"}},
        "distribution": {"kind": "sparse", "p_zero": 0.5},
        "master_seed": 9, "trials": 50, "lengths": [64, 128],
        "saturation": {"n": [2, 8]},
    })
    assert rc.mode is Mode.DSCIM2
    assert rc.macro.bitstream_len == 64
    assert (rc.macro.prng_w.style, rc.macro.prng_w.taps, rc.macro.prng_w.seed) == (LfsrStyle.GALOIS, 0x2B, 0x10)
    assert rc.distribution.kind is DistKind.SPARSE
    assert (rc.master_seed, rc.trials, rc.lengths, rc.sat_n) == (9, 50, (64, 128), (2, 8))


def test_flags_override_file():
    rc = load_run_config({"mode": "dscim1", "trials": 50}, mode="dscim2", trials=7, output_format="json")
    assert rc.mode is Mode.DSCIM2
    assert rc.trials == 7
    assert rc.output_format == "json"


def test_invalid_run_config():
    with pytest.raises(ConfigError):
        load_run_config({"mode": "dscim3"})
    with pytest.raises(ConfigError):
        load_run_config({"format": "parquet"})
    with pytest.raises(ConfigError):
        load_run_config({"trials": 0})
    with pytest.raises(InvalidSpecError):
        load_run_config({"macro": {"prng_a": {"seed_hex": "0x00", "zero_insert": False}}})


@pytest.mark.parametrize("N", [64, 128, 256])
def test_length_picks_tuned_seed_pair(N):
    cfg = resolve_macro(Mode.DSCIM2, {"bitstream_len": N})
    assert (cfg.prng_a, cfg.prng_w) == TUNED_PRNG[N]
    rc = load_run_config({"macro": {"bitstream_len": N}})
    assert (rc.macro.prng_a, rc.macro.prng_w) == TUNED_PRNG[N]
    assert rc.prng_pinned is False


def test_explicit_prng_wins_over_tuned_pair():
    rc = load_run_config({"macro": {"bitstream_len": 64,
                                    "prng_a": {"style": "galois", "taps_hex": "0x1D", "seed_hex": "0x01"}}})
    assert rc.macro.prng_a == LfsrSpec(LfsrStyle.GALOIS, 0x1D, 0x01)
    assert rc.macro.prng_w == MacroConfig().prng_w
    assert rc.prng_pinned is True


def test_parse_hex_rejects_garbage():
    assert parse_hex("0xA5") == 0xA5
    with pytest.raises(ConfigError):
        parse_hex("zz")


@pytest.mark.parametrize("data", [
    {"macro": {"prng_a": {"seed_hex": "zz"}}},
    {"trials": "many"},
    {"macro": [16, 256]},
    ["dscim1"],
    {"macro": {"group_size": "sixteen"}},
])
def test_malformed_values_raise_config_error(data):
    with pytest.raises(ConfigError):
        load_run_config(data)
