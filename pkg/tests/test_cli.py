import json
from pathlib import Path

import pytest

from dscim_app.cli import main
from dscim_app.core.io_files import read_table

FIXTURES = Path(__file__).parent / "fixtures"


def _simulate(tmp_path, *extra):
    out = tmp_path / "sim.csv"
    code = main(["simulate", "--activations", str(FIXTURES / "activations.csv"),
                 "--weights", str(FIXTURES / "weights.csv"), "--out", str(out), *extra])
    return code, out


def test_simulate_writes_table_with_config(tmp_path):
    code, out = _simulate(tmp_path)
    assert code == 0
    df, config = read_table(out)
    assert len(df) == 4
    assert list(df.columns) == ["vector", "column", "psum_est", "psum_exact", "error_norm", "C",
                                "accumulator_activations"]
    assert config["mode"] == "dscim1"
    assert config["macro"]["group_size"] == 16
    assert (tmp_path / "sim.csv.meta.json").exists()


def test_simulate_is_byte_identical_across_runs(tmp_path):
    _, first = _simulate(tmp_path)
    text = first.read_text()
    _, second = _simulate(tmp_path)
    assert second.read_text() == text


def test_simulate_dscim2_json(tmp_path):
    code, out = _simulate(tmp_path, "--mode", "dscim2", "--format", "json")
    assert code == 0
    body = json.loads(out.read_text())
    assert body["config"]["macro"]["accumulator"] == "latch4"
    assert {r["accumulator_activations"] for r in body["rows"]} == {64}


def test_bad_input_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2,300\n")
    code = main(["simulate", "--activations", str(bad), "--weights", str(FIXTURES / "weights.csv"),
                 "--out", str(tmp_path / "o.csv")])
    assert code == 2
    assert "linha 1, coluna 3" in capsys.readouterr().err


def test_bad_config_exit_code(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"macro": {"group_size": 8}}))
    code, _ = _simulate(tmp_path, "--config", str(cfg))
    assert code == 3


def test_sweep_length_from_config(tmp_path):
    out = tmp_path / "len.csv"
    code = main(["sweep", "length", "--config", str(FIXTURES / "run_dscim2.json"), "--trials", "4",
                 "--out", str(out)])
    assert code == 0
    df, config = read_table(out)
    assert df["N"].tolist() == [64, 256]
    assert config["master_seed"] == 7 and config["trials"] == 4
    meta = json.loads((tmp_path / "len.csv.meta.json").read_text())
    assert meta["warnings"] == []


def test_sweep_sparsity_naive(tmp_path):
    out = tmp_path / "sp.csv"
    code = main(["sweep", "sparsity", "--estimator", "naive", "--trials", "3", "--out", str(out)])
    assert code == 0
    df, _ = read_table(out)
    assert set(df["estimator"]) == {"naive"}
    assert df["p_zero"].tolist() == [0.0, 0.25, 0.5, 0.75, 0.875, 1.0]


def test_saturation_and_perf(tmp_path):
    sat = tmp_path / "sat.csv"
    assert main(["saturation", "--n", "1", "16", "--p", "0.1", "--trials", "5", "--out", str(sat)]) == 0
    df, _ = read_table(sat)
    assert df.loc[df.n == 16, "analytic_rel_error"].iloc[0] == pytest.approx(0.4908, abs=1e-3)

    perf = tmp_path / "perf.json"
    assert main(["perf", "--mode", "dscim2", "--out", str(perf)]) == 0
    report = json.loads(perf.read_text())["report"]
    assert report["activations_per_output"] == 64
    assert report["throughput_gain"] == 64


def test_seedsearch_and_errormodel(tmp_path):
    out = tmp_path / "seeds.json"
    code = main(["seedsearch", "--budget", "2", "--trials", "3", "--out", str(out)])
    assert code == 0
    body = json.loads(out.read_text())
    assert body["result"]["evaluated"] == 2
    assert set(body["result"]["per_length"]) == {"64", "128", "256"}

    err = tmp_path / "err.csv"
    assert main(["errormodel", "--trials", "10", "--out", str(err)]) == 0
    assert len(err.read_text().splitlines()) == 11
    assert json.loads((tmp_path / "err.csv.json").read_text())["trials"] == 10


def test_exact_mode_zero_vector(tmp_path):
    cfg = tmp_path / "exact.json"
    cfg.write_text(json.dumps({"mode": "custom", "macro": {"group_size": 1, "sampler": "exhaustive"}}))
    acts = tmp_path / "zeros.csv"
    acts.write_text(",".join(["0"] * 128) + "\n")
    out = tmp_path / "o.csv"
    code = main(["simulate", "--config", str(cfg), "--activations", str(acts),
                 "--weights", str(FIXTURES / "weights.csv"), "--out", str(out)])
    assert code == 0
    df, config = read_table(out)
    assert (df["psum_est"] == 0).all() and (df["psum_exact"] == 0).all()
    assert config["macro"]["bitstream_len"] == 65536


@pytest.mark.parametrize("config", [
    {"macro": {"prng_a": {"style": "galois", "taps_hex": "0x1D", "seed_hex": "zz"}}},
    {"trials": "many"},
    {"macro": [16]},
])
def test_malformed_config_values_exit_code(tmp_path, capsys, config):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps(config))
    code, _ = _simulate(tmp_path, "--config", str(cfg))
    assert code == 3
    assert "Traceback" not in capsys.readouterr().err


def test_non_numeric_trace_exit_code(tmp_path, capsys):
    trace = tmp_path / "trace.csv"
    trace.write_text("x,w\n" + "a,1\n" * 128)
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"distribution": {"kind": "file-trace", "trace_path": str(trace)}}))
    code = main(["errormodel", "--config", str(cfg), "--trials", "2", "--out", str(tmp_path / "err.csv")])
    assert code == 2
    assert "valor não inteiro em x" in capsys.readouterr().err


def test_sweep_length_records_tuned_seeds(tmp_path):
    out = tmp_path / "len.csv"
    assert main(["sweep", "length", "--trials", "2", "--out", str(out)]) == 0
    _, config = read_table(out)
    assert config["tuned_prng"] is True

    pinned = tmp_path / "pinned.json"
    pinned.write_text(json.dumps({"macro": {"prng_w": {"style": "fibonacci", "taps_hex": "0x63", "seed_hex": "0x10"}}}))
    assert main(["sweep", "length", "--config", str(pinned), "--trials", "2", "--out", str(out)]) == 0
    _, config = read_table(out)
    assert config["tuned_prng"] is False
