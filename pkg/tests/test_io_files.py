import json
from io import BytesIO
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from dscim_app.core.errors import ConfigError, InputValidationError
from dscim_app.core.io_files import (
    read_activations, read_int_matrix, read_json, read_table, read_trace, read_weights, table_to_xlsx_bytes,
    write_json, write_table,
)

FIXTURES = Path(__file__).parent / "fixtures"


def test_read_fixture_matrices():
    A = read_activations(FIXTURES / "activations.csv", 128)
    W = read_weights(FIXTURES / "weights.csv", 128)
    assert A.shape == (2, 128) and W.shape == (128, 2)
    assert A[0, 0] == -128 and W[0, 1] == -92


def test_shape_mismatch():
    with pytest.raises(InputValidationError):
        read_activations(FIXTURES / "activations.csv", 64)
    with pytest.raises(InputValidationError):
        read_weights(FIXTURES / "activations.csv", 128)


def test_error_points_to_line_and_column(tmp_path):
    f = tmp_path / "a.csv"
    f.write_text("# comentário\n1,2,3\n\n4,200,6\n")
    with pytest.raises(InputValidationError) as exc:
        read_int_matrix(f)
    assert (exc.value.line, exc.value.column) == (4, 2)
    assert "linha 4, coluna 2" in str(exc.value)

    f.write_text("1,2\n3,x\n")
    with pytest.raises(InputValidationError) as exc:
        read_int_matrix(f)
    assert (exc.value.line, exc.value.column) == (2, 2)

    f.write_text("")
    with pytest.raises(InputValidationError):
        read_int_matrix(f)


def test_read_xlsx_upload():
    df = pd.DataFrame([[1, -2], [3, 4]])
    buf = BytesIO()
    df.to_excel(buf, header=False, index=False, engine="openpyxl")
    buf.name = "m.xlsx"
    np.testing.assert_array_equal(read_int_matrix(buf), [[1, -2], [3, 4]])


def test_read_trace_groups_columns(tmp_path):
    f = tmp_path / "t.csv"
    f.write_text("x,w,column\n1,2,0\n3,4,0\n5,6,1\n7,8,1\n")
    X, W = read_trace(f)
    assert X.tolist() == [[1, 3], [5, 7]]
    assert W.tolist() == [[2, 4], [6, 8]]
    f.write_text("x,w\n1,300\n")
    with pytest.raises(InputValidationError):
        read_trace(f)


@pytest.mark.parametrize("body", ["x,w\n1,a\n", "x,w\n1.5,2\n", "x,w\n1, \n"])
def test_read_trace_rejects_non_integer_values(tmp_path, body):
    f = tmp_path / "t.csv"
    f.write_text(body)
    with pytest.raises(InputValidationError):
        read_trace(f)


def test_read_json_errors(tmp_path):
    f = tmp_path / "c.json"
    f.write_text("{not json")
    with pytest.raises(ConfigError):
        read_json(f)
    with pytest.raises(ConfigError):
        read_json(tmp_path / "missing.json")


def test_write_table_csv_embeds_config(tmp_path):
    df = pd.DataFrame({"N": [64, 256], "rmse_norm": [0.04, 0.01]})
    path = write_table(df, tmp_path / "out.csv", {"mode": "dscim1", "b": 1}, "csv", {"command": "sweep"})
    text = path.read_text()
    assert text.splitlines()[0] == '# config: {"b": 1, "mode": "dscim1"}'
    back, config = read_table(path)
    pd.testing.assert_frame_equal(back, df)
    assert config == {"b": 1, "mode": "dscim1"}
    meta = json.loads((tmp_path / "out.csv.meta.json").read_text())
    assert meta["command"] == "sweep" and "created_at" in meta
    assert "created_at" not in text


def test_write_table_json_and_xlsx(tmp_path):
    df = pd.DataFrame({"a": [1, 2]})
    body = json.loads(write_table(df, tmp_path / "o.json", {"x": 1}, "json").read_text())
    assert body == {"config": {"x": 1}, "rows": [{"a": 1}, {"a": 2}]}
    sheets = pd.read_excel(BytesIO(table_to_xlsx_bytes(df, {"x": 1})), sheet_name=None, engine="openpyxl")
    assert set(sheets) == {"resultados", "config"}
    with pytest.raises(ConfigError):
        write_table(df, tmp_path / "o.bin", {}, "parquet")


def test_write_json_is_stable(tmp_path):
    p1 = write_json({"b": 1, "a": [1, 2]}, tmp_path / "1.json")
    p2 = write_json({"a": [1, 2], "b": 1}, tmp_path / "2.json")
    assert p1.read_text() == p2.read_text()
