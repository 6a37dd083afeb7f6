import numpy as np
import pytest

from dscim_app.core.errors import RangeError, RowIndexError
from dscim_app.core.sng import (
    RegionMode, axis_bit, axis_table, region_arrays, region_of_row, row_product_bit, shift_value,
)


def test_shift_value():
    v = shift_value(200, 2)
    assert (v.raw, v.shifted, v.k) == (200, 50, 2)
    assert shift_value(255, 3).shifted == 31
    with pytest.raises(RangeError):
        shift_value(256, 1)
    with pytest.raises(RangeError):
        shift_value(10, 4)


def test_region_of_row():
    r = region_of_row(5, 2)
    assert (r.r_a, r.r_w) == (1, 1)
    r = region_of_row(6, 2)
    assert (r.r_a, r.r_w) == (2, 1)
    with pytest.raises(RowIndexError):
        region_of_row(16, 2)
    with pytest.raises(IndexError):
        region_of_row(-1, 1)


def test_region_arrays_repeat_per_group():
    r_a, r_w = region_arrays(32, 2)
    assert r_a[:16].tolist() == [0, 1, 2, 3] * 4
    assert r_w[:4].tolist() == [0, 0, 0, 0]
    np.testing.assert_array_equal(r_a[:16], r_a[16:])


def test_axis_bit_xor_comparator():
    v = shift_value(12, 2)  # shifted = 3
    assert axis_bit(v, 1, 0x41) == 1   # 0x41 ^ 0x40 = 1 < 3
    assert axis_bit(v, 1, 0x01) == 0   # região 0, não 1
    assert axis_bit(v, 0, 0x02) == 1


def test_axis_bit_k1_region_boundaries():
    v = shift_value(6, 1)  # shifted = 3
    assert axis_bit(v, 1, 129) == 1   # 129 ^ 128 = 1 < 3
    assert axis_bit(v, 1, 200) == 0   # 200 ^ 128 = 72


def test_k0_exhaustive_count_is_the_plain_product():
    a_s, w_s = shift_value(200, 0), shift_value(100, 0)
    region = region_of_row(0, 0)
    hits = sum(row_product_bit(a_s, w_s, region, ra, rw) for ra in range(256) for rw in range(256))
    assert hits == 200 * 100 == 20000


def test_row_product_bit_requires_matching_shift():
    with pytest.raises(RangeError):
        row_product_bit(shift_value(10, 1), shift_value(10, 2), region_of_row(0, 1), 0, 0)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_rows_of_a_group_never_overlap(k, rng):
    G = 4 ** k
    for _ in range(100):
        a_s = rng.integers(0, 256, G) >> k
        w_s = rng.integers(0, 256, G) >> k
        a_s[0], w_s[0] = 255 >> k, 255 >> k
        r_a, r_w = region_arrays(G, k)
        hits = np.einsum("ah,bh->ab", axis_table(a_s, r_a, k).astype(np.int64),
                         axis_table(w_s, r_w, k).astype(np.int64))
        assert hits.max() <= 1
        assert hits.sum() == int(np.dot(a_s, w_s))


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_axis_area_equals_shifted_value(k):
    vals = np.arange(256) >> k
    r_a, _ = region_arrays(256, k)
    tab = axis_table(vals, r_a, k)
    np.testing.assert_array_equal(tab.sum(axis=0), vals)


def test_reflect_mode_matches_region_layout():
    vals = np.arange(0, 256, 2) >> 1
    regions = np.arange(vals.size) % 2
    tab = axis_table(vals, regions, 1, RegionMode.REFLECT)
    np.testing.assert_array_equal(tab.sum(axis=0), vals)
    # r=1 ocupa só a metade de cima
    assert not tab[:128, regions == 1].any()
    assert not tab[128:, regions == 0].any()

    v = shift_value(100, 1)  # 50
    assert axis_bit(v, 1, 255, RegionMode.REFLECT) == 1
    assert axis_bit(v, 1, 205, RegionMode.REFLECT) == 0
    assert axis_bit(v, 1, 206, RegionMode.REFLECT) == 1


def test_reflect_only_for_k1():
    with pytest.raises(RangeError):
        axis_table(np.array([3]), np.array([0]), 2, RegionMode.REFLECT)
    with pytest.raises(RangeError):
        axis_bit(shift_value(8, 2), 0, 0, RegionMode.REFLECT)
