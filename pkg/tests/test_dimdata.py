import json

import pytest
from hypothesis import given

from ghostslopes.dimdata import (
    ComponentError,
    DimensionRow,
    DimensionTable,
    MonotonicityError,
    NegativeNewDimension,
    ProgressionGapError,
    RhobarDescriptor,
    SchemaError,
    TailNotAffine,
    extend_table,
    ingest_family,
    ingest_table,
)
from ghostslopes.padic import Prime
from strategies import tables


def _table(rows, p=5, b=3, N=3):
    return {"label": "t", "p": p, "N": N, "b": b, "twist_index": 0, "rows": rows}


def test_table1_rows(table1):
    got = [(r.k, r.d, r.d_p, r.d_p_new) for r in table1.rows]
    assert got == [(3, 0, 2, 2), (7, 1, 4, 2), (11, 2, 6, 2), (15, 2, 8, 4)]
    assert table1.b == 3 and table1.p == 5 and table1.k_max == 15
    assert table1.first_extrapolated is None


@pytest.mark.parametrize(
    "rows, error",
    [
        ([], ProgressionGapError),
        ([[3, 0, 2], [7, 2, 3]], NegativeNewDimension),
        ([[3, 1, 2], [7, 0, 4]], MonotonicityError),
        ([[3, 0, 2], [11, 2, 6]], ProgressionGapError),
        ([[7, 1, 4]], ProgressionGapError),
        ([[3, 0, 2], [6, 1, 4]], ComponentError),
        ([[3, 0]], SchemaError),
        ([[3, 0, "2"]], SchemaError),
    ],
)
def test_validation_errors(rows, error):
    with pytest.raises(error):
        ingest_table(_table(rows))


def test_descriptor_errors():
    with pytest.raises(SchemaError):
        ingest_table(_table([[3, 0, 2]], N=10))
    with pytest.raises(SchemaError):
        ingest_table(_table([[3, 0, 2]], b=6))
    with pytest.raises(SchemaError):
        ingest_table({"p": 5, "N": 3, "rows": []})
    with pytest.raises(SchemaError):
        ingest_table("[1, 2]")
    with pytest.raises(SchemaError):
        ingest_table("{not json")
    with pytest.raises(SchemaError):
        ingest_table(_table([[5, 0, 2]], p=4, b=5))


def test_odd_new_dimension_is_valid():
    # d_p - 2d = 3 - 2 = 1: no zero comes from this row, but it is not an error
    t = ingest_table(_table([[3, 0, 2], [7, 1, 3]]))
    assert t.row(7).d_p_new == 1


def test_b_equal_p_starts_at_p():
    t = ingest_table(_table([[5, 0, 2], [9, 1, 4]], b=5))
    assert t.rows[0].k == 5


@given(tables())
def test_round_trip(t):
    assert ingest_table(t.dumps()) == t
    assert ingest_table(json.loads(t.dumps())) == t


def test_round_trip_keeps_extrapolated_flag():
    t = ingest_table(_table([[3, 0, 2], [7, 1, 4], [11, 2, 6], [15, 3, 8], [19, 4, 10], [23, 5, 12]]))
    ext = extend_table(t, 35, 4)
    assert ingest_table(ext.dumps()) == ext
    assert ingest_table(ext.dumps()).first_extrapolated == 27


def test_extend_affine_tail():
    rows = [[3, 0, 2], [7, 1, 4], [11, 2, 6], [15, 2, 8], [19, 3, 10], [23, 4, 12], [27, 5, 14]]
    t = ingest_table(_table(rows))
    ext = extend_table(t, 40, fit_window=3)
    assert ext.rows[: len(rows)] == t.rows
    new = [(r.k, r.d, r.d_p, r.extrapolated) for r in ext.rows[len(rows):]]
    # d = (k - 7)/4, d_p = (k + 1)/2 on the window
    assert new == [(31, 6, 16, True), (35, 7, 18, True), (39, 8, 20, True)]
    assert ext.first_extrapolated == 31


def test_extend_constant_tail():
    rows = [[3, 0, 2], [7, 1, 4], [11, 2, 6], [15, 2, 6], [19, 2, 6], [23, 2, 6]]
    ext = extend_table(ingest_table(_table(rows)), 35, fit_window=4)
    assert [(r.d, r.d_p) for r in ext.rows[6:]] == [(2, 6), (2, 6), (2, 6)]


def test_extend_rejects_non_affine_tail():
    rows = [[3, 0, 2], [7, 0, 2], [11, 0, 2], [15, 1, 4], [19, 2, 6], [23, 2, 6]]
    with pytest.raises(TailNotAffine):
        extend_table(ingest_table(_table(rows)), 40, fit_window=4)


def test_extend_preconditions(table1):
    with pytest.raises(ValueError):
        extend_table(table1, 40, fit_window=3)
    with pytest.raises(ValueError):
        extend_table(table1, 40, fit_window=2)


def test_extend_rejects_non_integral_continuation():
    # d goes up by 1 every two steps in the window only if the window is long enough
    rows = [[3, 0, 2], [7, 0, 2], [11, 1, 4], [15, 1, 4], [19, 2, 6], [23, 2, 6]]
    with pytest.raises(TailNotAffine):
        extend_table(ingest_table(_table(rows)), 40, fit_window=3)


@given(tables(max_rows=10))
def test_extension_never_modifies_supplied_rows(t):
    if len(t.rows) < 5:
        return
    try:
        ext = extend_table(t, t.k_max + 5 * (t.p - 1), fit_window=3)
    except (TailNotAffine, ValueError):
        return
    assert ext.rows[: len(t.rows)] == t.rows
    for r in ext.rows:
        assert r.d_p_new >= 0 and r.d_p_new + 2 * r.d == r.d_p


def test_family():
    fam = {
        "label": "fam", "p": 5, "N": 1,
        "tables": [
            {"twist_index": j, "b": b, "rows": [[b, 0, 0]]}
            for j, b in enumerate([2, 4, 2, 4])
        ],
    }
    out = ingest_family(fam)
    assert sorted(out) == [0, 1, 2, 3]
    assert out[1].b == 4 and out[1].descriptor.N == 1
    fam["tables"].pop()
    with pytest.raises(SchemaError):
        ingest_family(fam)


def test_twist_index_reduced_mod_p_minus_1():
    desc = RhobarDescriptor("x", Prime(5), 1, 2, twist_index=6)
    assert desc.twist_index == 2


def test_row_lookup(table1):
    assert table1.d(11) == 2 and table1.d_p(15) == 8
    with pytest.raises(KeyError):
        table1.row(5)
    assert DimensionRow(3, 1, 5).d_p_new == 3
    with pytest.raises(ProgressionGapError):
        DimensionTable(table1.descriptor, ())
