import math

import pytest
from hypothesis import given

from ghostslopes.dimdata import DimensionTable, ingest_table
from ghostslopes.ghost import (
    GhostZero,
    TableTooShort,
    build_complete_ghost,
    build_ghost,
    ghost_from_json,
    multiplicity_profile,
)
from strategies import tables


def test_table1_coefficients(table1):
    g = build_ghost(table1, 3)
    assert g.coefficient(1).zeros == (GhostZero(3, 1),)
    assert g.coefficient(2).zeros == (GhostZero(7, 1),)
    assert {GhostZero(11, 1), GhostZero(15, 1)} <= set(g.coefficient(3).zeros)
    assert [c.complete for c in g.coefficients] == [True, True, False]
    assert g.n_complete == 2


def test_table1_higher_coefficients(table1):
    g = build_ghost(table1, 6)
    # k = 15 has d = 2, d_p_new = 4: zeros in g_3, g_4, g_5 with multiplicities 1, 2, 1
    assert [g.coefficient(i).multiplicity_at(15) for i in range(1, 7)] == [0, 0, 1, 2, 1, 0]


def test_complete_only(table1):
    build_ghost(table1, 2, complete_only=True)
    with pytest.raises(TableTooShort):
        build_ghost(table1, 3, complete_only=True)
    assert len(build_complete_ghost(table1)) == 2


def test_rejects_bad_n(table1):
    with pytest.raises(ValueError):
        build_ghost(table1, 0)


def test_profiles(table1):
    assert multiplicity_profile(table1, 15) == [0, 0, 1, 2, 1]
    assert multiplicity_profile(table1, 3) == [1]
    with pytest.raises(KeyError):
        multiplicity_profile(table1, 4)


def test_profile_without_new_forms():
    t = ingest_table({"p": 5, "N": 1, "b": 2, "rows": [[2, 0, 0], [6, 1, 2], [10, 3, 6]]})
    assert multiplicity_profile(t, 2) == []
    assert multiplicity_profile(t, 10) == [0, 0]  # d = 3, d_p_new = 0
    g = build_ghost(t, 3)
    assert all(c.multiplicity_at(2) == 0 and c.multiplicity_at(10) == 0 for c in g.coefficients)


@given(tables())
def test_profile_shape(t):
    for r in t.rows:
        prof = multiplicity_profile(t, r.k)
        assert prof[: r.d] == [0] * min(r.d, len(prof))
        block = [m for m in prof if m]
        assert block == block[::-1]
        assert len(block) == max(r.d_p_new - 1, 0)
        peak = math.ceil((r.d_p_new - 1) / 2) if r.d_p_new >= 2 else 0
        assert max(prof, default=0) == peak
        # steps of one up and down
        if block:
            assert block[0] == 1 and block[-1] == 1
            assert all(abs(a - b) <= 1 for a, b in zip(block, block[1:]))


@given(tables())
def test_build_ghost_agrees_with_profiles(t):
    n = max(r.d + r.d_p_new for r in t.rows) + 1
    g = build_ghost(t, n)
    for r in t.rows:
        prof = multiplicity_profile(t, r.k)
        for i in range(1, n + 1):
            want = prof[i - 1] if i <= len(prof) else 0
            assert g.coefficient(i).multiplicity_at(r.k) == want
    for c in g.coefficients:
        for z in c.zeros:
            r = t.row(z.k)
            assert r.d < c.index < r.d + r.d_p_new
            assert z.multiplicity == min(c.index - r.d, r.d + r.d_p_new - c.index)


@given(tables(max_rows=12))
def test_complete_coefficients_are_stable(t):
    n = t.rows[-1].d + 3
    full = build_ghost(t, n)
    for cut in range(1, len(t.rows)):
        prefix = DimensionTable(t.descriptor, t.rows[:cut])
        g = build_ghost(prefix, n)
        for c_prefix, c_full in zip(g.coefficients, full.coefficients):
            if c_prefix.complete:
                assert c_prefix.zeros == c_full.zeros


@given(tables())
def test_json_round_trip(t):
    g = build_ghost(t, 5)
    assert ghost_from_json(g.to_json()) == g


def test_refuses_p2():
    t = ingest_table({"p": 2, "N": 1, "b": 2, "rows": [[2, 0, 2]]})
    with pytest.raises(ValueError):
        build_ghost(t, 1)
