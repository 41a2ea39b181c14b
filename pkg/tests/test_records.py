import json

import pytest
from hypothesis import given, strategies as st

from primerec import records
from primerec.pseudoprime_families import ResidueSet
from primerec.recursion import run


@pytest.fixture(scope="module")
def states():
    return run(3)


def test_pieces_round_trip(states):
    for state in states:
        text = records.dumps_pieces(state)
        pieces = records.loads_pieces(text)
        assert pieces == list(state.pieces_minus + state.pieces_plus)
        assert records.dumps_pieces(state) == text


@given(st.integers(2, 60).flatmap(lambda m: st.builds(
    ResidueSet.from_allowed, st.just(m), st.sets(st.integers(0, m - 1)),
    st.frozensets(st.integers(1, 100), max_size=3))))
def test_residue_set_round_trip(rs):
    rec = records.residue_set_record(rs)
    assert records.residue_set_from_record(json.loads(json.dumps(rec))) == rs
    listed = rec.get("excluded", rec.get("allowed"))
    assert len(listed) <= rs.modulus // 2 + 1


def test_table_rows_step0(states):
    rows = list(records.table_rows(states[0]))
    assert len(rows) == 8
    assert [r["value"] for r in rows] == [5, 11, 17, 23, 29, 7, 13, 19]
    assert all(r["is_prime"] == 1 and r["piece_index"] == 0 for r in rows)
    csv_text = records.table_csv(rows)
    assert csv_text.splitlines()[0] == ",".join(records.TABLE_COLUMNS)
    assert len(csv_text.splitlines()) == 9


def test_table_with_composites(states):
    rows = list(records.table_rows(states[1], include_composites=True))
    assert len(rows) == 21 + 29
    assert sum(r["is_prime"] for r in rows) == 15 + 18
    assert {r["piece_index"] for r in rows} == {0, 1}


def test_dump_json(states):
    doc = json.loads(records.dump_json(states[2]))
    assert doc["schema"] == 1
    assert doc["bounds"] == {"r_minus": 146, "r_plus": 104}
    assert len(doc["pieces"]) == 6
    assert len(doc["rows"]) == 76 + 54
