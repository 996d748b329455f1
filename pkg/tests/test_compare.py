from dataclasses import replace

import pytest

from fermatsieve import fixtures
from fermatsieve.compare import (
    bound_window_scan,
    exceptional_consistency,
    jacobian_curve,
    parity_agreement,
    parity_check,
    surviving_pairs,
    table3_row,
)
from fermatsieve.frey import Triple
from fermatsieve.intkernel import ArithmeticInputError
from fermatsieve.kraus import tbar

TRIPLES = {lv: Triple(*abc) for lv, abc in fixtures.TRIPLES.items()}


def test_jacobian_curve():
    t = TRIPLES[115]
    assert jacobian_curve(t).a6 == -432 * t.product**2


def test_parity_domain():
    with pytest.raises(ArithmeticInputError):
        parity_check(TRIPLES[115], 11)
    with pytest.raises(ArithmeticInputError):
        parity_check(TRIPLES[185], 37)


def test_parity_small_bound():
    agree, total, bad = parity_agreement(TRIPLES[935], 200)
    assert agree == total and not bad and total > 0


@pytest.mark.parametrize("level", fixtures.LEVELS)
def test_table3_isogeny_and_traces_agree(level):
    t = TRIPLES[level]
    fast = table3_row(t, 1500, 1500)
    exact = table3_row(t, 1500, 1500, method="traces")
    assert replace(exact, method="isogeny") == fast


def test_table3_recomputed_reference():
    for level, want in fixtures.TABLE3_COMPUTED.items():
        row = table3_row(TRIPLES[level], 600, 600)
        assert row.p0 == ()
        assert row.p1 == tuple(p for p in want["p1"] if p <= 600)
        assert row.flagged == want["flagged"]


def test_t9_inside_t3_on_window():
    t = TRIPLES[295]
    for p in (37, 73, 163, 181, 199, 307):
        assert tbar(t, 9, p) <= tbar(t, 3, p)


def test_window_scan():
    assert bound_window_scan(TRIPLES[329], 100, 200) == [109]
    with pytest.raises(ArithmeticInputError):
        bound_window_scan(TRIPLES[329], 200, 100)


def test_parallel_matches_serial():
    t = TRIPLES[185]
    assert table3_row(t, 800, 800, workers=2) == table3_row(t, 800, 800)


@pytest.mark.data
def test_surviving_pairs_consistent(level_classes):
    t = TRIPLES[935]
    pairs = surviving_pairs(t, level_classes(935), 71, 37)
    assert len(pairs) == 1
    f, lam = pairs[0]
    res = exceptional_consistency(t, f, lam, 200)
    assert res["consistent"] and res["checked"] > 0
