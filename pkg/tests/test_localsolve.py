import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermatsieve import fixtures
from fermatsieve.frey import Triple, TripleError
from fermatsieve.intkernel import ArithmeticInputError
from fermatsieve.localsolve import (
    EMPTY,
    SOLVABLE,
    local_points_everywhere_n9,
    local_solvable,
    primitive_points,
    primitive_points_bruteforce,
    reduced_model,
    smoothness_witness,
)

TRIPLES = {lv: Triple(*abc) for lv, abc in fixtures.TRIPLES.items()}


@settings(max_examples=40, deadline=None)
@given(
    st.tuples(st.integers(-60, 60), st.integers(-60, 60), st.integers(-60, 60)),
    st.sampled_from([2, 3, 5, 7]),
    st.sampled_from([(2, 1), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1)]),
)
def test_tree_search_matches_bruteforce(abc, n, pk):
    try:
        t = Triple(*abc)
    except TripleError:
        return
    p, k = pk
    assert primitive_points(t, n, p, k) == primitive_points_bruteforce(t, n, p, k)


def test_empty_is_monotone():
    t = Triple(3, 1, 25)
    for k in range(1, 4):
        if not primitive_points(t, 5, 5, k):
            assert all(not primitive_points(t, 5, 5, j + 1) for j in range(k, 4))
    t = TRIPLES[295]
    v = local_solvable(t, 5, 5)
    assert v.outcome == EMPTY
    m = Triple(*v.model)
    assert primitive_points(m, 5, 5, v.k) == []
    assert all(not primitive_points(m, 5, 5, j) for j in range(v.k, v.k + 1))


def test_reduced_model():
    assert reduced_model(TRIPLES[295], 5, 5) == Triple(25, 16, 59**7)
    assert reduced_model(TRIPLES[185], 19, 19) == TRIPLES[185]
    assert reduced_model(Triple(5**12, 1, 2), 5, 5) == Triple(25, 1, 2)


def test_solvable_carries_valid_witness():
    t = Triple(1, 1, -2)
    v = local_solvable(t, 3, 7)
    assert v.outcome == SOLVABLE
    w = smoothness_witness(t, 3, 7, v.k, v.point)
    assert w == v.witness and v.k > 2 * w["valuation"]


@pytest.mark.parametrize("level,l,p", [(115, 5, 11), (185, 19, 19), (295, 5, 5), (935, 5, 5)])
def test_listed_obstructions(level, l, p):
    assert local_solvable(TRIPLES[level], l, p).outcome == EMPTY


def test_no_obstruction_without_reduction_is_unknown_or_empty():
    v = local_solvable(Triple(1, 1, 5**5), 5, 5, k_max=2, reduce_coefficients=False)
    assert v.outcome in ("Unknown", EMPTY)


def test_bad_input():
    with pytest.raises(ArithmeticInputError):
        local_solvable(TRIPLES[115], 9, 4)
    with pytest.raises(ArithmeticInputError):
        local_solvable(TRIPLES[115], 9, 5, k_max=0)


def test_n9_everywhere_small_triple():
    verdicts = local_points_everywhere_n9(Triple(1, 1, -2), 40)
    assert all(v.outcome == SOLVABLE for v in verdicts)
    assert [v.p for v in verdicts][:4] == [2, 3, 5, 7]
