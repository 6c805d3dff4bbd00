import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loopcc.combinatorics import (
    Composition2,
    LabelledShape,
    Nation,
    SignedShape,
    canonical_labelling,
    count_series,
    enum_compositions2,
    enum_labelled,
    enum_multisets,
    enum_signed,
    perm_action,
    shape_of,
)
from loopcc.errors import InvalidRank, SizeMismatch


def C(t, b=0):
    return Composition2(t, b)


def test_compositions_degree_one():
    assert enum_compositions2(1) == [C(1)]


def test_compositions_degree_three():
    assert enum_compositions2(3) == [C(3), C(2, 1), C(1, 2)]


def test_compositions_count_equals_degree():
    assert len(enum_compositions2(4)) == 4


def test_compositions_invalid():
    with pytest.raises(InvalidRank):
        enum_compositions2(0)


def test_multisets_degree_two():
    expected = [
        SignedShape.make([C(1), C(1)], []).plus,
        SignedShape.make([C(2)], []).plus,
        SignedShape.make([C(1, 1)], []).plus,
    ]
    assert enum_multisets(2) == expected


def test_multisets_degree_three_has_six():
    assert len(enum_multisets(3)) == 6


def test_multisets_degree_zero():
    assert enum_multisets(0) == [()]


def test_signed_degree_one():
    assert enum_signed(1) == [
        SignedShape.make([C(1)], []),
        SignedShape.make([], [C(1)]),
    ]


def test_signed_degree_two_has_seven():
    assert len(enum_signed(2)) == 7


def test_signed_degree_three_matches_reference_list():
    # All eighteen listed members of the rank-3 signed index set.
    box, two, oneone = C(1), C(2), C(1, 1)
    three, twoone, onetwo = C(3), C(2, 1), C(1, 2)
    j30 = [[box] * 3, [box, two], [box, oneone], [three], [twoone], [onetwo]]
    j21 = [([box, box], [box]), ([two], [box]), ([oneone], [box])]
    j12 = [([box], [box, box]), ([box], [two]), ([box], [oneone])]
    expected = (
        [SignedShape.make(p, []) for p in j30]
        + [SignedShape.make(p, m) for p, m in j21]
        + [SignedShape.make(p, m) for p, m in j12]
        + [SignedShape.make([], p) for p in j30]
    )
    assert set(enum_signed(3)) == set(expected)
    assert len(enum_signed(3)) == 18


def test_count_series_unsigned():
    unsigned, _ = count_series(4)
    assert unsigned == [1, 1, 3, 6, 13]


def test_count_series_signed():
    _, signed = count_series(5)
    assert signed == [1, 2, 7, 18, 47, 110]


def test_count_series_zero():
    assert count_series(0) == ([1], [1])


@pytest.mark.parametrize("n", range(0, 11))
def test_enumeration_matches_series(n):
    # Oracle equivalence: direct enumeration against the generating function.
    unsigned, signed = count_series(n)
    assert len(enum_multisets(n)) == unsigned[n]
    assert len(enum_signed(n)) == signed[n]


def test_canonical_labelling_rank_eleven():
    shape = SignedShape.make(
        [C(2), C(2), C(1, 1)], [C(1), C(1), C(1), C(2)]
    )
    lam = canonical_labelling(shape)
    assert lam.plus == (
        Nation.make({1, 2}),
        Nation.make({3, 4}),
        Nation.make({5}, {6}),
    )
    assert lam.minus == (
        Nation.make({7}),
        Nation.make({8}),
        Nation.make({9}),
        Nation.make({10, 11}),
    )


def test_canonical_labelling_single_box():
    lam = canonical_labelling(SignedShape.make([C(1)], []))
    assert lam.plus == (Nation.make({1}),)
    assert lam.minus == ()


def test_canonical_labelling_oneone_fill_order():
    # Forced by the fill order: 1 into the top county, 2 into the bottom.
    lam = canonical_labelling(SignedShape.make([C(1, 1)], []))
    assert lam.plus == (Nation.make({1}, {2}),)


def test_canonical_labelling_reads_in_order():
    for shape in enum_signed(5):
        lam = canonical_labelling(shape)
        seen = []
        for nation in lam.nations:
            seen.extend(sorted(nation.top))
            seen.extend(sorted(nation.bottom))
        assert seen == list(range(1, 6))


def test_shape_of_round_trip():
    for shape in enum_signed(4):
        assert shape_of(canonical_labelling(shape)) == shape


def test_shape_of_simple():
    lam = LabelledShape.make([Nation.make({1, 2}, {3})], [])
    assert shape_of(lam) == SignedShape.make([C(2, 1)], [])


def test_shape_of_two_singletons():
    lam = LabelledShape.make([Nation.make({1})], [Nation.make({2})])
    assert shape_of(lam) == SignedShape.make([C(1)], [C(1)])


def test_perm_action_identity():
    lam = LabelledShape.make([Nation.make({1, 2}, {3})], [])
    assert perm_action([1, 2, 3], lam) == lam


def test_perm_action_swap():
    lam = LabelledShape.make([Nation.make({1, 2}, {3})], [])
    moved = perm_action({1: 1, 2: 3, 3: 2}, lam)
    assert moved == LabelledShape.make([Nation.make({1, 3}, {2})], [])


def test_perm_action_rejects_non_permutation():
    lam = LabelledShape.make([Nation.make({1, 2})], [])
    with pytest.raises(SizeMismatch):
        perm_action([1, 1], lam)


@settings(max_examples=30)
@given(st.randoms(use_true_random=False))
def test_perm_action_is_an_action(rng):
    shapes = enum_signed(4)
    lam = canonical_labelling(shapes[rng.randrange(len(shapes))])
    v = list(range(1, 5))
    w = list(range(1, 5))
    rng.shuffle(v)
    rng.shuffle(w)
    vw = [v[w[i] - 1] for i in range(4)]  # (v o w)(i) = v(w(i))
    assert perm_action(v, perm_action(w, lam)) == perm_action(vw, lam)
    assert shape_of(perm_action(w, lam)) == shape_of(lam)


def test_labelled_rank_two_is_the_ten_reference_elements():
    got = set(enum_labelled(2))
    expected = set()
    for nations in (
        [Nation.make({1, 2})],
        [Nation.make({1}, {2})],
        [Nation.make({2}, {1})],
    ):
        expected.add(LabelledShape.make(nations, []))
        expected.add(LabelledShape.make([], nations))
    both = [Nation.make({1}), Nation.make({2})]
    expected.add(LabelledShape.make(both, []))
    expected.add(LabelledShape.make([], both))
    expected.add(LabelledShape.make([both[0]], [both[1]]))
    expected.add(LabelledShape.make([both[1]], [both[0]]))
    assert got == expected
    assert len(got) == 10


def test_labelled_rank_one():
    assert set(enum_labelled(1)) == {
        LabelledShape.make([Nation.make({1})], []),
        LabelledShape.make([], [Nation.make({1})]),
    }


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_labelled_shapes_cover_signed_shapes(n):
    labelled = enum_labelled(n)
    assert {shape_of(lam) for lam in labelled} == set(enum_signed(n))
    # and the canonical labelling witnesses membership
    for shape in enum_signed(n):
        assert canonical_labelling(shape) in set(labelled)


def test_shape_json_round_trip():
    for shape in enum_signed(3):
        assert SignedShape.from_json(shape.to_json()) == shape
    for lam in enum_labelled(3)[:10]:
        assert LabelledShape.from_json(lam.to_json()) == lam
