from itertools import combinations
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cwcodes.core import verify_code
from cwcodes.errors import InvalidInputError
from cwcodes.lex import KSubset, lex_less, rank
from cwcodes.seqconstruct import (
    FillSequence,
    build_m,
    check_lemma1,
    code_of,
    fill,
    fill_column,
    format_sequence,
    gen_x,
    gen_x_recursive,
    gen_y,
    is_special,
    move_column_front,
    parse_sequence,
    reorder,
    reorder_by_sort,
    row_supports,
)

from conftest import GOLDEN_Q5_ROWS, M5_ROWS, brute_min_distance


def column_scan_fill(rows, s):
    """Independent fill: walk each column with its own counter."""
    out = [list(r) for r in rows]
    for j in range(len(out[0])):
        t = 0
        for r in out:
            if r[j]:
                r[j] = s[t]
                t += 1
    return out


def test_build_m5():
    m = build_m(5)
    assert m.rows.tolist() == [list(r) for r in M5_ROWS]
    assert not m.filled
    assert not m.rows.flags.writeable


def test_build_m3():
    assert build_m(3).rows.tolist() == [[1, 1, 1]]


def test_fill_golden_q5():
    m = fill(build_m(5), (1, 2, 3, 3, 4, 1))
    assert m.rows.tolist() == [list(r) for r in GOLDEN_Q5_ROWS]
    c = code_of(m)
    assert (c.n, c.q, c.w, c.d, len(c)) == (5, 5, 3, 4, 10)
    assert verify_code(c)


def test_fill_m4():
    m = fill(build_m(4), (1, 2, 3))
    assert m.rows.tolist() == [[1, 1, 1, 0], [2, 2, 0, 1], [3, 0, 2, 2], [0, 3, 3, 3]]
    assert m.rows.tolist() == column_scan_fill(build_m(4).rows.tolist(), (1, 2, 3))
    assert code_of(m).d == 4 and len(code_of(m)) == 4


def test_fill_errors():
    with pytest.raises(InvalidInputError):
        fill(build_m(5), (1, 2, 3))
    with pytest.raises(InvalidInputError):
        fill(fill(build_m(4), (1, 2, 3)), (1, 2, 3))
    with pytest.raises(InvalidInputError):
        fill(build_m(4), (1, 0, 2))
    with pytest.raises(InvalidInputError):
        fill(build_m(4), gen_x(4))


def test_code_of_singleton_has_no_distance():
    c = code_of(fill(build_m(3), gen_y(3)))
    assert [u.symbols for u in c.words] == [(1, 1, 1)]
    assert c.d is None


@settings(max_examples=50)
@given(st.integers(3, 9).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(1, 6), min_size=comb(n - 1, 2), max_size=comb(n - 1, 2)))))
def test_fill_conservation(args):
    n, s = args
    base = build_m(n)
    m = fill(base, s, q=7)
    assert np.array_equal(m.rows != 0, base.rows != 0)
    assert m.rows.tolist() == column_scan_fill(base.rows.tolist(), s)


def test_fill_column_only_touches_one_column():
    rows = fill_column(build_m(5).rows, 2, (4, 3, 2, 1, 4, 3))
    assert rows[:, 1][rows[:, 1] != 0].tolist() == [4, 3, 2, 1, 4, 3]
    assert np.array_equal(np.delete(rows, 1, axis=1), np.delete(build_m(5).rows, 1, axis=1))


@pytest.mark.parametrize("q", range(3, 61))
def test_x_closed_form_equals_recursion(q):
    x = gen_x(q)
    assert list(x.entries) == gen_x_recursive(q)
    assert len(x) == comb(q - 1, 2)
    y = gen_y(q)
    assert len(y) == comb(q - 1, 2)
    assert all(1 <= v <= q - 1 for v in y)


def test_x_segment_by_hand():
    # q=6: segments of lengths 4,3,2,1, each shifted by 2 mod 5
    assert gen_x_recursive(6) == [0, 1, 2, 3, 2, 3, 4, 4, 0, 1]


def test_gen_y_rejects_small_q():
    with pytest.raises(InvalidInputError):
        gen_y(2)


def test_fill_sequence_validation():
    with pytest.raises(InvalidInputError):
        FillSequence(5, (1, 2, 3), "y")
    with pytest.raises(InvalidInputError):
        FillSequence(4, (0, 1, 2), "y")
    with pytest.raises(InvalidInputError):
        FillSequence(4, (0, 1, 3), "x")


def test_sequence_text_roundtrip():
    y = gen_y(5)
    assert format_sequence(y) == "1 2 3 3 4 1"
    assert format_sequence(y, compact=True) == "123341"
    assert parse_sequence("123341", 5).entries == y.entries
    assert parse_sequence("1 2 3 3 4 1", 5).entries == y.entries
    y12 = gen_y(12)
    assert parse_sequence(format_sequence(y12), 12).entries == y12.entries
    with pytest.raises(InvalidInputError):
        format_sequence(y12, compact=True)
    with pytest.raises(InvalidInputError):
        parse_sequence("1234", 12)


def test_is_special_examples():
    assert is_special(5, gen_y(5)) == (True, None)
    assert is_special(5, (1,) * 6) == (False, (1, 2))
    ok, _ = is_special(4, (1, 1, 2))
    assert not ok


@settings(max_examples=60)
@given(st.integers(4, 6).flatmap(
    lambda q: st.tuples(st.just(q), st.lists(st.integers(1, q - 1), min_size=comb(q - 1, 2), max_size=comb(q - 1, 2)))))
def test_is_special_agrees_with_brute_distance(args):
    q, s = args
    ok, pair = is_special(q, s)
    rows = fill(build_m(q), s, q=q).rows.tolist()
    assert ok == (brute_min_distance(rows) == 4)
    if not ok:
        i, j = pair
        d = sum(a != b for a, b in zip(rows[i - 1], rows[j - 1]))
        assert d < 4


@pytest.mark.parametrize("q", [3, 5, 10] + list(range(11, 21)))
def test_column1_values_distinct(q):
    assert check_lemma1(q) == (True, None)


def test_move_column_front():
    m = build_m(5)
    assert np.array_equal(move_column_front(m, 1), m.rows)
    assert move_column_front(m, 3)[0].tolist() == [1, 1, 1, 0, 0]
    m4 = move_column_front(build_m(4), 4)
    assert m4[:2].tolist() == [[0, 1, 1, 1], [1, 1, 1, 0]]
    with pytest.raises(InvalidInputError):
        move_column_front(m, 6)


def test_reorder_examples():
    m = build_m(5)
    assert np.array_equal(reorder(move_column_front(m, 1)), m.rows)
    r4 = reorder(move_column_front(build_m(4), 4))
    assert (r4[:, 0] != 0).tolist() == [True, True, True, False]
    with pytest.raises(InvalidInputError):
        reorder(np.zeros((4, 4), dtype=int))


def reorder_violations(n):
    bad = []
    for j in range(1, n + 1):
        mj = move_column_front(build_m(n), j)
        out = reorder(mj)
        if not np.array_equal(out, reorder_by_sort(mj)):
            bad.append((j, "sort"))
        head = comb(n - 1, 2)
        col = (out[:, 0] != 0).tolist()
        if col != [True] * head + [False] * (len(col) - head):
            bad.append((j, "column"))
        if sorted(map(tuple, out.tolist())) != sorted(map(tuple, mj.tolist())):
            bad.append((j, "multiset"))
        supports = row_supports(out)
        if any(not lex_less(a, b) for a, b in zip(supports, supports[1:])):
            bad.append((j, "order"))
    return bad


@pytest.mark.parametrize("n", range(3, 9))
def test_reorder_gives_lex_order(n):
    assert reorder_violations(n) == []


def test_reorder_m5_column2_against_support_sort():
    mj = move_column_front(build_m(5), 2)
    out = reorder(mj)
    keyed = sorted(mj.tolist(), key=lambda r: (r[0] == 0, rank(KSubset(5, tuple(i + 1 for i, v in enumerate(r) if v)))))
    assert out.tolist() == keyed


@pytest.mark.parametrize("q", range(3, 16))
def test_sequence_codes_have_distance_four(q):
    c = code_of(fill(build_m(q), gen_y(q)))
    assert len(c) == comb(q, 3)
    assert is_special(q, gen_y(q))[0]
    if q > 3:
        assert c.d == 4
        assert verify_code(c)


def test_small_sequence_codes_brute_force():
    for q in range(4, 9):
        rows = fill(build_m(q), gen_y(q)).rows.tolist()
        assert brute_min_distance(rows) == 4
        assert all(a != b for a, b in combinations(map(tuple, rows), 2))
