import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from codekit.code import (
    LinearCode,
    WeightDistribution,
    build_augmented_code,
    defining_set,
    expected_length,
    format_generator,
    is_self_orthogonal,
    krawtchouk_column,
    macwilliams_dual,
    min_distance_pairwise,
    parse_enumerator,
    parse_generator,
    pless_low_dual_weights,
    rank_over,
    read_generator,
    row_reduce,
    weight_distribution_brute,
    weight_divisor,
    write_generator,
)
from codekit.errors import BudgetExceeded, ParameterError, RankDeficiency
from codekit.field import LabelField, build_tower


@st.composite
def codes(draw, max_n=8, max_k=3):
    q = draw(st.sampled_from([2, 3, 4, 5]))
    k = draw(st.integers(1, max_k))
    n = draw(st.integers(k, max_n))
    rows = draw(
        st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=k, max_size=k)
    )
    return LinearCode(q, np.array(rows))


def naive_distribution(code: LinearCode) -> list[int]:
    counts = [0] * (code.n + 1)
    for msg in itertools.product(range(code.q), repeat=code.k):
        w = code.encode(np.array(msg))
        counts[int(np.count_nonzero(w))] += 1
    return counts


def dual_generator(code: LinearCode) -> np.ndarray:
    """Basis of the dual from the reduced row echelon form (full-rank codes)."""
    lf = code.field
    R, piv = row_reduce(lf, code.generator)
    R = R[: len(piv)]
    free = [c for c in range(code.n) if c not in piv]
    H = np.zeros((len(free), code.n), dtype=np.int64)
    for i, f in enumerate(free):
        H[i, f] = 1
        for r, pc in enumerate(piv):
            H[i, pc] = lf.neg[R[r, f]]
    return H


@given(codes())
def test_enumeration_matches_naive(code):
    assert weight_distribution_brute(code).as_array() == naive_distribution(code)


@given(codes())
def test_frequencies_sum_to_q_k(code):
    assert weight_distribution_brute(code).total == code.q**code.k


@given(codes(max_n=7, max_k=2))
def test_macwilliams_matches_dual_code(code):
    if code.rank() != code.k or code.rank() == code.n:
        return
    wd = weight_distribution_brute(code)
    dual = LinearCode(code.q, dual_generator(code))
    dwd = weight_distribution_brute(dual)
    assert macwilliams_dual(wd, code.n, code.k, code.q) == dwd


@given(codes())
def test_macwilliams_involution(code):
    if code.rank() != code.k or code.k == code.n:
        return
    wd = weight_distribution_brute(code)
    dual = macwilliams_dual(wd, code.n, code.k, code.q)
    assert macwilliams_dual(dual, code.n, code.n - code.k, code.q) == wd


@given(codes(max_n=6, max_k=2))
def test_min_distance_pairwise(code):
    wd = weight_distribution_brute(code)
    if wd.nonzero_weights():
        assert min_distance_pairwise(code) == wd.min_distance()


@given(codes())
def test_self_orthogonal_is_g_gt_zero(code):
    lf = code.field
    G = code.generator
    gram = np.zeros((code.k, code.k), dtype=np.int64)
    for i in range(code.k):
        for j in range(code.k):
            acc = 0
            for a, b in zip(G[i], G[j]):
                acc = lf.add[acc, lf.mul[a, b]]
            gram[i, j] = acc
    assert is_self_orthogonal(code) == (not gram.any())


@given(st.integers(1, 30), st.sampled_from([2, 3, 4, 5, 7]), st.data())
def test_krawtchouk_matches_sum(n, q, data):
    from math import comb

    x = data.draw(st.integers(0, n))
    K = krawtchouk_column(n, q, x)
    for j in range(n + 1):
        ref = sum((-1) ** i * (q - 1) ** (j - i) * comb(x, i) * comb(n - x, j - i) for i in range(j + 1))
        assert K[j] == ref


def test_rank_and_row_reduce():
    lf = LabelField.canonical(3)
    # the label 2 is -1 in GF(3), so row 2 = -row 1
    M = np.array([[1, 2, 0], [2, 1, 0], [0, 0, 1]])
    assert rank_over(lf, M) == 2
    assert rank_over(lf, np.array([[1, 1], [1, 1]])) == 1


def test_ternary_three_weight_code():
    T = build_tower(3, 1, 6, 2, 3)
    D = defining_set(T)
    assert D[-1] == 0 and len(D) == expected_length(3, 6, 3) == 225
    code = build_augmented_code(T, D)
    wd = weight_distribution_brute(code)
    assert (code.n, code.k, wd.min_distance()) == (225, 3, 141)
    assert wd.enumerator() == "1+16z^141+8z^168+2z^225"
    assert is_self_orthogonal(code)
    assert weight_divisor(wd) % 3 == 0
    dual = macwilliams_dual(wd, 225, 3, 3)
    assert dual.min_distance() == 2


def test_rank_deficient_tower():
    with pytest.raises(RankDeficiency):
        build_augmented_code(build_tower(2, 1, 4, 2, 1))


def test_enumeration_budget():
    code = LinearCode(3, np.ones((5, 4), dtype=np.int64))
    with pytest.raises(BudgetExceeded):
        weight_distribution_brute(code, max_enum_bits=7)


def test_threads_agree(monkeypatch):
    code = build_augmented_code(build_tower(3, 1, 6, 6, 2))
    one = weight_distribution_brute(code, threads=1)
    assert weight_distribution_brute(code, threads=4) == one
    monkeypatch.setenv("CODEKIT_THREADS", "0")
    with pytest.raises(ParameterError):
        weight_distribution_brute(code)


def test_enumerator_round_trip():
    wd = WeightDistribution(22, {0: 1, 8: 21, 10: 42, 12: 42, 14: 21, 22: 1})
    s = wd.enumerator()
    assert s == "1+21z^8+42z^10+42z^12+21z^14+z^22"
    assert parse_enumerator(s, 22) == wd


def test_weight_distribution_validation():
    with pytest.raises(ParameterError):
        WeightDistribution(3, {4: 1})
    with pytest.raises(ParameterError):
        macwilliams_dual(WeightDistribution(3, {0: 1, 3: 1}), 3, 1, 3)


def test_pless_matches_macwilliams_example():
    code = build_augmented_code(build_tower(3, 1, 4, 4, 2))
    wd = weight_distribution_brute(code)
    assert wd.enumerator() == "1+100z^12+120z^15+20z^18+2z^21"
    low = macwilliams_dual(wd, 21, 5, 3).as_array()[1:5]
    assert low == [0, 0, 20, 450]
    assert [int(x) for x in pless_low_dual_weights(wd, 21, 3, 4).as_tuple()] == low


def test_generator_file_round_trip(tmp_path):
    code = build_augmented_code(build_tower(2, 1, 6, 6, 2))
    path = tmp_path / "g.txt"
    write_generator(code, path)
    back = read_generator(path)
    assert back.q == code.q and np.array_equal(back.generator, code.generator)
    assert format_generator(back) == path.read_text()


@pytest.mark.parametrize(
    "text",
    ["", "3 2\n1 1\n", "3 2 1\n1\n", "3 2 1\n1 x\n", "3 2 1\n1 3\n", "6 2 1\n1 1\n"],
)
def test_bad_generator_files(text):
    with pytest.raises(ParameterError):
        parse_generator(text)
