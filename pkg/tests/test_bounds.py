import pytest
from hypothesis import given
from hypothesis import strategies as st

from codekit.bounds import (
    bound_report,
    cm_locality_bound,
    cm_terms,
    cm_verdict,
    griesmer_k_upper,
    griesmer_min_length,
    griesmer_optimal,
    sphere_packing_distance_optimal,
)
from codekit.errors import ParameterError

qs = st.sampled_from([2, 3, 4, 5, 7, 8, 9])


def test_griesmer_examples():
    assert griesmer_min_length(5, 12, 3) == 20
    assert griesmer_min_length(5, 13, 3) == 22
    assert griesmer_optimal(21, 5, 12, 3)
    assert griesmer_k_upper(18, 12, 3) == 3
    assert griesmer_k_upper(46, 36, 4) == 2
    assert griesmer_k_upper(49, 36, 4) == 4


def test_sphere_packing_examples():
    assert sphere_packing_distance_optimal(22, 15, 4, 2)
    assert sphere_packing_distance_optimal(86, 77, 4, 2)
    # a [7, 4, 4] binary code would need radius-1 balls, which the Hamming code already fills
    assert not sphere_packing_distance_optimal(7, 4, 3, 2)


def test_cm_examples():
    assert cm_locality_bound(21, 12, 3, 2) == 5
    rep = bound_report(21, 5, 12, 3, 2)
    assert (rep.cm_upper, rep.cm_verdict) == (5, "optimal")
    terms = cm_terms(52, 36, 4, 2)
    assert terms[:2] == [(1, 4, 6), (2, 2, 6)]
    rep = bound_report(52, 5, 36, 4, 2)
    assert (rep.cm_upper, rep.cm_verdict) == (6, "almost-optimal")
    assert cm_verdict(3, 6) == "neither"


def test_bad_arguments():
    with pytest.raises(ParameterError):
        griesmer_min_length(0, 3, 2)
    with pytest.raises(ParameterError):
        cm_terms(2, 1, 2, 2)
    with pytest.raises(ParameterError):
        sphere_packing_distance_optimal(5, 2, 0, 2)


@given(st.integers(1, 8), st.integers(1, 60), qs)
def test_griesmer_upper_is_inverse(k, d, q):
    n = griesmer_min_length(k, d, q)
    assert griesmer_k_upper(n, d, q) >= k
    assert griesmer_k_upper(n - 1, d, q) < k


@given(st.integers(2, 200), st.integers(1, 60), qs)
def test_griesmer_upper_monotone(n, d, q):
    assert griesmer_k_upper(n, d, q) <= griesmer_k_upper(n + 1, d, q)
    assert griesmer_k_upper(n, d + 1, q) <= griesmer_k_upper(n, d, q)


@given(st.integers(4, 200), st.integers(1, 40), qs, st.integers(1, 3))
def test_cm_dominated_by_first_term(n, d, q, r):
    if n <= r + 1:
        return
    bound = cm_locality_bound(n, d, q, r)
    rest = n - (r + 1)
    first = r + (griesmer_k_upper(rest, d, q) if rest >= d else 0)
    assert bound <= first
    assert bound == min(t for _, _, t in cm_terms(n, d, q, r))
