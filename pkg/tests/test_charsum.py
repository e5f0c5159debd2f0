import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from codekit.charsum import (
    CyclotomicInt,
    ExpSumDistribution,
    additive_character_sum,
    char_orthogonality_check,
    cyclic_correlation,
    cyclotomic_polynomial,
    cyclotomic_reduce,
    cyclotomic_value,
    delta_brute,
    delta_closed_distribution,
    delta_distribution_brute,
    delta_values,
    gauss_sum_closed,
    gauss_sum_numeric,
    gauss_sum_quadratic,
    gauss_sum_semiprimitive,
    gauss_sums_numeric,
    omega_brute,
    omega_closed_distribution,
    omega_distribution_brute,
    omega_values,
    semiprimitive_exponent,
)
from codekit.errors import NotInSubfield, ParameterError, UnsupportedCase
from codekit.field import build_tower

from helpers import SMALL_TOWERS


def test_cyclotomic_reduce():
    # 1 + zeta + zeta^2 = 0
    assert cyclotomic_reduce([1, 1, 1], 3) == 0
    assert cyclotomic_reduce([5, 2, 2], 3) == 3
    z = cyclotomic_reduce([1, 0, 0, 2, 0], 5)
    assert isinstance(z, CyclotomicInt) and not z.is_rational()
    with pytest.raises(ValueError):
        cyclotomic_reduce([1, 2], 3)


@given(st.lists(st.integers(-50, 50), min_size=5, max_size=5), st.lists(st.integers(-50, 50), min_size=5, max_size=5))
def test_cyclotomic_ring_matches_complex(a, b):
    zeta = cmath.exp(2j * math.pi / 5)

    def ev(z):
        return sum(c * zeta**j for j, c in enumerate(z.coeffs))

    x, y = CyclotomicInt.from_vector(a), CyclotomicInt.from_vector(b)
    assert abs(ev(x + y) - ev(x) - ev(y)) < 1e-6
    assert abs(ev(x * y) - ev(x) * ev(y)) < 1e-6
    if x.is_rational():
        assert abs(ev(x) - x.value()) < 1e-9


@pytest.mark.parametrize(
    "n, poly",
    [(1, (-1, 1)), (2, (1, 1)), (4, (1, 0, 1)), (6, (1, -1, 1)), (12, (1, 0, -1, 0, 1))],
)
def test_cyclotomic_polynomial(n, poly):
    assert cyclotomic_polynomial(n) == poly


@given(st.integers(1, 40), st.data())
def test_cyclotomic_value_matches_complex(n, data):
    h = data.draw(st.lists(st.integers(0, 20), min_size=n, max_size=n))
    v = cyclotomic_value(h, n)
    z = sum(c * cmath.exp(2j * math.pi * r / n) for r, c in enumerate(h))
    if v is not None:
        assert abs(z - v) < 1e-6


@given(st.integers(1, 400), st.data())
def test_cyclic_correlation(n, data):
    a = np.array(data.draw(st.lists(st.integers(0, 9), min_size=n, max_size=n)))
    b = np.array(data.draw(st.lists(st.integers(0, 9), min_size=n, max_size=n)))
    ref = sum(np.roll(a, -k) * b[k] for k in range(n))
    assert np.array_equal(cyclic_correlation(a, b), ref)


def test_cyclic_correlation_fft_path():
    rng = np.random.default_rng(0)
    n = 1000
    a, b = rng.integers(0, 50, n), rng.integers(0, 50, n)
    idx = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    assert np.array_equal(cyclic_correlation(a, b), a[idx] @ b)


@pytest.mark.parametrize("t", [(3, 1, 2, 1, 1), (2, 1, 4, 1, 1), (2, 2, 3, 1, 1), (5, 1, 2, 1, 1)])
def test_orthogonality(t):
    T = build_tower(*t)
    for d in (1, T.m):
        assert char_orthogonality_check(T, d)


def test_additive_character_sum():
    T = build_tower(3, 1, 2, 1, 1)
    assert additive_character_sum(T, 2, 0) == 9
    assert all(additive_character_sum(T, 2, a) == 0 for a in range(1, 9))


def test_gauss_examples():
    # N = 5 over GF(16): +4
    assert gauss_sum_semiprimitive(2, 5, 1) == 4
    assert gauss_sum_closed("semiprimitive", p=2, N=5, gamma=1) == 4
    T = build_tower(2, 1, 4, 1, 1)
    assert abs(gauss_sum_numeric(T, 4, 3) - 4) < 1e-9
    assert gauss_sum_quadratic(3, 2) == 3
    with pytest.raises(UnsupportedCase):
        gauss_sum_semiprimitive(3, 2, 1)
    with pytest.raises(UnsupportedCase):
        gauss_sum_semiprimitive(2, 7, 1)  # 2 has no power = -1 mod 7
    with pytest.raises(UnsupportedCase):
        gauss_sum_quadratic(2, 3)


@pytest.mark.parametrize("p,s", [(3, 1), (3, 3), (5, 2), (7, 1), (7, 3)])
def test_gauss_quadratic(p, s):
    T = build_tower(p, 1, s, 1, 1)
    num = gauss_sum_numeric(T, s, (p**s - 1) // 2)
    assert abs(num - gauss_sum_quadratic(p, s)) < 1e-6 * p ** (s / 2)


def test_gauss_magnitude():
    T = build_tower(3, 1, 4, 1, 1)
    for j in range(1, 80):
        assert abs(abs(gauss_sum_numeric(T, 4, j)) - 9) < 1e-8


def test_semiprimitive_exponent():
    assert semiprimitive_exponent(2, 5) == 2
    assert semiprimitive_exponent(3, 4) == 1
    assert semiprimitive_exponent(2, 7) is None
    assert semiprimitive_exponent(3, 6) is None


@pytest.mark.parametrize("t", SMALL_TOWERS, ids=str)
def test_fast_sums_equal_triple_sum(t):
    T = build_tower(*t)
    a1 = T.generator(T.m1)
    M1 = T.q**T.m1 - 1
    dv, ov = delta_values(T), omega_values(T)
    cs = T.subfield_elements(1)[1:]
    if M1 > 100:
        cs = cs[[0, -1]]
    for j in range(M1):
        b = T.pow(a1, j)
        assert delta_brute(T, b) == dv[j]
        for c in cs:
            # Omega(b, c) = Omega(b / c, 1)
            jb = (j - (int(c) - 1) // T.cofactor(T.m1)) % M1  # c = alpha^(c - 1)
            assert omega_brute(T, b, c) == ov[jb]


@pytest.mark.parametrize("t", SMALL_TOWERS, ids=str)
def test_closed_distributions(t):
    T = build_tower(*t)
    if T.l == 1:
        assert delta_distribution_brute(T) == delta_closed_distribution(T)
    assert omega_distribution_brute(T) == omega_closed_distribution(T)
    assert omega_distribution_brute(T).total == (T.q**T.m1 - 1) * (T.q - 1)


def test_known_distributions():
    T = build_tower(3, 1, 4, 4, 2)
    assert delta_distribution_brute(T).as_dict() == {-40: 20, 14: 60}
    assert omega_distribution_brute(T).as_dict() == {-7: 120, 20: 40}
    T = build_tower(3, 1, 6, 3, 2)
    assert omega_distribution_brute(T).as_dict() == {-196: 26, 182: 26}


def test_delta_argument_checks():
    T = build_tower(3, 1, 6, 2, 3)
    with pytest.raises(ParameterError):
        delta_brute(T, 0)
    with pytest.raises(NotInSubfield):
        delta_brute(T, T.element(1))
    with pytest.raises(ParameterError):
        omega_brute(T, 1, 0)
    with pytest.raises(UnsupportedCase):
        delta_closed_distribution(build_tower(3, 1, 4, 4, 4))


def test_expsum_distribution_merges():
    d = ExpSumDistribution.from_counter({3: 2, -1: 0, 5: 1})
    assert d.entries == ((3, 2), (5, 1)) and d.total == 3


@pytest.mark.parametrize("t, N", [((3, 1, 4, 1, 1), 10), ((2, 1, 4, 1, 1), 5), ((5, 1, 2, 1, 1), 6)])
def test_batched_gauss_sums(t, N):
    T = build_tower(*t)
    n = T.size - 1
    batch = gauss_sums_numeric(T, T.m, N)
    for a in range(N):
        assert abs(batch[a] - gauss_sum_numeric(T, T.m, a * n // N)) < 1e-8
    assert abs(batch[0] + 1) < 1e-8  # trivial multiplicative character
