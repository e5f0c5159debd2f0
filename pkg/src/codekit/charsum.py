"""Character sums over the tower: exact Z[zeta_p] accumulation and Gauss sums.

Two exponential sums drive the weight distributions of the code family, for
b in GF(q^m1)* and c in GF(q)*::

    Delta(b)   = sum_{x != 0} sum_{y,z in GF(q)*} chi1(y b N1(x)) chi2(z N2(x))
    Omega(b,c) = sum_{x != 0} sum_{y,z in GF(q)*} chi1(y b N1(x)) chi(y c) chi2(z N2(x))

with N_i the norm GF(q^m) -> GF(q^mi) and chi, chi1, chi2 the canonical
additive characters.  They are evaluated here by enumeration only, with values
kept as integer counts per power of zeta_p; the closed forms live next to them
so the two can be compared.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ExactnessError, NotInSubfield, ParameterError, UnsupportedCase
from .field import FieldTower, divisors, is_prime, rel_norm, rel_trace

CHUNK = 1 << 22


# --------------------------------------------------------------------------
# Z[zeta_p]

@dataclass(frozen=True)
class CyclotomicInt:
    """Element of Z[zeta_p]; coeffs[j] multiplies zeta_p**j, min coefficient is 0."""

    coeffs: tuple[int, ...]

    @classmethod
    def from_vector(cls, v) -> "CyclotomicInt":
        v = [int(c) for c in v]
        if not v:
            raise ValueError("empty coefficient vector")
        lo = min(v)
        return cls(tuple(c - lo for c in v))

    @property
    def p(self) -> int:
        return len(self.coeffs)

    def is_rational(self) -> bool:
        return len(set(self.coeffs[1:])) <= 1

    def value(self) -> int:
        if not self.is_rational():
            raise ExactnessError(f"{self} is not a rational integer")
        return self.coeffs[0] - (self.coeffs[1] if self.p > 1 else 0)

    def __add__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        return CyclotomicInt.from_vector([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[(i + j) % p] += a * b
        return CyclotomicInt.from_vector(out)


def cyclotomic_reduce(v, p: int | None = None) -> int | CyclotomicInt:
    """Canonical form of sum_j v[j] zeta_p**j; a plain int when the element is rational."""
    if p is not None and len(v) != p:
        raise ValueError(f"expected {p} coefficients, got {len(v)}")
    z = CyclotomicInt.from_vector(v)
    return z.value() if z.is_rational() else z


def _rational_rows(h: np.ndarray, strict: bool = False) -> np.ndarray | None:
    """Integer values of rows of a (.., p) histogram array.

    Returns None (or raises, if ``strict``) when some row is not rational.
    """
    h = np.asarray(h, dtype=np.int64)
    if h.shape[-1] > 1 and np.any(h[..., 1:] != h[..., 1:2]):
        if strict:
            raise ExactnessError("character sum did not reduce to a rational integer")
        return None
    return h[..., 0] - (h[..., 1] if h.shape[-1] > 1 else 0)


@lru_cache(maxsize=64)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of Phi_n, built from (x^d - 1)^mu(n/d)."""
    poly = [1]
    num, den = [], []
    for d in divisors(n):
        mu = _mobius(n // d)
        if mu == 1:
            num.append(d)
        elif mu == -1:
            den.append(d)
    for d in num:
        new = [0] * (len(poly) + d)
        for i, c in enumerate(poly):
            new[i + d] += c
            new[i] -= c
        poly = new
    for d in den:
        # exact division by x^d - 1: c[i] = c[i - d] - a[i]
        out = [0] * (len(poly) - d)
        for i in range(len(out)):
            out[i] = (out[i - d] if i >= d else 0) - poly[i]
        poly = out
    while poly and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def _mobius(n: int) -> int:
    out, f = 1, 2
    while f * f <= n:
        if n % f == 0:
            n //= f
            if n % f == 0:
                return 0
            out = -out
        f += 1
    return -out if n > 1 else out


def cyclotomic_value(h, n: int) -> int | None:
    """sum_r h[r] zeta_n**r as an int, or None when it is not rational.

    Exact: reduces the polynomial modulo Phi_n.
    """
    phi = np.array(cyclotomic_polynomial(n), dtype=object)
    deg = len(phi) - 1
    r = np.array([int(c) for c in h], dtype=object)
    for i in range(len(r) - 1, deg - 1, -1):
        c = r[i]
        if c:
            r[i - deg : i + 1] -= c * phi
    rem = r[:deg] if deg else r[:1] * 0
    if deg == 0:
        return 0
    if any(rem[1:]):
        return None
    return int(rem[0])


# --------------------------------------------------------------------------
# characters

@lru_cache(maxsize=64)
def _trace_by_log(tower: FieldTower, d: int) -> np.ndarray:
    """Absolute trace Tr_{q^d/p}(gen_d**k) for k = 0 .. q^d - 2."""
    els = tower.subfield_elements(d)[1:]
    return np.asarray(tower.abs_trace(els, d), dtype=np.int64)


def additive_character_sum(tower: FieldTower, d: int, a: int) -> int:
    """sum_{x in GF(q^d)} chi(a x), exactly."""
    p = tower.p
    xs = tower.subfield_elements(d)
    t = np.asarray(tower.abs_trace(tower.mul(a, xs), d))
    return cyclotomic_reduce(np.bincount(t, minlength=p), p)


def char_orthogonality_check(tower: FieldTower, d: int) -> bool:
    """Exact orthogonality of all additive and multiplicative characters of GF(q^d)."""
    tower._check_degree(d)
    p, r = tower.p, tower.q**d
    xs = tower.subfield_elements(d)
    step = max(1, CHUNK // r)
    for lo in range(0, r, step):
        a = xs[lo : lo + step]
        t = np.asarray(tower.abs_trace(tower.mul(a[:, None], xs[None, :]), d))
        rows = np.arange(len(a))[:, None] * p
        h = np.bincount((rows + t).ravel(), minlength=len(a) * p).reshape(len(a), p)
        for ai, hi in zip(a, h):
            v = cyclotomic_reduce(hi, p)
            if v != (r if ai == 0 else 0):
                return False
    n = r - 1
    k = np.arange(n)
    seen: dict[bytes, int | None] = {}
    for j in range(n):
        h = np.bincount((j * k) % n, minlength=n)
        key = h.tobytes()
        if key not in seen:
            seen[key] = cyclotomic_value(h, n)
        if seen[key] != (n if j == 0 else 0):
            return False
    return True


def gauss_sum_numeric(tower: FieldTower, d: int, j: int) -> complex:
    """G(psi_j) over GF(q^d) with psi_j(gen_d**k) = exp(2 pi i j k / (q^d - 1))."""
    tower._check_degree(d)
    p, n = tower.p, tower.q**d - 1
    t = _trace_by_log(tower, d)
    k = np.arange(n)
    phase = ((j % n) * k % n) / n + t / p
    return complex(np.exp(2j * np.pi * phase).sum())


def gauss_sums_numeric(tower: FieldTower, d: int, N: int) -> np.ndarray:
    """G(phi**a) for a = 0 .. N-1, phi of order N over GF(q^d), from one pass over the field."""
    tower._check_degree(d)
    n = tower.q**d - 1
    if N < 1 or n % N:
        raise ParameterError(f"no character of order {N} on GF({tower.q}^{d})")
    t = _trace_by_log(tower, d)
    add = np.exp(2j * np.pi * t / tower.p)
    # group x = gen**k by k mod N, then the character sums are a length-N DFT
    part = np.bincount(np.arange(n) % N, weights=add.real, minlength=N) + 1j * np.bincount(
        np.arange(n) % N, weights=add.imag, minlength=N
    )
    return np.conj(np.fft.fft(np.conj(part)))


def semiprimitive_exponent(p: int, N: int) -> int | None:
    """Least j >= 1 with p^j = -1 (mod N), or None."""
    if N < 2 or math.gcd(p, N) != 1:
        return None
    x = 1
    for j in range(1, N + 1):
        x = x * p % N
        if x == N - 1:
            return j
    return None


def gauss_sum_semiprimitive(p: int, N: int, gamma: int, power: int = 1) -> int:
    """Gauss sum of phi**power, phi of order N over GF(p^(2 j gamma)), semi-primitive case.

    Returns the exact value as a signed integer multiple of 1 (sqrt(r) = p^(j gamma)).
    """
    if N == 2:
        raise UnsupportedCase("semi-primitive evaluation excludes N = 2")
    j = semiprimitive_exponent(p, N)
    if N < 3 or j is None:
        raise UnsupportedCase(f"no j with {p}^j = -1 mod {N}")
    if gamma < 1 or not 1 <= power <= N - 1:
        raise ParameterError("need gamma >= 1 and 1 <= power <= N - 1")
    root = p ** (j * gamma)
    h = (p**j + 1) // N
    if power == 1:
        if p == 2:
            return (-1) ** (gamma - 1) * root
        return (-1) ** (gamma - 1 + gamma * h) * root
    if N % 2 == 0 and p % 2 and gamma % 2 and h % 2:
        return (-1) ** power * root
    return (-1) ** (gamma - 1) * root


def gauss_sum_quadratic(p: int, s: int) -> complex:
    """G(eta) over GF(p^s), p odd: (-1)^(s-1) (sqrt(p*))^s."""
    if p % 2 == 0:
        raise UnsupportedCase("quadratic character needs odd p")
    root = math.sqrt(p**s)
    if p % 4 == 1:
        return complex((-1) ** (s - 1) * root)
    return (-1) ** (s - 1) * (1j**s) * root


def gauss_sum_closed(kind: str, **kw):
    if kind == "quadratic":
        return gauss_sum_quadratic(kw["p"], kw["s"])
    if kind == "semiprimitive":
        return gauss_sum_semiprimitive(kw["p"], kw["N"], kw["gamma"], kw.get("power", 1))
    raise ValueError(f"unknown Gauss sum case {kind!r}")


# --------------------------------------------------------------------------
# Delta and Omega by direct enumeration

def _check_b(tower: FieldTower, b: int) -> None:
    if b == 0:
        raise ParameterError("b must be nonzero")
    if not tower.in_subfield(b, tower.m1):
        raise NotInSubfield("b must lie in GF(q^m1)")


def _triple_sum(tower: FieldTower, b: int, c: int | None) -> int:
    T = tower
    p, m = T.p, T.m
    ys = T.subfield_elements(1)[1:]
    xs = np.arange(1, T.size)
    hist = np.zeros(p, dtype=np.int64)
    step = max(1, CHUNK // (len(ys) ** 2))
    yc = 0 if c is None else np.asarray(T.abs_trace(T.mul(ys, c), 1))
    for lo in range(0, len(xs), step):
        x = xs[lo : lo + step]
        n1 = rel_norm(T, x, m, T.m1)
        n2 = rel_norm(T, x, m, T.m2)
        e1 = np.asarray(T.abs_trace(T.mul(T.mul(ys[:, None], b), n1[None, :]), T.m1))
        e1 = (e1 + (yc[:, None] if c is not None else 0)) % p
        e2 = np.asarray(T.abs_trace(T.mul(ys[:, None], n2[None, :]), T.m2))
        tot = (e1[:, None, :] + e2[None, :, :]) % p  # (y, z, x)
        hist += np.bincount(tot.ravel(), minlength=p)
    v = cyclotomic_reduce(hist, p)
    if not isinstance(v, int):
        raise ExactnessError(f"character sum reduced to irrational {v}")
    return v


def delta_brute(tower: FieldTower, b: int) -> int:
    """Delta(b) by the literal triple sum over x, y, z."""
    _check_b(tower, b)
    return _triple_sum(tower, b, None)


def omega_brute(tower: FieldTower, b: int, c: int) -> int:
    """Omega(b, c) by the literal triple sum over x, y, z."""
    _check_b(tower, b)
    if c == 0 or not tower.in_subfield(c, 1):
        raise ParameterError("c must be a nonzero element of GF(q)")
    return _triple_sum(tower, b, c)


# --------------------------------------------------------------------------
# full value multisets by counting
#
# Tr_{q^mi/p}(y w) = Tr_{q/p}(y Tr_{q^mi/q}(w)), so the y- and z-sums for a
# fixed x only see t1 = Tr_{q^m1/q}(b N1(x)) (+ c) and t2 = Tr_{q^m2/q}(N2(x)),
# and the y-sum Y(t) = sum_{y != 0} zeta^{Tr(y t)} is the same for all t != 0
# (substitute y -> y / t).  Counting x by whether t1, t2 vanish is exact; the
# count for every b at once is a cyclic correlation over log_alpha1.

def _y_sums(tower: FieldTower) -> tuple[np.ndarray, np.ndarray]:
    p = tower.p
    y0 = np.zeros(p, dtype=np.int64)
    y0[0] = tower.q - 1
    t = np.asarray(tower.abs_trace(tower.subfield_elements(1)[1:], 1))
    return y0, np.bincount(t, minlength=p).astype(np.int64)


def _conv(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    p = len(a)
    out = np.zeros(p, dtype=np.int64)
    for i in range(p):
        out += a[i] * np.roll(b, i)
    return out


def cyclic_correlation(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """out[j] = sum_k a[(j + k) % n] * b[k] for non-negative integer vectors, exactly."""
    n = len(a)
    if n * n <= 1 << 16:
        idx = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
        return a[idx] @ b
    bound = float(a.sum()) * float(b.max() if len(b) else 0)
    if bound >= 2.0**45:
        raise ExactnessError("correlation too large for exact floating evaluation")
    # linear correlation of (a, a) against b, zero-padded to a power of two
    size = 1 << (3 * n - 1).bit_length()
    fa = np.fft.rfft(np.concatenate((a, a)).astype(float), size)
    fb = np.fft.rfft(b[::-1].astype(float), size)
    raw = np.fft.irfft(fa * fb, size)[n - 1 : 2 * n - 1]
    out = np.rint(raw)
    if np.max(np.abs(raw - out), initial=0.0) > 1e-3:
        raise ExactnessError("FFT correlation failed to round to integers")
    return out.astype(np.int64)


def _class_counts(tower: FieldTower, target: int):
    """For every b = alpha1**j: counts of x != 0 split by [t1 == target] and [t2 == 0]."""
    T = tower
    m, m1, m2 = T.m, T.m1, T.m2
    M1 = T.q**m1 - 1
    xs = np.arange(1, T.size)
    n1 = np.asarray(rel_norm(T, xs, m, m1))
    k1 = (n1 - 1) // T.cofactor(m1)
    sub2 = T.subfield_elements(m2)
    tr2 = np.asarray(rel_trace(T, sub2, m2, 1))
    n2 = np.asarray(rel_norm(T, xs, m, m2))
    t2_zero = tr2[(n2 - 1) // T.cofactor(m2) + 1] == 0
    cnt0 = np.bincount(k1[t2_zero], minlength=M1)
    cnt1 = np.bincount(k1[~t2_zero], minlength=M1)
    tr1 = np.asarray(rel_trace(T, T.subfield_elements(m1)[1:], m1, 1))
    hit = (tr1 == target).astype(np.int64)
    n_hz = cyclic_correlation(hit, cnt0)
    n_hn = cyclic_correlation(hit, cnt1)
    return n_hz, n_hn, cnt0.sum() - n_hz, cnt1.sum() - n_hn


def _sums_from_counts(tower: FieldTower, counts) -> np.ndarray:
    """Combine class counts with the y/z sums; classes are (t1 hit?, t2 zero?)."""
    y0, y1 = _y_sums(tower)
    n_hz, n_hn, n_mz, n_mn = (np.asarray(c, dtype=np.int64) for c in counts)
    v = _rational_rows(np.stack([y0, y1]))
    if v is not None:
        # both partial sums are rational, so their products are too
        return n_hz * v[0] * v[0] + n_hn * v[0] * v[1] + n_mz * v[1] * v[0] + n_mn * v[1] * v[1]
    hist = (
        np.outer(n_hz, _conv(y0, y0))
        + np.outer(n_hn, _conv(y0, y1))
        + np.outer(n_mz, _conv(y1, y0))
        + np.outer(n_mn, _conv(y1, y1))
    )
    return _rational_rows(hist, strict=True)


def delta_values(tower: FieldTower) -> np.ndarray:
    """Delta(alpha1**j) for j = 0 .. q^m1 - 2."""
    return _sums_from_counts(tower, _class_counts(tower, 0))


def omega_values(tower: FieldTower) -> np.ndarray:
    """Omega(alpha1**j, 1) for j = 0 .. q^m1 - 2; Omega(b, c) = Omega(b / c, 1)."""
    return _sums_from_counts(tower, _class_counts(tower, tower.minus_one))


# --------------------------------------------------------------------------
# distributions

@dataclass(frozen=True)
class ExpSumDistribution:
    entries: tuple[tuple[int, int], ...]  # (value, multiplicity), ascending value

    @classmethod
    def from_counter(cls, c) -> "ExpSumDistribution":
        merged: Counter = Counter()
        for v, k in dict(c).items():
            merged[int(v)] += int(k)
        return cls(tuple(sorted((v, k) for v, k in merged.items() if k)))

    @property
    def total(self) -> int:
        return sum(k for _, k in self.entries)

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)


def delta_distribution_brute(tower: FieldTower) -> ExpSumDistribution:
    vals, cnt = np.unique(delta_values(tower), return_counts=True)
    return ExpSumDistribution.from_counter(dict(zip(vals.tolist(), cnt.tolist())))


def omega_distribution_brute(tower: FieldTower) -> ExpSumDistribution:
    vals, cnt = np.unique(omega_values(tower), return_counts=True)
    q = tower.q
    return ExpSumDistribution.from_counter({v: k * (q - 1) for v, k in zip(vals.tolist(), cnt.tolist())})


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ExactnessError(f"closed form produced non-integer {x}")
    return int(x)


def delta_closed_distribution(tower: FieldTower) -> ExpSumDistribution:
    q, m, m1, m2, e = tower.q, tower.m, tower.m1, tower.m2, tower.e
    M1 = q**m1 - 1
    base = Fraction((q**m - 1) * (q - 1) ** 2, M1 * (q**m2 - 1))
    if e == 1:
        return ExpSumDistribution.from_counter({_as_int(base): M1})
    if e == 2:
        h = (m1 + m2) // 2
        v1 = base * (1 + (-1) ** h * q ** (h + 1))
        v2 = base * (1 + (-1) ** (h + 1) * q**h)
        return ExpSumDistribution.from_counter(
            {_as_int(v1): _as_int(Fraction(M1, q + 1)), _as_int(v2): _as_int(Fraction(q * M1, q + 1))}
        )
    raise UnsupportedCase(f"Delta closed form needs e in (1, 2), got e={e}")


def omega_closed_distribution(tower: FieldTower) -> ExpSumDistribution:
    q, m, m1, m2, e, l = tower.q, tower.m, tower.m1, tower.m2, tower.e, tower.l
    M1 = q**m1 - 1
    base = Fraction((q**m - 1) * (q - 1), M1 * (q**m2 - 1))
    pairs = M1 * (q - 1)
    if (e, l) == (1, 1):
        return ExpSumDistribution.from_counter({_as_int(-base): pairs})
    if (e, l) == (2, 1):
        h = (m1 + m2) // 2
        v1 = -base * (1 + (-1) ** h * q ** (h + 1))
        v2 = -base * (1 + (-1) ** (h + 1) * q**h)
        return ExpSumDistribution.from_counter(
            {_as_int(v1): _as_int(Fraction(pairs, q + 1)), _as_int(v2): _as_int(Fraction(q * pairs, q + 1))}
        )
    if (e, l) == (1, 2):
        g = q ** ((m1 + m2 + 1) // 2)
        half = _as_int(Fraction(pairs, 2))
        return ExpSumDistribution.from_counter({_as_int(base * (-1 - g)): half, _as_int(base * (-1 + g)): half})
    raise UnsupportedCase(f"Omega closed form covers (e, l) in (1,1), (2,1), (1,2); got ({e}, {l})")


def supported_towers(max_size: int, max_field_bits: int = 20):
    """Every (p, s, m, m1, m2) with p^(s m) <= max_size and (e, l) in the closed-form cases."""
    out = []
    for p in range(2, max_size + 1):
        if not is_prime(p):
            continue
        n = 1
        while p**n <= max_size:
            for s in divisors(n):
                m = n // s
                q = p**s
                for m1 in divisors(m):
                    for m2 in divisors(m):
                        e = math.gcd(m1, m2)
                        l = math.gcd(m2 // e, q - 1)
                        if (e, l) in ((1, 1), (2, 1), (1, 2)):
                            out.append((p, s, m, m1, m2))
            n += 1
    return out


__all__ = [
    "CyclotomicInt",
    "ExpSumDistribution",
    "additive_character_sum",
    "char_orthogonality_check",
    "cyclic_correlation",
    "cyclotomic_polynomial",
    "cyclotomic_reduce",
    "cyclotomic_value",
    "delta_brute",
    "delta_closed_distribution",
    "delta_distribution_brute",
    "delta_values",
    "gauss_sum_closed",
    "gauss_sum_numeric",
    "gauss_sum_quadratic",
    "gauss_sums_numeric",
    "gauss_sum_semiprimitive",
    "omega_brute",
    "omega_closed_distribution",
    "omega_distribution_brute",
    "omega_values",
    "semiprimitive_exponent",
    "supported_towers",
]
