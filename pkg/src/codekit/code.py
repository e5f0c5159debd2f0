"""Linear codes over GF(q) given by generator matrices of GF(q) labels.

Labels follow the canonical convention: 0 is zero, 1 + j is beta**j for the
fixed primitive element beta of the stand-alone field GF(q).  All arithmetic is
done with the label tables of :class:`codekit.field.LabelField`.
"""

from __future__ import annotations

import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path

import numpy as np

from .errors import BudgetExceeded, ExactnessError, ParameterError, RankDeficiency
from .field import LabelField, canonical_relabeling, prime_power, rel_norm, rel_trace

DEFAULT_MAX_ENUM_BITS = 24
BLOCK = 1 << 22  # entries per enumeration block


def worker_count() -> int:
    raw = os.environ.get("CODEKIT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ParameterError(f"CODEKIT_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ParameterError(f"CODEKIT_THREADS must be a positive integer, got {raw!r}")
    return n


# --------------------------------------------------------------------------
# label arithmetic helpers

def label_sum(lf: LabelField, a: np.ndarray) -> np.ndarray:
    """Field sum of labels along the last axis (pairwise tree)."""
    a = np.asarray(a)
    if a.shape[-1] == 0:
        return np.zeros(a.shape[:-1], dtype=lf.add.dtype)
    while a.shape[-1] > 1:
        if a.shape[-1] % 2:
            a = np.concatenate([a, np.zeros(a.shape[:-1] + (1,), dtype=a.dtype)], axis=-1)
        a = lf.add[a[..., 0::2], a[..., 1::2]]
    return a[..., 0]


def row_reduce(lf: LabelField, M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(q); returns (matrix, pivot columns)."""
    A = np.array(M, dtype=np.int64)
    rows, cols = A.shape
    r, pivots = 0, []
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        piv = r + nz[0]
        A[[r, piv]] = A[[piv, r]]
        A[r] = lf.mul[lf.inv[A[r, c]], A[r]]
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if len(others):
            f = lf.neg[A[others, c]]
            A[others] = lf.add[A[others], lf.mul[f[:, None], A[r][None, :]]]
        pivots.append(c)
        r += 1
    return A, pivots


def rank_over(lf: LabelField, M: np.ndarray) -> int:
    return len(row_reduce(lf, M)[1])


# --------------------------------------------------------------------------
# codes

@dataclass(frozen=True, eq=False)
class LinearCode:
    q: int
    generator: np.ndarray  # (k, n) canonical labels

    def __post_init__(self):
        g = np.array(self.generator, dtype=np.int64)
        if g.ndim != 2 or g.shape[0] < 1 or g.shape[1] < 1:
            raise ParameterError("generator must be a non-empty k x n matrix")
        if g.min() < 0 or g.max() >= self.q:
            raise ParameterError(f"labels must lie in 0..{self.q - 1}")
        prime_power(self.q)
        g.setflags(write=False)
        object.__setattr__(self, "generator", g)

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @cached_property
    def field(self) -> LabelField:
        return LabelField.canonical(self.q)

    def rank(self) -> int:
        return rank_over(self.field, self.generator)

    def encode(self, messages: np.ndarray) -> np.ndarray:
        """Codewords for message label vectors of shape (..., k)."""
        lf = self.field
        msgs = np.asarray(messages)
        prods = lf.mul[msgs[..., :, None], self.generator]
        return label_sum(lf, np.moveaxis(prods, -2, -1))


def defining_set(tower) -> np.ndarray:
    """Nonzero x with Tr_{q^m2/q}(N_{q^m/q^m2}(x)) = 0 by increasing log, then 0."""
    xs = np.arange(1, tower.size)
    t = rel_trace(tower, rel_norm(tower, xs, tower.m, tower.m2), tower.m2, 1)
    return np.concatenate((xs[np.asarray(t) == 0], [0]))


def expected_length(q: int, m: int, m2: int) -> int:
    num = (q**m - 1) * (q**m2 - q)
    den = q * (q**m2 - 1)
    if num % den:
        raise ExactnessError("length formula is not an integer")
    return num // den + 1


def build_augmented_code(tower, D=None) -> LinearCode:
    """All-ones row, then rows Tr_{q^m1/q}(alpha1**(t-1) N(x)) for t = 1..m1, x in D."""
    if D is None:
        D = defining_set(tower)
    D = np.asarray(D)
    m1 = tower.m1
    n1 = rel_norm(tower, D, tower.m, m1)
    a1 = tower.generator(m1)
    rows = [np.ones(len(D), dtype=np.int64)]
    for t in range(m1):
        arg = tower.mul(tower.pow(a1, t), n1)
        rows.append(np.asarray(tower.label(rel_trace(tower, arg, m1, 1))))
    perm = canonical_relabeling(tower)
    G = perm[np.stack(rows)]
    code = LinearCode(tower.q, G)
    r = code.rank()
    if r != m1 + 1:
        raise RankDeficiency(f"generator has rank {r}, expected {m1 + 1}")
    return code


# --------------------------------------------------------------------------
# weight distributions

@dataclass(frozen=True)
class WeightDistribution:
    n: int
    counts: dict = field(default_factory=dict)  # weight -> A_w, zero entries dropped

    def __post_init__(self):
        clean = {int(w): int(a) for w, a in sorted(self.counts.items()) if a}
        for w, a in clean.items():
            if not 0 <= w <= self.n:
                raise ParameterError(f"weight {w} outside 0..{self.n}")
            if a < 0:
                raise ParameterError(f"negative count for weight {w}")
        object.__setattr__(self, "counts", clean)

    @classmethod
    def from_array(cls, a) -> "WeightDistribution":
        a = list(a)
        return cls(len(a) - 1, {w: c for w, c in enumerate(a)})

    def as_array(self) -> list[int]:
        out = [0] * (self.n + 1)
        for w, a in self.counts.items():
            out[w] = a
        return out

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def nonzero_weights(self) -> list[int]:
        return [w for w in self.counts if w > 0]

    def min_distance(self) -> int:
        ws = self.nonzero_weights()
        if not ws:
            raise ParameterError("code has no nonzero codeword")
        return ws[0]

    def enumerator(self) -> str:
        return weight_enumerator_string(self)

    def __eq__(self, other):
        if not isinstance(other, WeightDistribution):
            return NotImplemented
        return self.n == other.n and self.counts == other.counts


def weight_enumerator_string(wd: WeightDistribution) -> str:
    terms = []
    for w, a in wd.counts.items():
        if w == 0:
            terms.append(str(a))
        else:
            terms.append(f"{'' if a == 1 else a}z^{w}")
    return "+".join(terms)


def parse_enumerator(text: str, n: int) -> WeightDistribution:
    counts = {}
    for term in text.replace(" ", "").split("+"):
        if "z" in term:
            coef, _, w = term.partition("z")
            w = int(w[1:]) if w.startswith("^") else 1
            counts[w] = counts.get(w, 0) + (int(coef) if coef else 1)
        else:
            counts[0] = counts.get(0, 0) + int(term)
    return WeightDistribution(n, counts)


def _span(lf: LabelField, rows: np.ndarray) -> np.ndarray:
    """All GF(q) combinations of rows; the first row is the most significant digit."""
    q = lf.q
    out = np.zeros((1, rows.shape[1]), dtype=lf.add.dtype)
    scal = np.arange(q)[:, None]
    for g in rows:
        mult = lf.mul[scal, g[None, :]]
        out = lf.add[out[:, None, :], mult[None, :, :]].reshape(-1, rows.shape[1])
    return out


def weight_distribution_brute(code: LinearCode, max_enum_bits: int = DEFAULT_MAX_ENUM_BITS,
                              threads: int | None = None) -> WeightDistribution:
    """Exact weight distribution by enumerating all q^k messages."""
    q, k, n = code.q, code.k, code.n
    if q**k > 1 << max_enum_bits:
        raise BudgetExceeded(f"{q}^{k} codewords exceed the 2^{max_enum_bits} enumeration budget")
    lf = code.field
    G = code.generator
    k_tail = k // 2
    head = _span(lf, G[: k - k_tail])
    tail = _span(lf, G[k - k_tail :])
    step = max(1, BLOCK // (len(tail) * n))

    def block(lo: int) -> np.ndarray:
        h = head[lo : lo + step]
        words = lf.add[h[:, None, :], tail[None, :, :]]
        return np.bincount(np.count_nonzero(words, axis=2).ravel(), minlength=n + 1)

    starts = range(0, len(head), step)
    threads = worker_count() if threads is None else threads
    if threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(block, starts))
    else:
        parts = [block(lo) for lo in starts]
    hist = np.sum(parts, axis=0)
    return WeightDistribution.from_array(hist.tolist())


def min_distance_pairwise(code: LinearCode) -> int:
    """Minimum Hamming distance between distinct codewords (small codes only)."""
    words = _span(code.field, code.generator)
    best = code.n
    for i in range(len(words) - 1):
        d = np.count_nonzero(words[i + 1 :] != words[i], axis=1)
        d = d[d > 0]
        if len(d):
            best = min(best, int(d.min()))
    return best


def is_self_orthogonal(code: LinearCode) -> bool:
    lf = code.field
    G = code.generator
    prods = lf.mul[G[:, None, :], G[None, :, :]]
    return not np.any(label_sum(lf, prods))


def weight_divisor(wd: WeightDistribution) -> int:
    ws = wd.nonzero_weights()
    if not ws:
        raise ParameterError("all-zero code has no divisor")
    return math.gcd(*ws)


# --------------------------------------------------------------------------
# dual weights

def krawtchouk_column(n: int, q: int, x: int) -> list[int]:
    """K_j(x) for j = 0..n, by the three-term recurrence in j."""
    K = [1]
    if n == 0:
        return K
    K.append((q - 1) * n - q * x)
    for j in range(1, n):
        num = ((q - 1) * (n - j) + j - q * x) * K[j] - (q - 1) * (n - j + 1) * K[j - 1]
        if num % (j + 1):
            raise ExactnessError("Krawtchouk recurrence lost integrality")
        K.append(num // (j + 1))
    return K


def macwilliams_dual(wd: WeightDistribution, n: int, k: int, q: int) -> WeightDistribution:
    """Weight distribution of the dual code from the primal one."""
    if wd.total != q**k:
        raise ParameterError(f"distribution sums to {wd.total}, expected {q}^{k}")
    if wd.n != n:
        raise ParameterError("distribution length does not match n")
    acc = [0] * (n + 1)
    for i, a in wd.counts.items():
        for j, kj in enumerate(krawtchouk_column(n, q, i)):
            acc[j] += a * kj
    div = q**k
    out = {}
    for j, v in enumerate(acc):
        if v % div:
            raise ExactnessError(f"dual count B_{j} = {v}/{div} is not integral")
        if v < 0:
            raise ExactnessError(f"dual count B_{j} is negative")
        out[j] = v // div
    return WeightDistribution(n, out)


@dataclass(frozen=True)
class DualLowWeights:
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction | None  # None when no closed form is available

    def as_tuple(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4)

    def to_json(self) -> list:
        return [None if x is None else int(x) if x.denominator == 1 else str(x) for x in self.as_tuple()]


def pless_low_dual_weights(wd: WeightDistribution, n: int, q: int, m: int) -> DualLowWeights:
    """Solve the first four Pless power moments (dimension m + 1) for A1..A4 of the dual."""
    if wd.total != q ** (m + 1):
        raise ParameterError(f"distribution sums to {wd.total}, expected {q}^{m + 1}")
    S = [sum(Fraction(w) ** r * a for w, a in wd.counts.items() if w) for r in range(5)]
    Q = Fraction(q)
    # S1 = q^m (qn - n - A1)
    a1 = q * n - n - S[1] / Q**m
    # S2 = q^(m-1) [(q-1)n(qn-n+1) - (2qn-q-2n+2)A1 + 2A2]
    a2 = (S[2] / Q ** (m - 1) - (q - 1) * n * (q * n - n + 1) + (2 * q * n - q - 2 * n + 2) * a1) / 2
    # S3 = q^(m-2) [(q-1)n(...) - (...)A1 + 6(qn-q-n+2)A2 - 6A3]
    c0 = (q - 1) * n * (q * q * n * n - 2 * q * n * n + 3 * q * n - q + n * n - 3 * n + 2)
    c1 = 3 * q * q * n * n - 3 * q * q * n - 6 * q * n * n + 12 * q * n + q * q - 6 * q + 3 * n * n - 9 * n + 6
    c2 = 6 * (q * n - q - n + 2)
    a3 = (c0 - c1 * a1 + c2 * a2 - S[3] / Q ** (m - 2)) / 6
    # S4 = q^(m-3) [(q-1)n(...) - (...)A1 + (...)A2 - (...)A3 + 24A4]
    d0 = (q - 1) * n * (
        q**3 * n**3 - 3 * q**2 * n**3 + 6 * q**2 * n**2 - 4 * q**2 * n + q**2 + 3 * q * n**3
        - 12 * q * n**2 + 15 * q * n - 6 * q - n**3 + 6 * n**2 - 11 * n + 6
    )
    d1 = (
        4 * q**3 * n**3 - 6 * q**3 * n**2 + 4 * q**3 * n - q**3 - 12 * q**2 * n**3 + 36 * q**2 * n**2
        - 38 * q**2 * n + 14 * q**2 + 12 * q * n**3 - 54 * q * n**2 + 78 * q * n - 36 * q
        - 4 * n**3 + 24 * n**2 - 44 * n + 24
    )
    d2 = 12 * q**2 * n**2 - 24 * q**2 * n + 14 * q**2 - 24 * q * n**2 + 84 * q * n - 72 * q + 12 * n**2 - 60 * n + 72
    d3 = 24 * q * n - 36 * q - 24 * n + 72
    a4 = (S[4] / Q ** (m - 3) - d0 + d1 * a1 - d2 * a2 + d3 * a3) / 24
    return DualLowWeights(Fraction(a1), Fraction(a2), Fraction(a3), Fraction(a4))


# --------------------------------------------------------------------------
# generator-matrix files: "q n k" then k rows of n labels

def format_generator(code: LinearCode) -> str:
    lines = [f"{code.q} {code.n} {code.k}"]
    lines += [" ".join(map(str, row)) for row in code.generator.tolist()]
    return "\n".join(lines) + "\n"


def write_generator(code: LinearCode, path) -> None:
    Path(path).write_text(format_generator(code))


def parse_generator(text: str) -> LinearCode:
    lines = [ln.split() for ln in io.StringIO(text) if ln.strip()]
    if not lines or len(lines[0]) != 3:
        raise ParameterError("first line must be 'q n k'")
    try:
        q, n, k = map(int, lines[0])
        rows = [[int(v) for v in ln] for ln in lines[1:]]
    except ValueError as exc:
        raise ParameterError(f"non-integer entry in generator file: {exc}") from None
    if len(rows) != k or any(len(r) != n for r in rows):
        raise ParameterError(f"expected {k} rows of {n} labels")
    return LinearCode(q, np.array(rows, dtype=np.int64))


def read_generator(path) -> LinearCode:
    return parse_generator(Path(path).read_text())
