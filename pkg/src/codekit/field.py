"""Table-driven arithmetic for GF(q^m), q = p^s, and the subfields the code family uses.

Elements are plain non-negative integers ("indices"): 0 is the zero element and
i > 0 stands for alpha**(i - 1), alpha being a fixed primitive element.  With this
convention multiplication is index addition modulo q^m - 1 and addition goes
through Zech logarithms (or a full table for small fields).

Subfield degrees passed to the public helpers are measured over GF(q), i.e. the
subfield GF(q^d) is addressed by ``d`` with ``d | m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BudgetExceeded, NotInSubfield, ParameterError

DEFAULT_MAX_FIELD_BITS = 20
FULL_ADD_TABLE_LIMIT = 1 << 12
LABEL_FIELD_LIMIT = 1 << 12


# --------------------------------------------------------------------------
# integer helpers

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p**s; raise ParameterError if q is not a prime power."""
    fs = prime_factors(q) if q > 1 else []
    if len(fs) != 1:
        raise ParameterError(f"{q} is not a prime power")
    p = fs[0]
    s = round(math.log(q, p))
    if p**s != q:
        s = 1
        while p ** (s + 1) <= q:
            s += 1
    return p, s


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# --------------------------------------------------------------------------
# polynomials over GF(p), coefficient lists from low to high degree

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(_trim(a)) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
    return a


def _poly_mulmod(a, b, f, p):
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _poly_mod(prod, f, p)


def _poly_powmod(a, e, f, p):
    result = [1]
    base = _poly_mod(a, f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial f over GF(p)."""
    n = len(f) - 1
    if n == 1:
        return True
    x = [0, 1]
    if _poly_powmod(x, p**n, f, p) != _poly_mod(x, f, p):
        return False
    for r in prime_factors(n):
        h = _poly_powmod(x, p ** (n // r), f, p)
        h = h + [0] * (2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(_poly_gcd(f, _trim(h), p)) != 1:
            return False
    return True


def _digits(v: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        v, d = divmod(v, p)
        out.append(d)
    return out


def find_modulus(p: int, n: int) -> tuple[int, ...]:
    """First monic irreducible of degree n, lower coefficients read as a base-p counter."""
    for c in range(p**n):
        f = _digits(c, p, n) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def find_primitive(f: tuple[int, ...], p: int) -> int:
    """Smallest encoding (base-p digits = polynomial coefficients) of a primitive element."""
    n = len(f) - 1
    order = p**n - 1
    rs = prime_factors(order) if order > 1 else []
    for enc in range(1, p**n):
        a = _trim(_digits(enc, p, n))
        if all(_trim(_poly_powmod(a, order // r, list(f), p)) != [1] for r in rs):
            return enc
    raise AssertionError("no primitive element found")  # pragma: no cover


def _power_table(alpha: int, f: tuple[int, ...], p: int) -> np.ndarray:
    """Encodings of alpha**k for k = 0 .. p^n - 2 (doubling with multiplication matrices)."""
    n = len(f) - 1
    order = p**n - 1
    fl = list(f)
    a = _trim(_digits(alpha, p, n))
    P = np.zeros((order, n), dtype=np.int64)
    P[0, 0] = 1
    k = 1
    while k < order:
        ak = _poly_powmod(a, k, fl, p)
        M = np.zeros((n, n), dtype=np.int64)
        for j in range(n):
            col = _poly_mulmod(ak, [0] * j + [1], fl, p)
            M[: len(col), j] = col
        cnt = min(k, order - k)
        P[k : k + cnt] = (P[:cnt] @ M.T) % p
        k += cnt
    weights = p ** np.arange(n, dtype=np.int64)
    return P @ weights


# --------------------------------------------------------------------------
# the tower

def _out(r):
    r = np.asarray(r)
    return int(r) if r.ndim == 0 else r


@dataclass(frozen=True, eq=False)
class FieldTower:
    p: int
    s: int
    m: int
    m1: int
    m2: int
    modulus: tuple[int, ...]
    alpha: int
    exp: np.ndarray  # exp[k] = encoding of alpha**k
    log: np.ndarray  # log[enc] = k, -1 for the zero encoding
    zech: np.ndarray  # zech[k] = index of 1 + alpha**k

    @property
    def q(self) -> int:
        return self.p**self.s

    @property
    def e(self) -> int:
        return math.gcd(self.m1, self.m2)

    @property
    def l(self) -> int:  # noqa: E743
        return math.gcd(self.m2 // self.e, self.q - 1)

    @property
    def size(self) -> int:
        return self.q**self.m

    @property
    def order(self) -> int:
        return self.size - 1

    def params(self) -> dict:
        return dict(p=self.p, s=self.s, q=self.q, m=self.m, m1=self.m1, m2=self.m2, e=self.e, l=self.l)

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, s={self.s}, m={self.m}, m1={self.m1}, m2={self.m2})"

    # -- index <-> encoding -------------------------------------------------

    def encode(self, x):
        """Polynomial-basis encoding of index x (base-p digits)."""
        x = np.asarray(x)
        return _out(np.where(x == 0, 0, self.exp[np.maximum(x, 1) - 1]))

    def from_encoding(self, enc):
        enc = np.asarray(enc)
        return _out(np.where(enc == 0, 0, self.log[enc] + 1))

    def element(self, k: int) -> int:
        """Index of alpha**k."""
        return k % self.order + 1

    # -- arithmetic ----------------------------------------------------------

    def mul(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        return _out(np.where((a == 0) | (b == 0), 0, (a + b - 2) % self.order + 1))

    def pow(self, a, k: int):
        a = np.asarray(a)
        if k == 0:
            return _out(np.ones_like(a))
        kr = k % self.order
        if k < 0 and np.any(a == 0):
            raise ZeroDivisionError("zero raised to a negative power")
        return _out(np.where(a == 0, 0, ((a - 1) * kr) % self.order + 1))

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return _out((self.order - (a - 1)) % self.order + 1)

    def _add_zech(self, a, b):
        la, lb = a - 1, b - 1
        z = self.zech[(lb - la) % self.order]
        r = np.where(z == 0, 0, (la + z - 1) % self.order + 1)
        return np.where(a == 0, b, np.where(b == 0, a, r))

    @property
    def add_table(self) -> np.ndarray:
        if self.size > FULL_ADD_TABLE_LIMIT:
            raise BudgetExceeded("full addition table only built for fields <= 2^12 elements")
        return _add_table(self.p, self.s * self.m)

    def add(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        if self.size <= FULL_ADD_TABLE_LIMIT:
            return _out(self.add_table[a, b].astype(np.int64))
        return _out(self._add_zech(a, b))

    @property
    def minus_one(self) -> int:
        return 1 if self.p == 2 else self.order // 2 + 1

    def neg(self, a):
        return a if self.p == 2 else self.mul(a, self.minus_one)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    # -- subfields -----------------------------------------------------------

    def _check_degree(self, d: int) -> None:
        if d < 1 or self.m % d:
            raise ParameterError(f"GF(q^{d}) is not a subfield of GF(q^{self.m})")

    def cofactor(self, d: int) -> int:
        """(q^m - 1) / (q^d - 1): alpha**cofactor generates GF(q^d)*."""
        self._check_degree(d)
        return self.order // (self.q**d - 1)

    def generator(self, d: int) -> int:
        """Index of the fixed primitive element of GF(q^d) (alpha_1, alpha_2, beta)."""
        return self.cofactor(d) + 1

    def in_subfield(self, x, d: int):
        x = np.asarray(x)
        return _out((x == 0) | ((x - 1) % self.cofactor(d) == 0))

    def subfield_elements(self, d: int) -> np.ndarray:
        """Zero followed by gen**0, gen**1, ... of GF(q^d)."""
        c = self.cofactor(d)
        return np.concatenate(([0], 1 + c * np.arange(self.q**d - 1)))

    def _frobenius_sum(self, x, terms: int, step: int):
        """sum_{j<terms} x^(p^(step*j)) for index arrays."""
        x = np.asarray(x)
        acc = x
        for j in range(1, terms):
            acc = np.asarray(self.add(acc, self.pow(x, self.p ** (step * j))))
        return acc

    def abs_trace(self, x, d: int):
        """Trace from GF(q^d) down to GF(p), returned as an integer in 0..p-1."""
        self._check_degree(d)
        t = self._frobenius_sum(x, self.s * d, 1)
        return self.encode(t)

    # -- GF(q) symbol alphabet -----------------------------------------------

    def label(self, x):
        """GF(q) element -> label: 0 -> 0, beta**j -> 1 + j."""
        x = np.asarray(x)
        c = self.cofactor(1)
        if np.any((x != 0) & ((x - 1) % c != 0)):
            raise NotInSubfield("element not in GF(q)")
        return _out(np.where(x == 0, 0, (x - 1) // c + 1))

    def from_label(self, lab):
        lab = np.asarray(lab)
        return _out(np.where(lab == 0, 0, 1 + self.cofactor(1) * (lab - 1)))

    @property
    def label_field(self) -> "LabelField":
        if self.q > LABEL_FIELD_LIMIT:
            raise BudgetExceeded(f"GF({self.q}) label tables exceed the {LABEL_FIELD_LIMIT} limit")
        # depends only on (p, s, m); shared so large-q tables are not kept once per tower
        return _label_field(self.p, self.s, self.m)

    def _build_label_field(self) -> "LabelField":
        q = self.q
        labs = np.arange(q)
        el = np.asarray(self.from_label(labs))
        add = np.asarray(self.label(self.add(el[:, None], el[None, :])))
        mul = np.asarray(self.label(self.mul(el[:, None], el[None, :])))
        return LabelField.from_tables(self.p, add, mul)


@dataclass(frozen=True, eq=False)
class LabelField:
    """GF(q) arithmetic on labels 0..q-1 (label 0 = zero, 1 + j = beta**j)."""

    p: int
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray

    @classmethod
    def from_tables(cls, p, add, mul):
        q = add.shape[0]
        dtype = np.int16 if q <= 1 << 15 else np.int32
        add = add.astype(dtype)
        mul = mul.astype(dtype)
        neg = np.argmin(add, axis=1).astype(dtype)  # add[a, neg[a]] == 0
        inv = np.zeros(q, dtype=dtype)
        inv[1:] = np.argmax(mul[1:] == 1, axis=1)
        for t in (add, mul, neg, inv):
            t.setflags(write=False)
        return cls(p, add, mul, neg, inv)

    @property
    def q(self) -> int:
        return self.add.shape[0]

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    @staticmethod
    def canonical(q: int) -> "LabelField":
        """Label arithmetic of the stand-alone field GF(q) (tower with m = 1)."""
        p, s = prime_power(q)
        return build_tower(p, s, 1, 1, 1).label_field

    def same_as(self, other: "LabelField") -> bool:
        return self.q == other.q and np.array_equal(self.add, other.add)


def canonical_relabeling(tower: FieldTower) -> np.ndarray:
    """Permutation taking the tower's GF(q) labels to the canonical GF(q) labels.

    It is the field isomorphism sending beta to the first canonical generator
    power with matching additive structure.
    """
    src = tower.label_field
    dst = LabelField.canonical(tower.q)
    q = tower.q
    j = np.arange(q - 1)
    for k in range(1, max(q - 1, 2)):
        if math.gcd(k, q - 1) != 1:
            continue
        perm = np.concatenate(([0], 1 + (k * j) % (q - 1)))
        if np.array_equal(perm[src.add[1]], dst.add[1, perm]):
            return perm
    raise AssertionError("no isomorphism found")  # pragma: no cover


@lru_cache(maxsize=8)
def _label_field(p: int, s: int, m: int) -> "LabelField":
    return build_tower(p, s, m, 1, 1)._build_label_field()


@lru_cache(maxsize=16)
def _field_tables(p: int, n: int):
    """Modulus, primitive element and exp/log/Zech tables of GF(p^n)."""
    f = find_modulus(p, n)
    alpha = find_primitive(f, p)
    exp = _power_table(alpha, f, p)
    size = p**n
    log = np.full(size, -1, dtype=np.int64)
    log[exp] = np.arange(size - 1)
    if np.any(log[1:] < 0):
        raise AssertionError("alpha is not primitive")
    d0 = exp % p
    one_plus = exp - d0 + (d0 + 1) % p
    zech = np.where(one_plus == 0, 0, log[one_plus] + 1)
    for t in (exp, log, zech):
        t.setflags(write=False)
    return f, alpha, exp, log, zech


@lru_cache(maxsize=4)
def _add_table(p: int, n: int) -> np.ndarray:
    """Index-level addition table of GF(p^n), built by adding encodings digit-wise."""
    _, _, exp, log, _ = _field_tables(p, n)
    size = p**n
    enc = np.concatenate(([0], exp)).astype(np.int32)
    if p == 2:
        s = enc[:, None] ^ enc[None, :]
    else:
        s = np.zeros((size, size), dtype=np.int32)
        w = 1
        while w < size:
            d = (enc // w) % p
            s += ((d[:, None] + d[None, :]) % p) * w
            w *= p
    back = np.where(np.arange(size) == 0, 0, log + 1).astype(np.uint16)
    table = back[s]
    table.setflags(write=False)
    return table


@lru_cache(maxsize=64)
def build_tower(p: int, s: int, m: int, m1: int, m2: int, *, max_field_bits: int = DEFAULT_MAX_FIELD_BITS) -> FieldTower:
    """Construct GF(p^(s*m)) with subfields GF(q^m1), GF(q^m2); deterministic."""
    for name, v in (("s", s), ("m", m), ("m1", m1), ("m2", m2)):
        if not isinstance(v, int) or v < 1:
            raise ParameterError(f"{name} must be a positive integer, got {v!r}")
    if not is_prime(p):
        raise ParameterError(f"p={p} is not prime")
    if m % m1:
        raise ParameterError(f"m1={m1} does not divide m={m}")
    if m % m2:
        raise ParameterError(f"m2={m2} does not divide m={m}")
    n = s * m
    if p**n > 1 << max_field_bits:
        raise BudgetExceeded(f"field size {p}^{n} exceeds 2^{max_field_bits}")

    f, alpha, exp, log, zech = _field_tables(p, n)
    return FieldTower(p, s, m, m1, m2, f, alpha, exp, log, zech)


def element_arith(tower: FieldTower, a, b, op: str):
    """Dispatch add/mul/inv/pow; for inv ``b`` is ignored, for pow it is the exponent."""
    if op == "add":
        return tower.add(a, b)
    if op == "mul":
        return tower.mul(a, b)
    if op == "inv":
        return tower.inv(a)
    if op == "pow":
        return tower.pow(a, b)
    raise ValueError(f"unknown op {op!r}")


def _check_pair(tower: FieldTower, x, a: int, b: int) -> None:
    tower._check_degree(a)
    if b < 1 or a % b:
        raise ParameterError(f"{b} does not divide {a}")
    if not np.all(tower.in_subfield(x, a)):
        raise NotInSubfield(f"element not in GF(q^{a})")


def rel_trace(tower: FieldTower, x, a: int, b: int):
    """Tr_{q^a/q^b}(x) = sum_{j < a/b} x^(q^(b*j))."""
    _check_pair(tower, x, a, b)
    return _out(tower._frobenius_sum(x, a // b, tower.s * b))


def rel_norm(tower: FieldTower, x, a: int, b: int):
    """N_{q^a/q^b}(x) = x^((q^a - 1) / (q^b - 1))."""
    _check_pair(tower, x, a, b)
    q = tower.q
    return tower.pow(x, (q**a - 1) // (q**b - 1))


def subfield_label(tower: FieldTower, x):
    return tower.label(x)
