"""Locality: explicit two-helper repair rules and an exhaustive locality search.

For q > 2 every column g_i (x_i != 0) of the augmented generator satisfies

    g_i = u * g_j + v * g_z,    x_j = l * x_i,  v = 1 - u,  u * l^(m/m1) = 1,

where g_z is the column of x = 0 (all zeros below the leading 1).  The zero
column is in turn recovered from any such pair.  Exponents are chosen as the
smallest valid ones so rules are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .code import LinearCode, build_augmented_code, defining_set
from .errors import BudgetExceeded, ClosureViolation, ExactnessError, ParameterError, RepairInfeasible
from .field import FieldTower, LabelField, canonical_relabeling

DEFAULT_MAX_COLUMNS = 4096


@dataclass(frozen=True)
class RepairRule:
    """g_target = coefficients[0] * g_helpers[0] + coefficients[1] * g_helpers[1] (canonical labels)."""

    target: int
    helpers: tuple[int, int]
    coefficients: tuple[int, int]

    def to_json(self) -> dict:
        return {"target": self.target, "helpers": list(self.helpers), "coefficients": list(self.coefficients)}


@dataclass(frozen=True)
class RepairParameters:
    t: int
    s: int
    l: int  # noqa: E741  field indices in the tower
    u: int
    v: int


def repair_parameters(tower: FieldTower) -> RepairParameters:
    """Smallest t in (0, q-1) with gcd(m/m1, q-1) | t, smallest s with s*m/m1 = t mod q-1."""
    q = tower.q
    if q == 2:
        raise ParameterError("the repair construction needs q > 2")
    ratio = tower.m // tower.m1
    g = math.gcd(ratio, q - 1)
    ts = [t for t in range(1, q - 1) if t % g == 0]
    if not ts:
        raise RepairInfeasible(f"gcd(m/m1, q-1) = {g} divides no t in (0, {q - 1})")
    t = ts[0]
    s = next(s for s in range(q - 1) if (s * ratio - t) % (q - 1) == 0)
    beta = tower.generator(1)
    l = tower.pow(beta, s)  # noqa: E741
    u = tower.pow(beta, -t)
    v = tower.sub(1, u)
    if tower.mul(u, tower.pow(l, ratio)) != 1:
        raise ExactnessError("u * l^(m/m1) != 1")
    return RepairParameters(t, s, l, u, v)


def _positions(tower: FieldTower, D: np.ndarray) -> np.ndarray:
    pos = np.full(tower.size, -1, dtype=np.int64)
    pos[D] = np.arange(len(D))
    return pos


def check_rule(code: LinearCode, rule: RepairRule) -> bool:
    lf = code.field
    G = code.generator
    (a, b), (u, v) = rule.helpers, rule.coefficients
    if rule.target in rule.helpers or a == b or u == 0:
        return False
    combo = lf.add[lf.mul[u, G[:, a]], lf.mul[v, G[:, b]]]
    return bool(np.array_equal(combo, G[:, rule.target]))


def repair_rules(tower: FieldTower, D=None, code: LinearCode | None = None) -> list[RepairRule]:
    """Repair rule for every column, each verified against the generator."""
    if D is None:
        D = defining_set(tower)
    D = np.asarray(D)
    if code is None:
        code = build_augmented_code(tower, D)
    prm = repair_parameters(tower)
    pos = _positions(tower, D)
    zero = int(pos[0])
    if zero < 0:
        raise ParameterError("0 must belong to the defining set")
    partner = pos[tower.mul(prm.l, D)]
    bad = np.nonzero(partner < 0)[0]
    if len(bad):
        raise ClosureViolation(f"l * x leaves the defining set at column {int(bad[0])}")
    perm = canonical_relabeling(tower)

    def lab(x) -> int:
        return int(perm[tower.label(x)])

    u, v = lab(prm.u), lab(prm.v)
    rules = []
    for i in range(len(D)):
        if i != zero:
            rules.append(RepairRule(i, (int(partner[i]), zero), (u, v)))
            continue
        i0 = 0 if zero != 0 else 1
        vinv = tower.inv(prm.v)
        rules.append(
            RepairRule(zero, (i0, int(partner[i0])), (lab(vinv), lab(tower.neg(tower.mul(prm.u, vinv)))))
        )
    for r in rules:
        if not check_rule(code, r):
            raise ExactnessError(f"repair identity fails for column {r.target}")
    return rules


def repair_pair(tower: FieldTower, D, i: int, code: LinearCode | None = None) -> RepairRule:
    D = np.asarray(D)
    if not 0 <= i < len(D):
        raise ParameterError(f"column {i} out of range")
    return repair_rules(tower, D, code)[i]


def scalar_closure_holds(tower: FieldTower, D=None) -> bool:
    """l * x in D for every x in D and every l in GF(q)*."""
    if D is None:
        D = defining_set(tower)
    mask = np.zeros(tower.size, dtype=bool)
    mask[np.asarray(D)] = True
    scal = tower.subfield_elements(1)[1:]
    return bool(mask[tower.mul(scal[:, None], np.asarray(D)[None, :])].all())


# --------------------------------------------------------------------------
# exhaustive search

def _projective_keys(lf: LabelField, cols: np.ndarray) -> np.ndarray:
    """Integer key of the projective class of each column (rows of ``cols``); 0 for zero columns."""
    cols = np.asarray(cols, dtype=np.int64)
    nz = cols != 0
    has = nz.any(axis=-1)
    first = np.where(has, cols[np.arange(len(cols)), np.argmax(nz, axis=-1)], 1)
    normed = lf.mul[lf.inv[first][:, None], cols].astype(np.int64)
    weights = lf.q ** np.arange(cols.shape[-1], dtype=np.int64)[::-1]
    return np.where(has, normed @ weights, 0)


def locality_search(code: LinearCode, r_max: int = 2, max_columns: int = DEFAULT_MAX_COLUMNS) -> int:
    """Smallest r <= r_max such that every column is a combination of at most r others.

    Only r <= 2 is searched: r_max is clamped to 2 and the "not found" value is
    min(r_max, 2) + 1.
    """
    if r_max < 1:
        raise ParameterError("r_max must be at least 1")
    r_max = min(r_max, 2)
    n, k, q = code.n, code.k, code.q
    if n > max_columns:
        raise BudgetExceeded(f"locality search limited to {max_columns} columns, got {n}")
    if q**k >= 1 << 62:
        raise BudgetExceeded("column keys would overflow")
    lf = code.field
    cols = code.generator.T.astype(np.int64)  # (n, k)
    keys = _projective_keys(lf, cols)
    uniq, inverse, counts = np.unique(keys, return_inverse=True, return_counts=True)

    def covered_by_one(i: int) -> bool:
        return keys[i] == 0 or counts[inverse[i]] > 1

    if all(covered_by_one(i) for i in range(n)):
        return 1
    if r_max < 2:
        return r_max + 1

    scal = np.arange(q)
    for i in range(n):
        if covered_by_one(i):
            continue
        # residual g_i - a * g_j for every helper j != i and scalar a
        res = lf.add[cols[i][None, None, :], lf.neg[lf.mul[scal[None, :, None], cols[:, None, :]]]]
        rk = _projective_keys(lf, res.reshape(-1, k)).reshape(n, q)
        idx = np.clip(np.searchsorted(uniq, rk), 0, len(uniq) - 1)
        found = uniq[idx] == rk
        avail = np.where(found, counts[idx], 0)
        # members of the class other than i and j
        avail = avail - (rk == keys[i]) - (rk == keys[:, None])
        ok = (avail > 0) | (rk == 0)
        ok[i] = False
        if not ok.any():
            return 3
    return 2
