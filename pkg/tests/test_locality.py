import itertools

import numpy as np
import pytest

from codekit.code import LinearCode, build_augmented_code, defining_set
from codekit.errors import BudgetExceeded, ParameterError, RepairInfeasible
from codekit.field import build_tower
from codekit.locality import (
    RepairRule,
    check_rule,
    locality_search,
    repair_pair,
    repair_parameters,
    repair_rules,
    scalar_closure_holds,
)

FEASIBLE = [(3, 1, 4, 4, 2), (2, 2, 4, 4, 2), (5, 1, 4, 4, 2), (3, 1, 6, 2, 3), (7, 1, 2, 1, 2)]


def brute_locality(code: LinearCode) -> int:
    """Worst-case number of helpers over all columns, capped at 3."""
    lf = code.field
    G = code.generator.T.astype(np.int64)
    n, q = len(G), code.q
    worst = 0
    for i in range(n):
        others = [j for j in range(n) if j != i]
        if any(np.array_equal(lf.mul[a, G[j]], G[i]) for j in others for a in range(q)):
            best = 1
        elif any(
            np.array_equal(lf.add[lf.mul[a, G[j]], lf.mul[b, G[z]]], G[i])
            for j, z in itertools.combinations(others, 2)
            for a in range(q)
            for b in range(q)
        ):
            best = 2
        else:
            best = 3
        worst = max(worst, best)
    return worst


@pytest.mark.parametrize("t", FEASIBLE, ids=str)
def test_repair_rules_verify(t):
    T = build_tower(*t)
    D = defining_set(T)
    code = build_augmented_code(T, D)
    rules = repair_rules(T, D, code)
    assert [r.target for r in rules] == list(range(code.n))
    assert all(check_rule(code, r) for r in rules)
    assert all(len(set(r.helpers) | {r.target}) == 3 for r in rules)
    assert repair_pair(T, D, 0, code) == rules[0]
    assert locality_search(code) == 2


def test_repair_parameters_smallest():
    T = build_tower(5, 1, 4, 4, 2)
    prm = repair_parameters(T)
    assert prm.t == 1 and prm.s == 1
    T = build_tower(7, 1, 2, 1, 2)  # gcd(2, 6) = 2
    assert repair_parameters(T).t == 2


def test_infeasible_construction():
    with pytest.raises(RepairInfeasible):
        repair_parameters(build_tower(3, 1, 6, 3, 2))
    with pytest.raises(ParameterError):
        repair_parameters(build_tower(2, 1, 6, 6, 2))


def test_broken_rule_is_rejected():
    T = build_tower(3, 1, 4, 4, 2)
    code = build_augmented_code(T)
    r = repair_rules(T)[3]
    other = 3 - r.coefficients[0]  # the other nonzero label of GF(3)
    assert not check_rule(code, RepairRule(r.target, r.helpers, (other, r.coefficients[1])))
    assert not check_rule(code, RepairRule(r.target, (r.target, r.helpers[1]), r.coefficients))


@pytest.mark.parametrize(
    "t", [(3, 1, 2, 1, 2), (3, 1, 4, 1, 2), (3, 1, 4, 4, 2), (5, 1, 4, 1, 2), (2, 1, 4, 4, 2), (7, 1, 2, 1, 2)],
    ids=str,
)
def test_search_matches_brute_force(t):
    code = build_augmented_code(build_tower(*t))
    assert locality_search(code) == brute_locality(code)


def test_search_small_codes():
    # repetition code: every column repeats another
    assert locality_search(LinearCode(3, np.ones((1, 4), dtype=np.int64))) == 1
    # [3, 2] code with columns e1, e2, e1 + e2
    G = np.array([[1, 0, 1], [0, 1, 1]])
    assert locality_search(LinearCode(3, G)) == 2
    assert locality_search(LinearCode(3, G), r_max=1) == 2
    # e1, e2, e3: no column depends on the others
    assert locality_search(LinearCode(2, np.eye(3, dtype=np.int64))) == 3
    with pytest.raises(ParameterError):
        locality_search(LinearCode(2, G), r_max=0)
    with pytest.raises(BudgetExceeded):
        locality_search(LinearCode(2, G), max_columns=2)


def test_counterexample_tower():
    # gcd(m/m1, q-1) = q-1 and the code really needs three helpers for some column
    code = build_augmented_code(build_tower(3, 1, 4, 1, 2))
    assert locality_search(code) == 3


@pytest.mark.parametrize("t", FEASIBLE + [(3, 1, 6, 3, 2), (2, 1, 6, 2, 3)], ids=str)
def test_scalar_closure(t):
    assert scalar_closure_holds(build_tower(*t))
