#!/usr/bin/env python3
"""Verify every tower of the code family up to a field-size limit and summarise the verdicts.

    python3 scripts/family_sweep.py --max-field 4096 --max-enum-bits 20 --json sweep.json
"""

from __future__ import annotations

import argparse
import collections
import json
import sys
import time
from dataclasses import asdict, dataclass

from codekit.errors import BudgetExceeded, RankDeficiency
from codekit.family import FamilyCase, classify_case, verify_family
from codekit.field import LABEL_FIELD_LIMIT, build_tower, divisors, is_prime


@dataclass(frozen=True)
class SweepConfig:
    max_field: int = 1 << 10  # largest q^m
    max_enum_bits: int = 16  # skip towers with more than 2^bits codewords
    locality: bool = True
    max_locality_columns: int = 2048
    json_out: str | None = None


def towers(max_field: int):
    for p in filter(is_prime, range(2, max_field + 1)):
        total = 1
        while p**total <= max_field:
            for s in divisors(total):
                m = total // s
                for m1 in divisors(m):
                    for m2 in divisors(m):
                        yield p, s, m, m1, m2
            total += 1


def run(cfg: SweepConfig) -> dict:
    tally: collections.Counter = collections.Counter()
    rows = []
    t0 = time.perf_counter()
    for t in towers(cfg.max_field):
        p, s, m, m1, m2 = t
        q = p**s
        # budget checks first: building every large prime field just to skip it dominates the run
        if q > LABEL_FIELD_LIMIT:
            tally["alphabet over label-table limit"] += 1
            continue
        if q ** (m1 + 1) > 1 << cfg.max_enum_bits:
            tally["over enumeration budget"] += 1
            continue
        T = build_tower(*t)
        try:
            n = (T.q**T.m - 1) * (T.q**T.m2 - T.q) // (T.q * (T.q**T.m2 - 1)) + 1
            rep = verify_family(T, max_enum_bits=cfg.max_enum_bits,
                                with_locality=cfg.locality and n <= cfg.max_locality_columns)
        except (RankDeficiency, BudgetExceeded) as exc:
            tally[type(exc).__name__] += 1
            continue
        key = "unsupported case" if classify_case(T) is FamilyCase.UNSUPPORTED else "closed form"
        tally[f"{key}: {'pass' if rep.passed else 'FAIL'}"] += 1
        failed = sorted(k for k, v in rep.verdicts.items() if v is False)
        if failed or rep.flags:
            rows.append({"tower": list(t), "case": rep.case, "failed": failed, "flags": rep.flags,
                         "locality": rep.locality})
    return {"config": asdict(cfg), "tally": dict(tally), "noteworthy": rows,
            "seconds": round(time.perf_counter() - t0, 1)}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-field", type=int, default=SweepConfig.max_field)
    ap.add_argument("--max-enum-bits", type=int, default=SweepConfig.max_enum_bits)
    ap.add_argument("--no-locality", action="store_true")
    ap.add_argument("--max-locality-columns", type=int, default=SweepConfig.max_locality_columns)
    ap.add_argument("--json", dest="json_out")
    a = ap.parse_args()
    cfg = SweepConfig(a.max_field, a.max_enum_bits, not a.no_locality, a.max_locality_columns, a.json_out)
    res = run(cfg)
    for k, v in sorted(res["tally"].items()):
        print(f"{k:>28}: {v}")
    for r in res["noteworthy"]:
        print(f"  {tuple(r['tower'])} {r['case']:<11} locality={r['locality']} failed={r['failed']}"
              f"{' (flagged)' if r['flags'] else ''}")
    print(f"{res['seconds']} s")
    if cfg.json_out:
        with open(cfg.json_out, "w") as fh:
            json.dump(res, fh, indent=2, sort_keys=True)
    if any(k.endswith("FAIL") for k in res["tally"]):
        sys.exit(1)


if __name__ == "__main__":
    main()
