#!/usr/bin/env python3
"""Compare the exponential-sum value multisets with their closed forms on every supported tower.

    python3 scripts/expsum_oracle.py --max-size 16384 --literal-size 64
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from codekit.charsum import (
    delta_brute,
    delta_closed_distribution,
    delta_distribution_brute,
    delta_values,
    omega_brute,
    omega_closed_distribution,
    omega_distribution_brute,
    omega_values,
    supported_towers,
)
from codekit.field import build_tower


@dataclass(frozen=True)
class OracleConfig:
    max_size: int = 1 << 14  # largest p^(s m)
    literal_size: int = 32  # also run the literal triple sum up to this field size


def run(cfg: OracleConfig) -> list:
    bad = []
    for t in supported_towers(cfg.max_size):
        T = build_tower(*t)
        if delta_distribution_brute(T) != delta_closed_distribution(T):
            bad.append((t, "delta"))
        if omega_distribution_brute(T) != omega_closed_distribution(T):
            bad.append((t, "omega"))
        if T.size <= cfg.literal_size:
            a1 = T.generator(T.m1)
            dv, ov = delta_values(T), omega_values(T)
            for j in range(T.q**T.m1 - 1):
                b = T.pow(a1, j)
                if delta_brute(T, b) != dv[j] or omega_brute(T, b, 1) != ov[j]:
                    bad.append((t, f"literal sum at b = alpha1^{j}"))
    return bad


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-size", type=int, default=OracleConfig.max_size)
    ap.add_argument("--literal-size", type=int, default=OracleConfig.literal_size)
    a = ap.parse_args()
    cfg = OracleConfig(a.max_size, a.literal_size)
    t0 = time.perf_counter()
    n = len(supported_towers(cfg.max_size))
    bad = run(cfg)
    print(f"{n} towers, {len(bad)} mismatches, {time.perf_counter() - t0:.1f} s")
    for b in bad[:20]:
        print("  ", b)
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
