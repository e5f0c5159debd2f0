"""Griesmer, sphere-packing and Cadambe-Mazumdar bounds, in exact integer arithmetic.

The largest dimension of an [n, ., d]_q code is not computable in general; like
the usual hand calculations, the locality bound uses the Griesmer upper bound on
that dimension as a stand-in, so "optimal" means optimal with respect to the
Griesmer-relaxed bound.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb

from .errors import ParameterError


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def griesmer_min_length(k: int, d: int, q: int) -> int:
    """sum_{i<k} ceil(d / q^i)."""
    if k < 1 or d < 1 or q < 2:
        raise ParameterError("need k >= 1, d >= 1, q >= 2")
    return sum(_ceil_div(d, q**i) for i in range(k))


def griesmer_k_upper(n: int, d: int, q: int) -> int:
    """Largest k with griesmer_min_length(k, d, q) <= n; 0 if there is none."""
    if d < 1 or q < 2:
        raise ParameterError("need d >= 1, q >= 2")
    k, length = 0, 0
    # once q^i >= d every further term is 1, so the loop ends after at most n steps
    while True:
        length += _ceil_div(d, q**k)
        if length > n:
            return k
        k += 1


def griesmer_optimal(n: int, k: int, d: int, q: int) -> bool:
    """No [n, k, d+1]_q code is allowed by the Griesmer bound."""
    return griesmer_min_length(k, d + 1, q) > n


def sphere_packing_distance_optimal(n: int, k: int, d: int, q: int) -> bool:
    """True iff an [n, k, d+1]_q code would violate the Hamming bound."""
    if n < 1 or k < 0 or d < 1 or q < 2:
        raise ParameterError("need n >= 1, k >= 0, d >= 1, q >= 2")
    t = d // 2  # correction radius of distance d + 1
    ball = sum(comb(n, i) * (q - 1) ** i for i in range(t + 1))
    return q**k * ball > q**n


def cm_terms(n: int, d: int, q: int, r: int) -> list[tuple[int, int, int]]:
    """(t, proxy for k_opt(n - t(r+1), d), term) for t = 1 .. floor(n / (r+1))."""
    if r < 1 or n <= r:
        raise ParameterError("need r >= 1 and n > r")
    out = []
    for t in range(1, n // (r + 1) + 1):
        rest = n - t * (r + 1)
        kopt = griesmer_k_upper(rest, d, q) if rest >= d else 0
        out.append((t, kopt, t * r + kopt))
    return out


def cm_locality_bound(n: int, d: int, q: int, r: int) -> int:
    """min over t of t r + k_opt(n - t(r+1), d), with the Griesmer proxy for k_opt."""
    terms = cm_terms(n, d, q, r)
    if not terms:
        raise ParameterError(f"n = {n} too short for locality {r}")
    return min(term for _, _, term in terms)


@dataclass(frozen=True)
class BoundReport:
    n: int
    k: int
    d: int
    q: int
    r: int
    griesmer_min_length: int
    griesmer_optimal: bool
    sphere_packing_distance_optimal: bool
    cm_upper: int
    cm_verdict: str  # optimal | almost-optimal | neither
    kopt_proxy: str = "griesmer"  # the verdict is relative to the Griesmer-relaxed bound

    def to_json(self) -> dict:
        return asdict(self)


def cm_verdict(k: int, upper: int) -> str:
    if k == upper:
        return "optimal"
    if k == upper - 1:
        return "almost-optimal"
    return "neither"


def bound_report(n: int, k: int, d: int, q: int, r: int = 2) -> BoundReport:
    upper = cm_locality_bound(n, d, q, r)
    return BoundReport(
        n=n,
        k=k,
        d=d,
        q=q,
        r=r,
        griesmer_min_length=griesmer_min_length(k, d, q),
        griesmer_optimal=griesmer_optimal(n, k, d, q),
        sphere_packing_distance_optimal=sphere_packing_distance_optimal(n, k, d, q),
        cm_upper=upper,
        cm_verdict=cm_verdict(k, upper),
    )
