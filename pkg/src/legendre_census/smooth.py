"""Restricted smooth sets: products of primes p <= y with p = 1 mod 8, coprime to q.

The empty product 1 always belongs.  Enumeration is depth-first over the
sorted prime list with running-product pruning, so the cost is proportional to
the output size times the prime count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import sieve_primes
from .errors import ContractError


@dataclass(frozen=True)
class SmoothSetSpec:
    """Bounds for a restricted smooth set: elements <= x, primes <= y, coprime to q."""

    x: int
    y: int
    q: int = 1

    def __post_init__(self):
        if self.x < 1:
            raise ContractError(f"x must be >= 1, got {self.x}")
        if self.y < 2:
            raise ContractError(f"y must be >= 2, got {self.y}")
        if self.q < 1:
            raise ContractError(f"q must be >= 1, got {self.q}")


def generating_primes(spec: SmoothSetSpec) -> list[int]:
    """The primes p <= y with p = 1 mod 8 and p not dividing q, ascending."""
    return [p for p in sieve_primes(spec.y) if p % 8 == 1 and spec.q % p != 0]


def enumerate_smooth(spec: SmoothSetSpec) -> list[int]:
    """All elements of the restricted smooth set, ascending, no duplicates."""
    primes = generating_primes(spec)
    x = spec.x
    out: list[int] = []

    def descend(start: int, prod: int) -> None:
        out.append(prod)
        for j in range(start, len(primes)):
            nxt = prod * primes[j]
            if nxt > x:
                break
            descend(j, nxt)

    descend(0, 1)
    out.sort()
    return out


def count_smooth(spec: SmoothSetSpec) -> int:
    """|S_q(x, y)| by the same pruned traversal, without materializing the set."""
    primes = generating_primes(spec)
    x = spec.x

    def descend(start: int, prod: int) -> int:
        total = 1
        for j in range(start, len(primes)):
            nxt = prod * primes[j]
            if nxt > x:
                break
            total += descend(j, nxt)
        return total

    return descend(0, 1)


@dataclass(frozen=True)
class ScalingRow:
    """One observed data point of |S(x, (ln x)**a)| against the x**(1 - 1/a) scale."""

    x: int
    y: int
    a: float
    count: int
    observed_exponent: float | None  # ln(count) / ln(x); None when x = 1
    theorem_exponent_lower: float
    theorem_exponent_upper: float


def smoothness_scaling_table(x_values: list[int], a_values: list[float]) -> list[ScalingRow]:
    """Observed exponents of the smooth-set counts; reports, never judges.

    The smoothness bound is floor((ln x)**a), clamped to 2 (below which the
    generating prime set is empty either way).
    """
    rows = []
    for x in x_values:
        for a in a_values:
            y = max(2, math.floor(math.log(x) ** a)) if x > 1 else 2
            count = count_smooth(SmoothSetSpec(x=x, y=y, q=1))
            exponent = math.log(count) / math.log(x) if x > 1 else None
            rows.append(
                ScalingRow(
                    x=x,
                    y=y,
                    a=a,
                    count=count,
                    observed_exponent=exponent,
                    theorem_exponent_lower=1 - 1 / a,
                    theorem_exponent_upper=1 - 1 / a,
                )
            )
    return rows
