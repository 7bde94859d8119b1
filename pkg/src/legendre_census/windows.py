"""Short-interval surveys: radical-g searches, prime-factor counts, rough numbers.

Window convention: [Q, Q + floor(Q**epsilon)], inclusive on both ends; the
floor is fixed here so results are reproducible.  Each survey also has a
*_range variant taking explicit bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import factorize_window, sieve_primes
from .errors import ContractError
from .leastnumbers import compute_g, threshold_y
from .signspace import MOD8_CLASS, SquarefreeModulus


def window_bounds(q_start: int, epsilon: float) -> tuple[int, int]:
    """The inclusive window [Q, Q + floor(Q**epsilon)]."""
    if q_start < 2:
        raise ContractError(f"window start must be >= 2, got {q_start}")
    width = math.floor(q_start**epsilon)
    if width < 1:
        raise ContractError(f"window width floor({q_start}**{epsilon}) = {width} is below 1")
    return q_start, q_start + width


@dataclass(frozen=True)
class IntervalHit:
    q: int
    radical: int
    g_radical: int
    threshold: int


@dataclass(frozen=True)
class IntervalSearchResult:
    lo: int
    hi: int
    a: float
    cap: int
    hits: tuple[IntervalHit, ...]
    inconclusive: tuple[int, ...]  # q whose g-search ran past the cap
    skipped_even: int


def interval_search_range(
    lo: int,
    hi: int,
    a: float,
    cap: int,
    residue_class: tuple[int, int] | None = MOD8_CLASS,
) -> IntervalSearchResult:
    """All odd q in [lo, hi] whose square-free radical r has g_r <= floor((ln r)**a).

    Even q are skipped (sign vectors live at odd primes only) and counted.
    Cap-inconclusive q are listed separately, never as qualifying.
    """
    hits: list[IntervalHit] = []
    inconclusive: list[int] = []
    skipped_even = 0
    for fac in factorize_window(lo, hi):
        q = fac.value
        if q % 2 == 0:
            skipped_even += 1
            continue
        radical = fac.radical
        modulus = SquarefreeModulus(radical, tuple(p for p, _ in fac.factors))
        threshold = threshold_y(radical, a)
        g = compute_g(modulus, 1, cap, residue_class)
        if g.value is None:
            inconclusive.append(q)
        elif g.value <= threshold:
            hits.append(IntervalHit(q=q, radical=radical, g_radical=g.value, threshold=threshold))
    return IntervalSearchResult(
        lo=lo,
        hi=hi,
        a=a,
        cap=cap,
        hits=tuple(hits),
        inconclusive=tuple(inconclusive),
        skipped_even=skipped_even,
    )


def interval_search(
    q_start: int,
    epsilon: float,
    a: float,
    cap: int,
    residue_class: tuple[int, int] | None = MOD8_CLASS,
) -> IntervalSearchResult:
    lo, hi = window_bounds(q_start, epsilon)
    return interval_search_range(lo, hi, a, cap, residue_class)


@dataclass(frozen=True)
class OmegaStatsResult:
    lo: int
    hi: int
    threshold: int
    count: int  # q in the window with at least `threshold` distinct prime factors
    window_size: int
    fraction: float
    big_k: int
    comparison: float  # window_size * (ln ln Q)**(-K)
    lemma_omega_cutoff: float  # (ln ln Q)**(K + 1)


def omega_stats_range(lo: int, hi: int, threshold: int, big_k: int = 1) -> OmegaStatsResult:
    """Count q in [lo, hi] with omega(q) >= threshold; reported, never judged."""
    if threshold < 0:
        raise ContractError(f"threshold must be >= 0, got {threshold}")
    if lo < 3:
        raise ContractError(f"window start must be >= 3, got {lo}")
    count = sum(1 for fac in factorize_window(lo, hi) if fac.omega >= threshold)
    size = hi - lo + 1
    loglog = math.log(math.log(lo))
    return OmegaStatsResult(
        lo=lo,
        hi=hi,
        threshold=threshold,
        count=count,
        window_size=size,
        fraction=count / size,
        big_k=big_k,
        comparison=size * loglog**-big_k,
        lemma_omega_cutoff=loglog ** (big_k + 1),
    )


def omega_stats(q_start: int, epsilon: float, threshold: int, big_k: int = 1) -> OmegaStatsResult:
    lo, hi = window_bounds(q_start, epsilon)
    return omega_stats_range(lo, hi, threshold, big_k)


def mertens_product(z: int) -> Fraction:
    """V(z) = prod over primes p < z of (1 - 1/p), exactly."""
    v = Fraction(1)
    for p in sieve_primes(z - 1):
        v *= Fraction(p - 1, p)
    return v


@dataclass(frozen=True)
class RoughCountResult:
    lo: int
    hi: int
    z: int
    count: int  # q in the window with no prime factor < z
    window_size: int
    mertens: Fraction
    expected: float  # window_size * V(z)
    ratio: float
    z_outside_range: bool  # z above (ln Q)**a, outside the asymptotic's stated range


def rough_count_range(lo: int, hi: int, z: int, a: float = 3.0) -> RoughCountResult:
    """Count integers in [lo, hi] with no prime factor below z, against window * V(z)."""
    if z < 1:
        raise ContractError(f"z must be >= 1, got {z}")
    if lo < 2 or hi < lo:
        raise ContractError(f"window [{lo}, {hi}] must satisfy 2 <= lo <= hi")
    size = hi - lo + 1
    flags = bytearray([1]) * size
    for p in sieve_primes(z - 1):
        start = (lo + p - 1) // p * p
        for m in range(start, hi + 1, p):
            flags[m - lo] = 0
    count = sum(flags)
    v = mertens_product(z)
    expected = size * float(v)
    return RoughCountResult(
        lo=lo,
        hi=hi,
        z=z,
        count=count,
        window_size=size,
        mertens=v,
        expected=expected,
        ratio=count / expected if expected else math.inf,
        z_outside_range=z > math.log(lo) ** a,
    )


def rough_count(q_start: int, epsilon: float, z: int, a: float = 3.0) -> RoughCountResult:
    lo, hi = window_bounds(q_start, epsilon)
    return rough_count_range(lo, hi, z, a)
