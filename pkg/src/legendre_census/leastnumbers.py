"""Least-number quantities at a square-free modulus, eligibility, and the census.

For an odd square-free q with k odd prime factors, the quantities computed here
are all least bounds over the admissible integers (coprime, in the configured
residue class, 1 mod 8 by default):

* n_q: least bound by which every one of the 2**k sign patterns is realized;
* g_q: least bound by which the sign vectors span GF(2)^k;
* g_{q,r}: same as g_q but with admissible integers also coprime to r.

A modulus is y-eligible when every proper divisor d has g_{d,q} <= y,
y-exceptional when it is eligible but g_q > y, and y-ineligible otherwise.
Searches carry an explicit cap; running past it yields a first-class
"exceeded cap" outcome, never a guess.
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass
from enum import Enum

from .arith import factorize_window, jacobi_symbol
from .errors import CapExceededError, ContractError, DimensionLimitError
from .signspace import (
    MOD8_CLASS,
    Gf2Span,
    SignVector,
    SquarefreeModulus,
    enumerate_admissible,
    theta_bits,
)
from .smooth import SmoothSetSpec, enumerate_smooth

DEFAULT_CAP = 10_000_000
DIMENSION_LIMIT = 20


class Status(str, Enum):
    GOOD = "good"
    EXCEPTIONAL = "exceptional"
    INELIGIBLE = "ineligible"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class LeastNumberResult:
    """Outcome of a capped least-number search.

    value is None when the search exhausted the cap.  witnesses holds, for
    n_q, the map sign-pattern bits -> least realizing n; for g quantities, the
    ascending n whose sign vectors formed the spanning basis.
    """

    quantity: str
    value: int | None
    cap: int
    witnesses: dict[int, int] | tuple[int, ...]

    @property
    def exceeded(self) -> bool:
        return self.value is None


@dataclass(frozen=True)
class EligibilityStatus:
    """Classification of q at threshold y, with recomputable certificates.

    divisor_g maps every proper divisor d to g_{d,q} (None when that search
    ran past the cap).  For ineligible q, worst_divisor is the least divisor
    proven to offend; otherwise it is the proper divisor with the largest
    g_{d,q} (ties to the smallest divisor), or None for primes.
    """

    status: Status
    y: int
    cap: int
    g_q: int | None
    g_witnesses: tuple[int, ...]
    divisor_g: dict[int, int | None]
    worst_divisor: int | None
    worst_divisor_g: int | None


@dataclass(frozen=True)
class CensusRecord:
    q: int
    omega: int
    a: float
    y: int
    status: EligibilityStatus
    n_q: int | None
    n_q_witnesses: dict[int, int]
    cap: int


@dataclass(frozen=True)
class CensusResult:
    lo: int
    hi: int
    a: float
    cap: int
    records: tuple[CensusRecord, ...]
    skipped_small: int
    skipped_even: int
    skipped_not_squarefree: int

    def counts(self) -> dict[str, int]:
        out = {status.value: 0 for status in Status}
        for record in self.records:
            out[record.status.status.value] += 1
        return out


def threshold_y(q: int, a: float) -> int:
    """floor((ln q)**a), the eligibility threshold used by the census."""
    if q < 2:
        raise ContractError(f"threshold undefined for q = {q}")
    return math.floor(math.log(q) ** a)


def least_n_for_sign(
    q: SquarefreeModulus,
    target: SignVector,
    cap: int,
    residue_class: tuple[int, int] | None = MOD8_CLASS,
) -> int | None:
    """Least admissible n <= cap whose sign vector equals target; None past the cap."""
    if target.k != q.k:
        raise ContractError(f"target has {target.k} coordinates, modulus has {q.k}")
    primes = q.primes
    want = target.bits
    for n in enumerate_admissible(cap, q, 1, residue_class):
        if theta_bits(n, primes) == want:
            return n
    return None


def compute_n_q(
    q: SquarefreeModulus,
    cap: int = DEFAULT_CAP,
    dimension_limit: int = DIMENSION_LIMIT,
    residue_class: tuple[int, int] | None = MOD8_CLASS,
) -> LeastNumberResult:
    """Least bound realizing all 2**k sign patterns, with one witness per pattern."""
    k = q.k
    if k > dimension_limit:
        raise DimensionLimitError(f"omega(q) = {k} exceeds the 2**k budget limit {dimension_limit}")
    total = 1 << k
    primes = q.primes
    seen: dict[int, int] = {}
    for n in enumerate_admissible(cap, q, 1, residue_class):
        bits = theta_bits(n, primes)
        if bits not in seen:
            seen[bits] = n
            if len(seen) == total:
                return LeastNumberResult("n_q", n, cap, seen)
    return LeastNumberResult("n_q", None, cap, seen)


def compute_g(
    q: SquarefreeModulus,
    extra: int = 1,
    cap: int = DEFAULT_CAP,
    residue_class: tuple[int, int] | None = MOD8_CLASS,
) -> LeastNumberResult:
    """Least bound by which the sign vectors of admissible integers span GF(2)^k.

    extra = 1 gives g_q; extra = r demands coprimality to q and r (g_{q,r}).
    """
    quantity = "g_q" if extra == 1 else "g_qr"
    k = q.k
    if k == 0:
        return LeastNumberResult(quantity, 1 if cap >= 1 else None, cap, ())
    span = Gf2Span(k)
    witnesses: list[int] = []
    primes = q.primes
    seen: set[int] = set()
    for n in enumerate_admissible(cap, q, extra, residue_class):
        bits = theta_bits(n, primes)
        if bits in seen:
            continue
        seen.add(bits)
        if span.insert_bits(bits):
            witnesses.append(n)
            if span.is_full:
                return LeastNumberResult(quantity, n, cap, tuple(witnesses))
    return LeastNumberResult(quantity, None, cap, tuple(witnesses))


@dataclass(frozen=True)
class _Survey:
    """One streaming pass over admissible n: completion points of every divisor span."""

    completion: dict[int, int | None]  # prime-subset mask -> n completing that span
    g_witnesses: tuple[int, ...]
    n_q: int | None
    n_q_witnesses: dict[int, int]


def _survey(
    q: SquarefreeModulus,
    cap: int,
    want_nq: bool,
    residue_class: tuple[int, int] | None = MOD8_CLASS,
    dimension_limit: int = DIMENSION_LIMIT,
) -> _Survey:
    k = q.k
    if k > dimension_limit:
        raise DimensionLimitError(f"omega(q) = {k} exceeds the 2**k budget limit {dimension_limit}")
    if k == 0:
        n_q = 1 if cap >= 1 else None
        return _Survey({}, (), n_q, {0: 1} if n_q else {})
    full = (1 << k) - 1
    spans = {mask: Gf2Span(k) for mask in range(1, full + 1)}
    need = {mask: bin(mask).count("1") for mask in range(1, full + 1)}
    completion: dict[int, int | None] = {mask: None for mask in range(1, full + 1)}
    active = list(range(1, full + 1))
    g_witnesses: list[int] = []
    seen: dict[int, int] = {}
    total = 1 << k
    primes = q.primes
    all_patterns_at: int | None = None
    for n in enumerate_admissible(cap, q, 1, residue_class):
        bits = theta_bits(n, primes)
        if bits in seen:
            continue
        seen[bits] = n
        if active:
            still = []
            for mask in active:
                span = spans[mask]
                if span.insert_bits(bits & mask):
                    if mask == full:
                        g_witnesses.append(n)
                    if span.rank == need[mask]:
                        completion[mask] = n
                        continue
                still.append(mask)
            active = still
        if len(seen) == total and all_patterns_at is None:
            all_patterns_at = n
        if not active and (not want_nq or all_patterns_at is not None):
            break
    return _Survey(completion, tuple(g_witnesses), all_patterns_at, seen)


def _status_from_survey(q: SquarefreeModulus, y: int, cap: int, survey: _Survey) -> EligibilityStatus:
    k = q.k
    full = (1 << k) - 1
    divisor_g = dict(sorted((q.divisor(mask), survey.completion[mask]) for mask in range(1, full)))
    g_q = survey.completion.get(full)
    offenders: list[int] = []
    unknown: list[int] = []
    for d, g in divisor_g.items():
        if g is None:
            (offenders if cap >= y else unknown).append(d)
        elif g > y:
            offenders.append(d)
    if offenders:
        worst = min(offenders)
        return EligibilityStatus(
            Status.INELIGIBLE, y, cap, g_q, survey.g_witnesses, divisor_g, worst, divisor_g[worst]
        )
    if unknown or (g_q is None and cap < y):
        return EligibilityStatus(
            Status.INCONCLUSIVE, y, cap, g_q, survey.g_witnesses, divisor_g, None, None
        )
    worst = None
    worst_g = None
    for d, g in divisor_g.items():
        if worst_g is None or g > worst_g:
            worst, worst_g = d, g
    status = Status.EXCEPTIONAL if (g_q is None or g_q > y) else Status.GOOD
    return EligibilityStatus(status, y, cap, g_q, survey.g_witnesses, divisor_g, worst, worst_g)


def classify(
    q: SquarefreeModulus,
    y: int,
    cap: int = DEFAULT_CAP,
    residue_class: tuple[int, int] | None = MOD8_CLASS,
    dimension_limit: int = DIMENSION_LIMIT,
) -> EligibilityStatus:
    """Good / Exceptional / Ineligible classification of q at threshold y.

    Computes g_{d,q} for every proper divisor d and g_q in one streaming pass.
    A search that exhausts the cap still yields a definite status whenever
    cap >= y (the comparison with y is then already decided); otherwise the
    record is marked inconclusive rather than guessed.
    """
    if q.k == 0:
        raise ContractError("classification needs a modulus with at least one prime factor")
    if y < 1:
        raise ContractError(f"threshold must be >= 1, got {y}")
    survey = _survey(q, cap, want_nq=False, residue_class=residue_class, dimension_limit=dimension_limit)
    return _status_from_survey(q, y, cap, survey)


def check_generation_lemma(
    q: SquarefreeModulus,
    cap: int = DEFAULT_CAP,
    residue_class: tuple[int, int] | None = MOD8_CLASS,
) -> bool:
    """True iff n_q <= g_q**k and g_q <= n_q; raises when either search hits the cap."""
    nq = compute_n_q(q, cap, residue_class=residue_class)
    g = compute_g(q, 1, cap, residue_class=residue_class)
    if nq.value is None or g.value is None:
        raise CapExceededError(f"generation check for {q.value} inconclusive below cap {cap}", cap)
    return nq.value <= g.value**q.k and g.value <= nq.value


def check_subspace_lemma(q: SquarefreeModulus, x: int, y: int, cap: int = DEFAULT_CAP) -> bool:
    """For y-exceptional q: every restricted y-smooth n <= x has Jacobi symbol +1 at q."""
    st = classify(q, y, cap)
    if st.status is not Status.EXCEPTIONAL:
        raise ContractError(f"{q.value} is not {y}-exceptional (status: {st.status.value})")
    # y < 2 clamps to the spec minimum; no prime below 3 is 1 mod 8, so the set is unchanged
    for n in enumerate_smooth(SmoothSetSpec(x=x, y=max(2, y), q=q.value)):
        if jacobi_symbol(n, q.value) != 1:
            return False
    return True


@dataclass(frozen=True)
class DescentStep:
    modulus: int
    threshold: int
    status: Status
    offending_divisor: int | None


@dataclass(frozen=True)
class DescentResult:
    """Endpoint of the minimal-offending-divisor descent, with its full trail."""

    divisor: int
    threshold: int
    steps: tuple[DescentStep, ...]
    certificate: EligibilityStatus


def find_exceptional_divisor(
    q: SquarefreeModulus,
    y: int,
    cap: int = DEFAULT_CAP,
    residue_class: tuple[int, int] | None = MOD8_CLASS,
) -> DescentResult:
    """Descend from a y-ineligible q to a divisor that is exceptional at a threshold.

    Repeatedly moves to the least divisor d with g_{d, current} above the
    current threshold; when the current divisor turns out good, the threshold
    drops to p - 1 for p the least prime of q, after which an exceptional
    endpoint is guaranteed.  Every step is re-verified by classify.
    """
    start = classify(q, y, cap, residue_class)
    if start.status is Status.INCONCLUSIVE:
        raise CapExceededError(f"descent start for {q.value} inconclusive below cap {cap}", cap)
    if start.status is not Status.INELIGIBLE:
        raise ContractError(f"{q.value} is {y}-eligible (status: {start.status.value}); descent needs an ineligible start")
    least_prime = q.primes[0]
    steps = [DescentStep(q.value, y, start.status, start.worst_divisor)]
    current = SquarefreeModulus.from_int(start.worst_divisor)
    t = y
    while True:
        st = classify(current, t, cap, residue_class)
        if st.status is Status.EXCEPTIONAL:
            steps.append(DescentStep(current.value, t, st.status, None))
            return DescentResult(current.value, t, tuple(steps), st)
        if st.status is Status.INELIGIBLE:
            steps.append(DescentStep(current.value, t, st.status, st.worst_divisor))
            current = SquarefreeModulus.from_int(st.worst_divisor)
            continue
        if st.status is Status.GOOD:
            lowered = min(t, least_prime - 1)
            if lowered >= t:
                raise ContractError(
                    f"descent stalled: {current.value} is {t}-good and the threshold cannot drop below {t}"
                )
            steps.append(DescentStep(current.value, t, st.status, None))
            t = lowered
            continue
        raise CapExceededError(f"descent at {current.value} inconclusive below cap {cap}", cap)


def _census_chunk(args: tuple) -> tuple[list[CensusRecord], tuple[int, int, int]]:
    lo, hi, a, cap, residue_class, dimension_limit = args
    records: list[CensusRecord] = []
    skipped_small = skipped_even = skipped_not_squarefree = 0
    for fac in factorize_window(lo, hi):
        value = fac.value
        if value <= 2:
            skipped_small += 1
            continue
        if value % 2 == 0:
            skipped_even += 1
            continue
        if not fac.is_squarefree:
            skipped_not_squarefree += 1
            continue
        modulus = SquarefreeModulus(value, tuple(p for p, _ in fac.factors))
        y = threshold_y(value, a)
        survey = _survey(modulus, cap, want_nq=True, residue_class=residue_class, dimension_limit=dimension_limit)
        status = _status_from_survey(modulus, y, cap, survey)
        records.append(
            CensusRecord(
                q=value,
                omega=modulus.k,
                a=a,
                y=y,
                status=status,
                n_q=survey.n_q,
                n_q_witnesses=survey.n_q_witnesses,
                cap=cap,
            )
        )
    return records, (skipped_small, skipped_even, skipped_not_squarefree)


def exceptional_census(
    lo: int,
    hi: int,
    a: float,
    cap: int = DEFAULT_CAP,
    workers: int = 1,
    residue_class: tuple[int, int] | None = MOD8_CLASS,
    dimension_limit: int = DIMENSION_LIMIT,
) -> CensusResult:
    """Classify every odd square-free q in [lo, hi] at threshold floor((ln q)**a).

    Other q are skipped and counted.  The range is split into contiguous
    chunks handled by independent workers; records are merged in order, so the
    output is identical for every worker count.
    """
    if lo < 1 or hi < lo:
        raise ContractError(f"census range [{lo}, {hi}] must satisfy 1 <= lo <= hi")
    if a < 1:
        raise ContractError(f"exponent a must be >= 1, got {a}")
    if workers < 1:
        raise ContractError(f"worker count must be >= 1, got {workers}")
    size = hi - lo + 1
    n_chunks = min(size, max(1, workers * 8))
    step = (size + n_chunks - 1) // n_chunks
    chunks = []
    at = lo
    while at <= hi:
        chunks.append((at, min(at + step - 1, hi), a, cap, residue_class, dimension_limit))
        at += step
    if workers == 1 or len(chunks) == 1:
        parts = [_census_chunk(chunk) for chunk in chunks]
    else:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(processes=workers) as pool:
            parts = pool.map(_census_chunk, chunks)
    records: list[CensusRecord] = []
    skips = [0, 0, 0]
    for chunk_records, chunk_skips in parts:
        records.extend(chunk_records)
        for i in range(3):
            skips[i] += chunk_skips[i]
    return CensusResult(
        lo=lo,
        hi=hi,
        a=a,
        cap=cap,
        records=tuple(records),
        skipped_small=skips[0],
        skipped_even=skips[1],
        skipped_not_squarefree=skips[2],
    )
