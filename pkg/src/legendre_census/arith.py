"""Exact modular and multiplicative arithmetic on integers below 2**63.

Everything here is a pure function; results are deterministic (no randomized
primality or factoring parameters), so censuses built on top are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import ContractError

INT_LIMIT = 1 << 63

# Deterministic Miller-Rabin witness set covering all n < 2**64 (Sinclair's
# seven bases, verified against the Feitsma pseudoprime tables).
_MR_BASES_64 = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SIMPLE_SIEVE_LIMIT = 10**8
_SEGMENT_SIZE = 1 << 23


def mod_pow(base: int, exp: int, modulus: int) -> int:
    """base**exp mod modulus, exact for any operand sizes."""
    if modulus < 1:
        raise ContractError(f"modulus must be >= 1, got {modulus}")
    if exp < 0:
        raise ContractError(f"exponent must be >= 0, got {exp}")
    return pow(base, exp, modulus)


def _miller_rabin(n: int, bases: tuple[int, ...]) -> bool:
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < 2**63."""
    if n >= INT_LIMIT:
        raise ContractError(f"is_prime supports n < 2**63, got {n}")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    return _miller_rabin(n, _MR_BASES_64)


@lru_cache(maxsize=1 << 16)
def _is_odd_prime(p: int) -> bool:
    return p % 2 == 1 and p > 1 and is_prime(p)


def _jacobi(a: int, n: int) -> int:
    """Jacobi symbol for odd n >= 1; no factoring, no validation."""
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre_symbol(a: int, p: int) -> int:
    """(a|p) for an odd prime p: +1 residue, -1 non-residue, 0 if p | a."""
    if not _is_odd_prime(p):
        raise ContractError(f"legendre_symbol needs an odd prime modulus, got {p}")
    return _jacobi(a % p, p)


def jacobi_symbol(a: int, n: int) -> int:
    """(a|n) for odd n >= 1, computed by binary reciprocity without factoring n."""
    if n < 1 or n % 2 == 0:
        raise ContractError(f"jacobi_symbol needs an odd positive modulus, got {n}")
    return _jacobi(a, n)


# Quadratic-residue tables for small primes; feeds the hot sign-vector loops.
_QR_TABLE_MAX_P = 4096
_qr_tables: dict[int, bytes] = {}


def _nonresidue_table(p: int) -> bytes:
    table = _qr_tables.get(p)
    if table is None:
        work = bytearray([1]) * p
        work[0] = 0
        for i in range(1, (p + 1) // 2):
            work[i * i % p] = 0
        table = bytes(work)
        _qr_tables[p] = table
    return table


def nonresidue_bit(n: int, p: int) -> int:
    """1 if n is a quadratic non-residue mod the odd prime p, else 0."""
    if p <= _QR_TABLE_MAX_P:
        return _nonresidue_table(p)[n % p]
    return 1 if _jacobi(n % p, p) == -1 else 0


def _sieve_simple(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return [i for i, f in enumerate(flags) if f]


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit, ascending; segmented above 10**8."""
    if limit < 2:
        return []
    if limit <= _SIMPLE_SIEVE_LIMIT:
        return _sieve_simple(limit)
    root = math.isqrt(limit)
    base = _sieve_simple(root)
    primes = list(base)
    lo = root + 1
    while lo <= limit:
        hi = min(lo + _SEGMENT_SIZE - 1, limit)
        seg = bytearray([1]) * (hi - lo + 1)
        for p in base:
            start = max(p * p, (lo + p - 1) // p * p)
            if start > hi:
                continue
            seg[start - lo :: p] = bytes(len(range(start, hi + 1, p)))
        primes.extend(i + lo for i, f in enumerate(seg) if f)
        lo = hi + 1
    return primes


@dataclass(frozen=True)
class Factorization:
    """A complete factorization: value = prod p**e over sorted distinct primes."""

    value: int
    factors: tuple[tuple[int, int], ...]

    @property
    def omega(self) -> int:
        return len(self.factors)

    @property
    def radical(self) -> int:
        r = 1
        for p, _ in self.factors:
            r *= p
        return r

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**i for d in divs for i in range(e + 1)]
        return sorted(divs)


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of an odd composite n; deterministic parameter sweep."""
    for c in range(1, 1000):
        y, r, q = 2, 1, 1
        g = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"factor search exhausted its parameter sweep on {n}")


_TRIAL_BOUND = 1000


@lru_cache(maxsize=1 << 15)
def factorize(n: int) -> Factorization:
    """Complete factorization of 1 <= n < 2**63; trial division then Brent rho."""
    if n < 1 or n >= INT_LIMIT:
        raise ContractError(f"factorize supports 1 <= n < 2**63, got {n}")
    value = n
    factors: list[tuple[int, int]] = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    w = 0
    while d <= _TRIAL_BOUND and d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            factors.append((d, e))
        d += wheel[w]
        w = (w + 1) % 8
    big: dict[int, int] = {}
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            big[m] = big.get(m, 0) + 1
            continue
        g = _pollard_brent(m)
        stack.append(g)
        stack.append(m // g)
    factors.extend(sorted(big.items()))
    factors.sort()
    return Factorization(value, tuple(factors))


def factorize_window(lo: int, hi: int) -> list[Factorization]:
    """Factorizations of every integer in [lo, hi] by sieving the window."""
    if lo < 1 or hi < lo:
        raise ContractError(f"window [{lo}, {hi}] must satisfy 1 <= lo <= hi")
    size = hi - lo + 1
    rem = list(range(lo, hi + 1))
    facs: list[list[tuple[int, int]]] = [[] for _ in range(size)]
    for p in sieve_primes(math.isqrt(hi)):
        start = (lo + p - 1) // p * p
        for m in range(start, hi + 1, p):
            i = m - lo
            e = 0
            while rem[i] % p == 0:
                rem[i] //= p
                e += 1
            facs[i].append((p, e))
    out = []
    for i in range(size):
        if rem[i] > 1:
            facs[i].append((rem[i], 1))
        out.append(Factorization(lo + i, tuple(facs[i])))
    return out


def sqrt_mod_prime(a: int, p: int) -> int | None:
    """Canonical square root of a mod an odd prime p, in [0, (p-1)/2]; None if non-residue."""
    if not _is_odd_prime(p):
        raise ContractError(f"sqrt_mod_prime needs an odd prime modulus, got {p}")
    a %= p
    if a == 0:
        return 0
    if _jacobi(a, p) != 1:
        return None
    if p % 4 == 3:
        b = pow(a, (p + 1) // 4, p)
        return min(b, p - b)
    b = _tonelli_shanks(a, p)
    return min(b, p - b)


def _tonelli_shanks(a: int, p: int) -> int:
    q = p - 1
    s = 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while _jacobi(z, p) != -1:
        z += 1
    c = pow(z, q, p)
    b = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        i = 0
        t2 = t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        gain = pow(c, 1 << (m - i - 1), p)
        b = b * gain % p
        c = gain * gain % p
        t = t * c % p
        m = i
    return b


def _unit_sqrt_mod_odd_prime_power(u: int, p: int, f: int) -> list[int]:
    """All roots of w*w = u mod p**f for odd p with p not dividing u."""
    r = sqrt_mod_prime(u % p, p)
    if r is None:
        return []
    k = 1
    while k < f:
        k = min(2 * k, f)
        pk = p**k
        inv = pow(2 * r % pk, -1, pk)
        r = (r - (r * r - u) * inv) % pk
    pf = p**f
    return sorted({r, pf - r})


def _sqrt_roots_odd_prime_power(d: int, p: int, e: int) -> list[int]:
    """All b in [0, p**e) with b*b = d mod p**e, for odd prime p."""
    pe = p**e
    d %= pe
    if d == 0:
        step = p ** ((e + 1) // 2)
        return list(range(0, pe, step))
    v = 0
    u = d
    while u % p == 0:
        u //= p
        v += 1
    if v % 2 == 1:
        return []
    half = p ** (v // 2)
    unit_mod = p ** (e - v)
    roots = set()
    for s in _unit_sqrt_mod_odd_prime_power(u, p, e - v):
        for t in range(half):
            roots.add(half * (s + t * unit_mod) % pe)
    return sorted(roots)


def _unit_sqrt_mod_two_power(u: int, f: int) -> list[int]:
    """All roots of w*w = u mod 2**f for odd u; 2-adic lifting above f = 3."""
    if f == 1:
        return [1]
    if f == 2:
        return [1, 3] if u % 4 == 1 else []
    if u % 8 != 1:
        return []
    r = 1
    for k in range(3, f):
        if (r * r - u) % (1 << (k + 1)):
            r += 1 << (k - 1)
    m = 1 << f
    half = 1 << (f - 1)
    return sorted({r % m, (m - r) % m, (r + half) % m, (half - r) % m})


def _sqrt_roots_two_power(d: int, e: int) -> list[int]:
    """All b in [0, 2**e) with b*b = d mod 2**e; plain enumeration for e <= 3."""
    m = 1 << e
    d %= m
    if e <= 3:
        return [b for b in range(m) if b * b % m == d]
    if d == 0:
        step = 1 << ((e + 1) // 2)
        return list(range(0, m, step))
    v = 0
    u = d
    while u % 2 == 0:
        u //= 2
        v += 1
    if v % 2 == 1:
        return []
    half = 1 << (v // 2)
    unit_mod = 1 << (e - v)
    roots = set()
    for s in _unit_sqrt_mod_two_power(u, e - v):
        for t in range(half):
            roots.add(half * (s + t * unit_mod) % m)
    return sorted(roots)


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    inv = pow(m1 % m2, -1, m2)
    return (r1 + (r2 - r1) * inv % m2 * m1) % (m1 * m2)


def sqrt_mod_4q(d: int, q: int) -> int | None:
    """Least b in [0, 4q) with b*b = d mod 4q, or None when d is a non-square.

    Solves at each prime power of 4q (Hensel/2-adic lifting, with p-adic
    valuation reduction when the prime divides d) and combines every choice of
    component roots by CRT, keeping the smallest.
    """
    if q <= 0:
        raise ContractError(f"sqrt_mod_4q needs q >= 1, got {q}")
    m = 4 * q
    d %= m
    component_roots: list[tuple[int, list[int]]] = []
    for p, e in factorize(m).factors:
        if p == 2:
            roots = _sqrt_roots_two_power(d, e)
        else:
            roots = _sqrt_roots_odd_prime_power(d, p, e)
        if not roots:
            return None
        component_roots.append((p**e, roots))
    best: int | None = None
    moduli = [pe for pe, _ in component_roots]
    for choice in product(*(roots for _, roots in component_roots)):
        r, mm = choice[0], moduli[0]
        for i in range(1, len(moduli)):
            r = _crt_pair(r, mm, choice[i], moduli[i])
            mm *= moduli[i]
        if best is None or r < best:
            best = r
    return best
