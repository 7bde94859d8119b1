"""Sign vectors of integers at the primes of a square-free modulus, and their GF(2) span.

A sign vector records, for each odd prime p dividing the modulus, whether an
integer is a quadratic non-residue mod p (bit 1) or a residue (bit 0).  Sign
vectors add by XOR; the incremental span tracks the subspace they generate.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass

from .arith import factorize, is_prime, nonresidue_bit
from .errors import ContractError

MAX_DIMENSION = 64

# The default congruence class for admissible integers.  Passing
# residue_class=None drops the congruence entirely.
MOD8_CLASS = (8, 1)


@dataclass(frozen=True)
class SquarefreeModulus:
    """An odd square-free modulus together with its sorted odd prime factors."""

    value: int
    primes: tuple[int, ...]

    def __post_init__(self):
        prod = 1
        prev = 1
        for p in self.primes:
            if p <= prev or p % 2 == 0 or not is_prime(p):
                raise ContractError(f"bad prime list {self.primes} for modulus {self.value}")
            prev = p
            prod *= p
        if prod != self.value or self.value % 2 == 0 or self.value < 1:
            raise ContractError(f"{self.value} is not the product of the odd primes {self.primes}")

    @classmethod
    def from_int(cls, q: int) -> "SquarefreeModulus":
        if q < 1 or q % 2 == 0:
            raise ContractError(f"modulus must be odd and positive, got {q}")
        fac = factorize(q)
        if not fac.is_squarefree:
            raise ContractError(f"modulus must be square-free, got {q}")
        return cls(q, tuple(p for p, _ in fac.factors))

    @property
    def k(self) -> int:
        return len(self.primes)

    def divisor(self, mask: int) -> int:
        """The divisor selecting the primes whose bits are set in mask."""
        d = 1
        for i, p in enumerate(self.primes):
            if mask >> i & 1:
                d *= p
        return d


@dataclass(frozen=True)
class SignVector:
    """A k-bit vector over GF(2); bit i set means non-residue at the i-th prime."""

    bits: int
    k: int

    def __post_init__(self):
        if not 0 <= self.k <= MAX_DIMENSION:
            raise ContractError(f"dimension {self.k} outside [0, {MAX_DIMENSION}]")
        if not 0 <= self.bits < (1 << self.k):
            raise ContractError(f"bits {self.bits:#x} do not fit in {self.k} coordinates")

    def __xor__(self, other: "SignVector") -> "SignVector":
        if self.k != other.k:
            raise ContractError(f"dimension mismatch: {self.k} vs {other.k}")
        return SignVector(self.bits ^ other.bits, self.k)

    def bit(self, i: int) -> int:
        return self.bits >> i & 1

    def to_tuple(self) -> tuple[int, ...]:
        return tuple(self.bits >> i & 1 for i in range(self.k))

    def __str__(self) -> str:
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(self.k))


def theta_bits(n: int, primes: tuple[int, ...]) -> int:
    """Raw bitmask of non-residue indicators of n at the given odd primes."""
    bits = 0
    for i, p in enumerate(primes):
        if nonresidue_bit(n, p):
            bits |= 1 << i
    return bits


def theta(n: int, q: SquarefreeModulus) -> SignVector:
    """The sign vector of n at the primes of q; requires gcd(n, q) = 1."""
    if n < 1:
        raise ContractError(f"n must be positive, got {n}")
    if math.gcd(n, q.value) != 1:
        raise ContractError(f"sign vector undefined: gcd({n}, {q.value}) > 1")
    return SignVector(theta_bits(n, q.primes), q.k)


def enumerate_admissible(
    y: int,
    q: SquarefreeModulus,
    extra: int = 1,
    residue_class: tuple[int, int] | None = MOD8_CLASS,
) -> Iterator[int]:
    """Integers n in [1, y] coprime to q.value * extra in the residue class, ascending.

    Streams lazily; never materializes the sequence.
    """
    if extra < 1:
        raise ContractError(f"extra coprimality factor must be >= 1, got {extra}")
    modulus_product = q.value * extra
    if residue_class is None:
        candidates = range(1, y + 1)
    else:
        mod, rem = residue_class
        if mod < 1:
            raise ContractError(f"residue class modulus must be >= 1, got {mod}")
        rem %= mod
        start = rem if rem >= 1 else mod
        candidates = range(start, y + 1, mod)
    gcd = math.gcd
    for n in candidates:
        if gcd(n, modulus_product) == 1:
            yield n


class Gf2Span:
    """Incremental row-echelon basis over GF(2) with rank, for k-bit vectors."""

    __slots__ = ("k", "_pivots")

    def __init__(self, k: int):
        if not 0 <= k <= MAX_DIMENSION:
            raise ContractError(f"dimension {k} outside [0, {MAX_DIMENSION}]")
        self.k = k
        self._pivots: dict[int, int] = {}

    def insert_bits(self, bits: int) -> bool:
        """Insert a raw bitmask; True iff it was independent of the current span."""
        w = bits
        pivots = self._pivots
        while w:
            lead = w.bit_length() - 1
            row = pivots.get(lead)
            if row is None:
                pivots[lead] = w
                return True
            w ^= row
        return False

    def insert(self, v: SignVector) -> bool:
        """Insert a sign vector; True iff the rank grew."""
        if v.k != self.k:
            raise ContractError(f"dimension mismatch: span has k={self.k}, vector k={v.k}")
        return self.insert_bits(v.bits)

    def contains(self, v: SignVector) -> bool:
        if v.k != self.k:
            raise ContractError(f"dimension mismatch: span has k={self.k}, vector k={v.k}")
        w = v.bits
        while w:
            row = self._pivots.get(w.bit_length() - 1)
            if row is None:
                return False
            w ^= row
        return True

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def is_full(self) -> bool:
        return len(self._pivots) == self.k

    @property
    def basis(self) -> tuple[int, ...]:
        """Basis rows with strictly decreasing leading-bit positions."""
        return tuple(self._pivots[lead] for lead in sorted(self._pivots, reverse=True))

    def merge(self, other: "Gf2Span") -> int:
        """Insert another span's basis; returns the number of new independent rows."""
        if other.k != self.k:
            raise ContractError(f"dimension mismatch: {self.k} vs {other.k}")
        return sum(1 for row in other.basis if self.insert_bits(row))

    def copy(self) -> "Gf2Span":
        dup = Gf2Span(self.k)
        dup._pivots = dict(self._pivots)
        return dup
