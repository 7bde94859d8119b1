"""Binary quadratic forms: representability, least discriminants, Gauss reduction.

An integer q is properly representable by a form of discriminant d exactly
when d is a square mod 4q; the constructive path builds the form (q, b, c)
from a square root b of -d mod 4q, reduces it, and pulls the representing
point back through the recorded unimodular substitution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .arith import factorize, is_prime, legendre_symbol, sqrt_mod_4q
from .errors import ContractError
from .leastnumbers import least_n_for_sign
from .signspace import SignVector, SquarefreeModulus


@dataclass(frozen=True)
class BinaryQuadraticForm:
    """The form a*x**2 + b*x*y + c*y**2 with discriminant b**2 - 4ac."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.discriminant < 0

    @property
    def is_reduced(self) -> bool:
        """|b| <= a <= c, with b >= 0 on either boundary tie."""
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True


@dataclass(frozen=True)
class UnimodularTransform:
    """The substitution (x, y) -> (alpha*x + beta*y, gamma*x + delta*y), determinant 1."""

    alpha: int
    beta: int
    gamma: int
    delta: int

    def __post_init__(self):
        if self.alpha * self.delta - self.beta * self.gamma != 1:
            raise ContractError(f"transform {self} has determinant != 1")

    @classmethod
    def identity(cls) -> "UnimodularTransform":
        return cls(1, 0, 0, 1)

    def apply(self, x: int, y: int) -> tuple[int, int]:
        return (self.alpha * x + self.beta * y, self.gamma * x + self.delta * y)

    def inverse(self) -> "UnimodularTransform":
        return UnimodularTransform(self.delta, -self.beta, -self.gamma, self.alpha)


@dataclass(frozen=True)
class Representation:
    """A proper representation value = form(x, y) with gcd(x, y) = 1."""

    x: int
    y: int
    form: BinaryQuadraticForm
    value: int

    def __post_init__(self):
        if evaluate_form(self.form, self.x, self.y) != self.value:
            raise ContractError(f"form {self.form} does not evaluate to {self.value} at ({self.x}, {self.y})")
        if math.gcd(self.x, self.y) != 1:
            raise ContractError(f"({self.x}, {self.y}) is not a proper (coprime) point")


def evaluate_form(form: BinaryQuadraticForm, x: int, y: int) -> int:
    """a*x**2 + b*x*y + c*y**2, exact (arbitrary-precision integers, no wrapping)."""
    return form.a * x * x + form.b * x * y + form.c * y * y


def is_representable(q: int, d: int) -> bool:
    """True iff some binary quadratic form of discriminant d properly represents q."""
    if q < 1:
        raise ContractError(f"q must be >= 1, got {q}")
    return sqrt_mod_4q(d, q) is not None


def reduce_form(form: BinaryQuadraticForm) -> tuple[BinaryQuadraticForm, UnimodularTransform]:
    """Gauss-reduce a positive-definite form; returns (reduced, transform).

    The transform T satisfies form(T(x, y)) == reduced(x, y) and has
    determinant 1.  Reduction alternates translations (b into (-a, a]) and
    swaps (x, y) -> (-y, x) when a > c, with b made nonnegative on boundary
    ties.
    """
    if not form.is_positive_definite:
        raise ContractError(f"reduction needs a positive-definite form, got {form}")
    a, b, c = form.a, form.b, form.c
    al, be, ga, de = 1, 0, 0, 1
    while True:
        if b > a or b <= -a:
            t = (a - b) // (2 * a)
            b, c = b + 2 * a * t, a * t * t + b * t + c
            al, be, ga, de = al, al * t + be, ga, ga * t + de
        if a > c:
            a, b, c = c, -b, a
            al, be, ga, de = be, -al, de, -ga
            continue
        if a == c and b < 0:
            b = -b
            al, be, ga, de = be, -al, de, -ga
        break
    reduced = BinaryQuadraticForm(a, b, c)
    transform = UnimodularTransform(al, be, ga, de)
    if reduced.discriminant != form.discriminant or not reduced.is_reduced:
        raise AssertionError(f"reduction of {form} broke its invariants: {reduced}")
    return reduced, transform


def represent(q: int, d: int) -> Representation:
    """A proper representation of q by the reduced form of discriminant -d.

    Builds (q, b, (b*b + d) / 4q) from a root b of -d mod 4q taken in [0, 2q),
    reduces it, and maps the representing point (1, 0) through the inverse
    substitution.
    """
    if q < 1 or d < 1:
        raise ContractError(f"represent needs q >= 1 and d >= 1, got q={q}, d={d}")
    b = sqrt_mod_4q(-d, q)
    if b is None:
        raise ContractError(f"{q} is not representable with discriminant {-d}")
    b %= 2 * q
    quotient, remainder = divmod(b * b + d, 4 * q)
    if remainder:
        raise AssertionError(f"square root {b} of {-d} mod {4 * q} lost its defining congruence")
    seed = BinaryQuadraticForm(q, b, quotient)
    reduced, transform = reduce_form(seed)
    x, y = transform.inverse().apply(1, 0)
    return Representation(x=x, y=y, form=reduced, value=q)


class AlmostSquare(NamedTuple):
    """The exact identity u * q = X**2 + v * Y**2 extracted from a representation."""

    u: int
    v: int
    X: int
    Y: int


def almost_square_from_representation(rep: Representation, d: int) -> AlmostSquare:
    a, b = rep.form.a, rep.form.b
    u = 4 * a
    big_x = abs(2 * a * rep.x + b * rep.y)
    big_y = abs(rep.y)
    if u * rep.value != big_x * big_x + d * big_y * big_y:
        raise AssertionError(f"almost-square identity failed for {rep} at discriminant {-d}")
    return AlmostSquare(u=u, v=d, X=big_x, Y=big_y)


def almost_square_decomposition(q: int, d: int) -> AlmostSquare:
    """Integers (u, v, X, Y) with u*q = X**2 + v*Y**2, u = 4a from the reduced form."""
    return almost_square_from_representation(represent(q, d), d)


@dataclass(frozen=True)
class ConstructiveDiscriminant:
    """A discriminant witness d = d0 * p0 built from prescribed symbols at q's primes."""

    d: int
    d0: int
    p0: int
    prescribed: dict[int, int]  # odd prime of q -> required Legendre symbol of d


@dataclass(frozen=True)
class LeastDiscriminantResult:
    q: int
    bound: int
    d: int | None  # least d <= bound with -d a square mod 4q; None when the scan ran out
    root: int | None  # witness b with b*b = -d mod 4q
    constructive: ConstructiveDiscriminant | None
    constructive_failure: str | None


def _constructive_discriminant(q: int, cap: int) -> tuple[ConstructiveDiscriminant | None, str | None]:
    odd_primes = tuple(p for p, _ in factorize(q).factors if p % 2 == 1)
    p0 = 7
    while not (is_prime(p0) and q % p0 != 0):
        p0 += 8
    prescribed = {p: (1 if p % 4 == 1 else -1) for p in odd_primes}
    if odd_primes:
        radical = 1
        for p in odd_primes:
            radical *= p
        modulus = SquarefreeModulus(radical, odd_primes)
        bits = 0
        for i, p in enumerate(odd_primes):
            if prescribed[p] * legendre_symbol(p0, p) == -1:
                bits |= 1 << i
        d0 = least_n_for_sign(modulus, SignVector(bits, len(odd_primes)), cap)
        if d0 is None:
            return None, f"prescribed-sign search at {radical} exceeded cap {cap}"
    else:
        d0 = 1
    d = d0 * p0
    if d % 8 != 7 or not is_representable(q, -d):
        raise AssertionError(f"constructive discriminant {d} for q={q} violates its defining conditions")
    return ConstructiveDiscriminant(d=d, d0=d0, p0=p0, prescribed=prescribed), None


def least_discriminant(q: int, bound: int, n_q_cap: int = 10_000_000) -> LeastDiscriminantResult:
    """Least d <= bound with q representable at discriminant -d, plus the recipe witness.

    The direct scan is the answer; the constructive value (d0 * p0 with
    d0 = 1 mod 8 carrying prescribed symbols at the odd primes of q and p0 the
    least prime = 7 mod 8 not dividing q) certifies the bounded-witness method
    and is reported separately.
    """
    if q < 2:
        raise ContractError(f"least_discriminant needs q >= 2, got {q}")
    if bound < 1:
        raise ContractError(f"bound must be >= 1, got {bound}")
    direct = None
    root = None
    for d in range(1, bound + 1):
        b = sqrt_mod_4q(-d, q)
        if b is not None:
            direct, root = d, b
            break
    constructive, failure = _constructive_discriminant(q, n_q_cap)
    return LeastDiscriminantResult(
        q=q, bound=bound, d=direct, root=root, constructive=constructive, constructive_failure=failure
    )
