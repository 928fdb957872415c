"""Concrete digit-wise operations: base-p addition and doubling, multi-operand
sums, the mod-p sediment model, and the Kummer carry split."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

from .avoidance import StatefulOperation
from .core import GpkDecomposition, count_cascade_free
from .errors import InvalidBase, NotPrime


def _check_base(p: int) -> None:
    if not isinstance(p, int) or p < 2:
        raise InvalidBase(f"base must be an integer >= 2, got {p!r}")


def addition_instance(p: int) -> GpkDecomposition:
    """Digit pairs (a, b): GEN iff a+b >= p, PROP iff a+b = p-1, KILL otherwise."""
    _check_base(p)
    half = p * (p - 1) // 2
    return GpkDecomposition(half, p, half)


def doubling_instance(p: int) -> GpkDecomposition:
    """Single digits d: GEN iff 2d >= p, PROP iff 2d = p-1, KILL iff 2d <= p-2.

    Even bases have no PROP digit, so the determinant is zero there.
    """
    _check_base(p)
    g = sum(1 for d in range(p) if 2 * d >= p)
    t = sum(1 for d in range(p) if 2 * d == p - 1)
    return GpkDecomposition(g, t, p - g - t)


def addition_operation(p: int) -> StatefulOperation:
    """Binary carry state under base-p addition of a digit pair."""
    _check_base(p)
    pairs = list(itertools.product(range(p), repeat=2))
    return StatefulOperation.from_function(2, pairs, lambda ab, c: (ab[0] + ab[1] + c) // p, forbidden=1)


def doubling_operation(p: int) -> StatefulOperation:
    _check_base(p)
    return StatefulOperation.from_function(2, range(p), lambda d, c: (2 * d + c) // p, forbidden=1)


@dataclass(frozen=True)
class ScalingRow:
    p: int
    L: int
    a_carry: int
    a_dbl: int
    scaled: int

    @property
    def match(self) -> bool:
        return self.a_carry == self.scaled


def scaling_law_check(p: int, Lmax: int) -> list[ScalingRow]:
    """Compare a_carry(L) with p^L a_dbl(L) for L = 0..Lmax."""
    carry = count_cascade_free(addition_instance(p), Lmax)
    dbl = count_cascade_free(doubling_instance(p), Lmax)
    return [ScalingRow(p, L, carry[L], dbl[L], p**L * dbl[L]) for L in range(Lmax + 1)]


def _fib_pair(n: int) -> tuple[int, int]:
    # (F(n), F(n+1)) by fast doubling
    if n == 0:
        return 0, 1
    a, b = _fib_pair(n >> 1)
    c = a * (2 * b - a)
    d = a * a + b * b
    return (d, c + d) if n & 1 else (c, d)


def fibonacci(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _fib_pair(n)[0]


def fibonacci_bisection(L: int) -> int:
    """F(2L + 2)."""
    return fibonacci(2 * L + 2)


def ternary_three_sum_instance() -> StatefulOperation:
    """Three base-3 digits plus carry; carry 2 is forbidden."""
    triples = list(itertools.product(range(3), repeat=3))
    return StatefulOperation.from_function(3, triples, lambda x, c: (sum(x) + c) // 3, forbidden=2)


def binary_four_sum_instance() -> StatefulOperation:
    """Four bits plus carry; carry 3 is forbidden."""
    quads = list(itertools.product(range(2), repeat=4))
    return StatefulOperation.from_function(4, quads, lambda x, c: (sum(x) + c) // 2, forbidden=3)


def sediment_instance(p: int, forbidden: int | None = None, initial: int = 0) -> StatefulOperation:
    """States Z/pZ, symbols (a, b), sigma -> sigma + a + b mod p.

    Any single forbidden state gives the same counts; p - 1 is the default.
    """
    _check_base(p)
    if forbidden is None:
        forbidden = p - 1
    pairs = list(itertools.product(range(p), repeat=2))
    return StatefulOperation.from_function(
        p, pairs, lambda ab, s: (s + ab[0] + ab[1]) % p, forbidden=forbidden, initial=initial
    )


class InstanceKind(enum.Enum):
    ADDITION = "carry"
    DOUBLING = "dbl"
    TERNARY_THREE_SUM = "ternary3"
    BINARY_FOUR_SUM = "binary4"
    SEDIMENT = "sediment"


FIXED_BASE = {InstanceKind.TERNARY_THREE_SUM: 3, InstanceKind.BINARY_FOUR_SUM: 2}


@dataclass(frozen=True)
class InstanceDescriptor:
    kind: InstanceKind
    p: int

    def __post_init__(self) -> None:
        _check_base(self.p)
        fixed = FIXED_BASE.get(self.kind)
        if fixed is not None and self.p != fixed:
            raise InvalidBase(f"{self.kind.value} is defined only for base {fixed}")

    @property
    def is_gpk(self) -> bool:
        return self.kind in (InstanceKind.ADDITION, InstanceKind.DOUBLING)

    def gpk(self) -> GpkDecomposition:
        if self.kind is InstanceKind.ADDITION:
            return addition_instance(self.p)
        if self.kind is InstanceKind.DOUBLING:
            return doubling_instance(self.p)
        raise TypeError(f"{self.kind.value} is not a GEN/PROP/KILL instance")

    def operation(self) -> StatefulOperation:
        if self.kind is InstanceKind.ADDITION:
            return addition_operation(self.p)
        if self.kind is InstanceKind.DOUBLING:
            return doubling_operation(self.p)
        if self.kind is InstanceKind.TERNARY_THREE_SUM:
            return ternary_three_sum_instance()
        if self.kind is InstanceKind.BINARY_FOUR_SUM:
            return binary_four_sum_instance()
        return sediment_instance(self.p)


# --- discriminants ---------------------------------------------------------


@dataclass(frozen=True)
class DiscriminantRow:
    p: int
    discriminant: int
    coupling: float


def discriminant_row(p: int) -> DiscriminantRow:
    """Carry discriminant divided by p^2, with the carry coupling p/sqrt(2(p-1)).

    For odd p this equals the doubling discriminant (p-1)^2 + 1 and the
    doubling coupling.  At p = 2 the doubling determinant vanishes, so only
    the carry normalisation gives a finite value.
    """
    gpk = addition_instance(p)
    disc = gpk.N**2 - 4 * gpk.d
    q, r = divmod(disc, p * p)
    assert r == 0
    return DiscriminantRow(p, q, gpk.N / (2 * math.sqrt(gpk.d)))


# --- Kummer ---------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first twelve prime bases; exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class KummerCount:
    total: int
    generated: int
    propagated: int


def kummer_carry_count(m: int, n: int, p: int) -> KummerCount:
    """Split the carries of m + n in base p into generated and propagated ones."""
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    carry = gen = prop = 0
    while m or n:
        s = m % p + n % p
        if s >= p:
            gen += 1
            carry = 1
        elif s == p - 1 and carry:
            prop += 1
        else:
            carry = 0
        m //= p
        n //= p
    return KummerCount(gen + prop, gen, prop)
