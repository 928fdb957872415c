"""State avoidance for operations on arbitrary finite state spaces.

An operation acts on states ``0..s-1``; each symbol ``x`` has a transition
table ``T_x``.  A word is avoiding when its trajectory never enters the
forbidden state.  Counts come from the restricted transfer matrix over the
remaining ``s - 1`` states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .core import GpkDecomposition, SpectralData, chebyshev_u, spectral_from_trace_det
from .errors import (
    DimensionTooLarge,
    InvalidOperation,
    NegationPresent,
    NotApplicable,
    NotBinaryState,
    SeedTooShort,
    StateCountMismatch,
)

MAX_CHARPOLY_DIM = 64


@dataclass(frozen=True)
class StatefulOperation:
    states: int
    alphabet: int
    transitions: tuple[tuple[int, ...], ...]
    forbidden: int
    initial: int = 0

    def __post_init__(self) -> None:
        s, n = self.states, self.alphabet
        if s < 2:
            raise InvalidOperation(f"need at least 2 states, got {s}")
        if n < 1:
            raise InvalidOperation(f"alphabet must be nonempty, got {n}")
        if len(self.transitions) != n:
            raise InvalidOperation(f"expected {n} transition rows, got {len(self.transitions)}")
        for x, row in enumerate(self.transitions):
            if len(row) != s:
                raise InvalidOperation(f"row {x} has {len(row)} entries, expected {s}")
            for target in row:
                if not (0 <= target < s):
                    raise InvalidOperation(f"row {x} maps to invalid state {target}")
        if not (0 <= self.forbidden < s):
            raise InvalidOperation(f"forbidden state {self.forbidden} out of range")
        if not (0 <= self.initial < s):
            raise InvalidOperation(f"initial state {self.initial} out of range")
        if self.initial == self.forbidden:
            raise InvalidOperation("initial state must differ from the forbidden state")

    @classmethod
    def from_function(
        cls,
        states: int,
        symbols: Sequence[object],
        step: Callable[[object, int], int],
        forbidden: int,
        initial: int = 0,
    ) -> "StatefulOperation":
        """Tabulate ``step(symbol, state)`` over every symbol and state."""
        table = tuple(tuple(step(x, sigma) for sigma in range(states)) for x in symbols)
        return cls(states, len(table), table, forbidden, initial)

    def relabel(self, perm: Sequence[int]) -> "StatefulOperation":
        """Rename state ``i`` to ``perm[i]``."""
        if sorted(perm) != list(range(self.states)):
            raise InvalidOperation("perm must be a permutation of the states")
        inv = [0] * self.states
        for old, new in enumerate(perm):
            inv[new] = old
        table = tuple(tuple(perm[row[inv[new]]] for new in range(self.states)) for row in self.transitions)
        return StatefulOperation(self.states, self.alphabet, table, perm[self.forbidden], perm[self.initial])


@dataclass(frozen=True)
class RestrictedTransferMatrix:
    entries: tuple[tuple[int, ...], ...]
    kept_states: tuple[int, ...]  # row/column i corresponds to state kept_states[i]

    @property
    def dim(self) -> int:
        return len(self.kept_states)

    def index_of(self, state: int) -> int:
        return self.kept_states.index(state)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    @property
    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(self.dim))


def restrict(op: StatefulOperation) -> RestrictedTransferMatrix:
    kept = tuple(s for s in range(op.states) if s != op.forbidden)
    pos = {s: i for i, s in enumerate(kept)}
    counts = [[0] * len(kept) for _ in kept]
    for row in op.transitions:
        for i, src in enumerate(kept):
            dst = row[src]
            if dst != op.forbidden:
                counts[i][pos[dst]] += 1
    return RestrictedTransferMatrix(tuple(tuple(r) for r in counts), kept)


def count_avoiding(op: StatefulOperation, L: int) -> list[int]:
    """Exact counts a(0..L) of words whose trajectory avoids the forbidden state."""
    if L < 0:
        raise ValueError("L must be nonnegative")
    m = restrict(op)
    n = m.dim
    vec = [0] * n
    vec[m.index_of(op.initial)] = 1
    out = [1]
    for _ in range(L):
        vec = [sum(vec[i] * m.entries[i][j] for i in range(n)) for j in range(n)]
        out.append(sum(vec))
    return out


def char_poly(m: RestrictedTransferMatrix | Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Monic characteristic polynomial (1, c1, ..., cn) via Faddeev-LeVerrier.

    Every division is exact for integer matrices, so the arithmetic stays in
    Python integers throughout.
    """
    a = [list(r) for r in (m.entries if isinstance(m, RestrictedTransferMatrix) else m)]
    n = len(a)
    if n > MAX_CHARPOLY_DIM:
        raise DimensionTooLarge(f"dimension {n} exceeds {MAX_CHARPOLY_DIM}")
    if any(len(r) != n for r in a):
        raise ValueError("matrix must be square")
    coeffs = [1]
    mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        prod = [[sum(a[i][l] * mk[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += coeffs[-1]
        mk = prod
        am = sum(a[i][l] * mk[l][i] for i in range(n) for l in range(n))
        q, r = divmod(-am, k)
        assert r == 0, "Faddeev-LeVerrier division must be exact over the integers"
        coeffs.append(q)
    return tuple(coeffs)


def recurrence_from_charpoly(cp: Sequence[int], seed: Sequence[int], L: int) -> list[int]:
    """Extend ``seed`` to indices 0..L with a(n) = -(c1 a(n-1) + ... + cm a(n-m))."""
    order = len(cp) - 1
    if cp[0] != 1:
        raise ValueError("characteristic polynomial must be monic")
    if len(seed) < order:
        raise SeedTooShort(f"need {order} seed terms, got {len(seed)}")
    out = list(seed[: L + 1])
    while len(out) <= L:
        out.append(-sum(cp[i] * out[-i] for i in range(1, order + 1)))
    return out


@dataclass(frozen=True)
class UniversalityReport:
    charpoly1: tuple[int, ...]
    charpoly2: tuple[int, ...]
    charpoly_equal: bool
    seeds_equal: bool
    counts_equal: bool
    Lmax: int
    first_difference: int | None

    @property
    def equal(self) -> bool:
        return self.charpoly_equal and self.counts_equal

    @property
    def consistent(self) -> bool:
        # equal char polys plus equal seeds force equal counts
        return not (self.charpoly_equal and self.seeds_equal) or self.counts_equal


def universality_equal(op1: StatefulOperation, op2: StatefulOperation, Lmax: int) -> UniversalityReport:
    if op1.states != op2.states:
        raise StateCountMismatch(f"{op1.states} states vs {op2.states} states")
    cp1, cp2 = char_poly(restrict(op1)), char_poly(restrict(op2))
    c1, c2 = count_avoiding(op1, Lmax), count_avoiding(op2, Lmax)
    order = op1.states - 1
    diff = next((i for i, (a, b) in enumerate(zip(c1, c2)) if a != b), None)
    return UniversalityReport(
        charpoly1=cp1,
        charpoly2=cp2,
        charpoly_equal=cp1 == cp2,
        seeds_equal=c1[:order] == c2[:order],
        counts_equal=diff is None,
        Lmax=Lmax,
        first_difference=diff,
    )


def chebyshev3(op: StatefulOperation) -> SpectralData:
    """Spectral data of the 2x2 restricted matrix of a three-state operation."""
    if op.states != 3:
        raise NotApplicable(f"needs exactly 3 states, got {op.states}")
    (a, b), (c, d) = restrict(op).entries
    det = a * d - b * c
    if det <= 0:
        raise NotApplicable(f"restricted determinant is {det}, must be positive")
    return spectral_from_trace_det(a + d, det)


def chebyshev3_count(op: StatefulOperation, L: int) -> list[float]:
    """Avoiding counts rebuilt from Chebyshev values in binary64.

    a(L) = r^L U_L(x) - (Tr - a(1)) r^(L-1) U_(L-1)(x) with r = sqrt(Det).
    The correction vanishes exactly when the first count equals the trace,
    as it does for every lifted GEN/PROP/KILL operation.
    """
    spec = chebyshev3(op)
    a1 = count_avoiding(op, 1)[1]
    r = math.sqrt(spec.det)
    shift = spec.trace - a1
    out = []
    for ell in range(L + 1):
        value = r**ell * chebyshev_u(ell, spec.coupling)
        if ell >= 1:
            value -= shift * r ** (ell - 1) * chebyshev_u(ell - 1, spec.coupling)
        out.append(value)
    return out


GEN, PROP, KILL = "GEN", "PROP", "KILL"


def classify_symbol(row: Sequence[int]) -> str:
    """Class of a binary-state transition ``(T(0), T(1))``."""
    t0, t1 = row
    if t0 == 1 and t1 == 1:
        return GEN
    if t0 == 0 and t1 == 1:
        return PROP
    if t0 == 0 and t1 == 0:
        return KILL
    raise NegationPresent("symbol maps 0->1 and 1->0")


def gpk_classify(op: StatefulOperation) -> GpkDecomposition:
    if op.states != 2:
        raise NotBinaryState(f"classification needs 2 states, got {op.states}")
    classes = [classify_symbol(row) for row in op.transitions]
    return GpkDecomposition(classes.count(GEN), classes.count(PROP), classes.count(KILL))


def gpk_symbol_class(gpk: GpkDecomposition, x: int) -> str:
    """Canonical layout: GEN on [0, g), PROP on [g, g+t), KILL on [g+t, N)."""
    if x < gpk.g:
        return GEN
    if x < gpk.g + gpk.t:
        return PROP
    return KILL


def gpk_operation(gpk: GpkDecomposition) -> StatefulOperation:
    """Binary-state operation in canonical layout, forbidding state 1."""
    rows = {GEN: (1, 1), PROP: (0, 1), KILL: (0, 0)}
    table = tuple(rows[gpk_symbol_class(gpk, x)] for x in range(gpk.N))
    return StatefulOperation(2, gpk.N, table, forbidden=1, initial=0)


def lift_gpk(gpk: GpkDecomposition) -> StatefulOperation:
    """Three-state operation whose avoiding words are the cascade-free words.

    State 2 records a PROP symbol receiving state 1; its restricted matrix
    is the 2x2 cascade-free transfer matrix.
    """
    rows = {GEN: (1, 1, 2), PROP: (0, 2, 2), KILL: (0, 0, 2)}
    table = tuple(rows[gpk_symbol_class(gpk, x)] for x in range(gpk.N))
    return StatefulOperation(3, gpk.N, table, forbidden=2, initial=0)
