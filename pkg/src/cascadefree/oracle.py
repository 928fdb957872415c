"""Ground truth by definition: word enumeration, trajectory simulation and
Monte Carlo sampling.  Nothing here uses transfer matrices or recurrences."""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .avoidance import GEN, PROP, StatefulOperation, classify_symbol
from .core import GpkDecomposition
from .errors import BudgetExceeded, DegenerateDistribution, NegationPresent, SymbolOutOfRange

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "CASCADE_BUDGET"
MC_BLOCK = 4096


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class TrajectoryStats:
    states: tuple[int, ...]
    nu: int
    gcount: int | None
    pstar: int | None


def _binary_classes(op: StatefulOperation) -> list[str] | None:
    if op.states != 2:
        return None
    try:
        return [classify_symbol(row) for row in op.transitions]
    except NegationPresent:
        return None


def simulate_trajectory(op: StatefulOperation, word: Sequence[int]) -> TrajectoryStats:
    """Run ``word`` from the initial state; G and P* only for binary GPK operations."""
    classes = _binary_classes(op)
    state = op.initial
    states = [state]
    gcount = pstar = 0
    for x in word:
        if not (0 <= x < op.alphabet):
            raise SymbolOutOfRange(f"symbol {x} outside 0..{op.alphabet - 1}")
        if classes is not None:
            if classes[x] == GEN:
                gcount += 1
            elif classes[x] == PROP and state == 1:
                pstar += 1
        state = op.transitions[x][state]
        states.append(state)
    nu = sum(1 for s in states[1:] if s == 1)
    if classes is None:
        return TrajectoryStats(tuple(states), nu, None, None)
    return TrajectoryStats(tuple(states), nu, gcount, pstar)


def _check_budget(N: int, L: int, budget: int | None) -> None:
    budget = default_budget() if budget is None else budget
    if N**L > budget:
        raise BudgetExceeded(f"{N}^{L} = {N**L} words exceeds budget {budget}")


def _count_words(N: int, L: int, accept: Callable[[tuple[int, ...]], bool], workers: int) -> int:
    """Count accepted words in lexicographic order, split by leading symbol.

    Partitioning only changes which process sums which slice; integer totals
    are identical for any worker count.
    """
    if L == 0:
        return int(accept(()))
    if workers <= 1:
        return sum(_count_prefix(N, L, accept, head) for head in range(N))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(_count_prefix, [N] * N, [L] * N, [accept] * N, range(N)))


def _count_prefix(N: int, L: int, accept: Callable[[tuple[int, ...]], bool], head: int) -> int:
    return sum(1 for tail in itertools.product(range(N), repeat=L - 1) if accept((head, *tail)))


class _NoPropAfterState1:
    """Definition test: no PROP symbol receives state 1."""

    def __init__(self, gpk: GpkDecomposition) -> None:
        self.g, self.gt = gpk.g, gpk.g + gpk.t

    def __call__(self, word: tuple[int, ...]) -> bool:
        state = 0
        for x in word:
            if x < self.g:
                state = 1
            elif x < self.gt:
                if state:
                    return False
            else:
                state = 0
        return True


class _NoGenThenProp:
    """Adjacency test: no GEN symbol directly followed by a PROP symbol."""

    def __init__(self, gpk: GpkDecomposition) -> None:
        self.g, self.gt = gpk.g, gpk.g + gpk.t

    def __call__(self, word: tuple[int, ...]) -> bool:
        g, gt = self.g, self.gt
        return not any(a < g and g <= b < gt for a, b in zip(word, word[1:]))


class _Avoids:
    def __init__(self, op: StatefulOperation) -> None:
        self.rows, self.start, self.bad = op.transitions, op.initial, op.forbidden

    def __call__(self, word: tuple[int, ...]) -> bool:
        state = self.start
        for x in word:
            state = self.rows[x][state]
            if state == self.bad:
                return False
        return True


def brute_count_cascade_free(
    gpk: GpkDecomposition, L: int, budget: int | None = None, workers: int = 1
) -> int:
    _check_budget(gpk.N, L, budget)
    return _count_words(gpk.N, L, _NoPropAfterState1(gpk), workers)


def brute_count_adjacency(
    gpk: GpkDecomposition, L: int, budget: int | None = None, workers: int = 1
) -> int:
    _check_budget(gpk.N, L, budget)
    return _count_words(gpk.N, L, _NoGenThenProp(gpk), workers)


def brute_count_avoiding(
    op: StatefulOperation, L: int, budget: int | None = None, workers: int = 1
) -> int:
    _check_budget(op.alphabet, L, budget)
    return _count_words(op.alphabet, L, _Avoids(op), workers)


def compositions(N: int) -> Iterable[GpkDecomposition]:
    """Every (g, t, k) with g + t + k = N."""
    for g in range(N + 1):
        for t in range(N + 1 - g):
            yield GpkDecomposition(g, t, N - g - t)


def legendre_valuation(n: int, p: int) -> int:
    """Exponent of p in n!, as sum of floor(n / p^i)."""
    total, q = 0, p
    while q <= n:
        total += n // q
        q *= p
    return total


def binomial_valuation(m: int, n: int, p: int) -> int:
    """Exponent of p in C(m + n, m)."""
    return legendre_valuation(m + n, p) - legendre_valuation(m, p) - legendre_valuation(n, p)


# --- Monte Carlo -------------------------------------------------------------


def _block_words(seed: int, block: int, rows: int, L: int, N: int) -> np.ndarray:
    # Philox keyed by (seed, block): a block's stream never depends on other blocks
    bitgen = np.random.Philox(key=np.array([seed, block], dtype=np.uint64))
    return np.random.Generator(bitgen).integers(0, N, size=(rows, L), dtype=np.int64)


def sample_words(seed: int, start: int, stop: int, L: int, N: int) -> np.ndarray:
    """Words for sample indices start..stop-1; row i depends only on (seed, i)."""
    out = []
    first, last = start // MC_BLOCK, (stop - 1) // MC_BLOCK
    for block in range(first, last + 1):
        words = _block_words(seed, block, MC_BLOCK, L, N)
        lo = max(start - block * MC_BLOCK, 0)
        hi = min(stop - block * MC_BLOCK, MC_BLOCK)
        out.append(words[lo:hi])
    return np.concatenate(out) if out else np.empty((0, L), dtype=np.int64)


def state_counts(gpk: GpkDecomposition, words: np.ndarray) -> np.ndarray:
    """Vectorised trajectory run: nu for each row of ``words``, from state 0."""
    state = np.zeros(words.shape[0], dtype=bool)
    nu = np.zeros(words.shape[0], dtype=np.int64)
    for col in words.T:
        gen = col < gpk.g
        prop = (col >= gpk.g) & (col < gpk.g + gpk.t)
        state = gen | (prop & state)
        nu += state
    return nu


@dataclass(frozen=True)
class MonteCarloEstimate:
    samples: int
    L: int
    seed: int
    mean: float
    variance: float
    dispersion: float
    se_mean: float
    se_variance: float
    se_dispersion: float

    def within(self, value: float, n_se: float = 3.0) -> bool:
        return abs(self.dispersion - value) <= n_se * self.se_dispersion


def _jackknife_se(leave_one_out: np.ndarray) -> float:
    n = leave_one_out.size
    return float(np.sqrt((n - 1) / n * np.sum((leave_one_out - leave_one_out.mean()) ** 2)))


def monte_carlo_dispersion(gpk: GpkDecomposition, L: int, samples: int, seed: int) -> MonteCarloEstimate:
    """Sample D = Var(nu)/E[nu] over uniform words from state 0, with jackknife errors."""
    if samples < 3:
        raise ValueError("need at least 3 samples")
    if L < 1:
        raise ValueError("L must be positive")
    if gpk.g == 0:
        raise DegenerateDistribution(f"{gpk} has no GEN symbol; nu is identically 0")
    nu = state_counts(gpk, sample_words(seed, 0, samples, L, gpk.N)).astype(np.float64)
    if not nu.any():
        raise DegenerateDistribution("every sampled state count is zero")
    n = samples
    s1, s2 = nu.sum(), (nu * nu).sum()
    mean = s1 / n
    var = (s2 - n * mean * mean) / (n - 1)
    # leave-one-out statistics in closed form
    m_loo = (s1 - nu) / (n - 1)
    v_loo = (s2 - nu * nu - (n - 1) * m_loo * m_loo) / (n - 2)
    with np.errstate(divide="ignore", invalid="ignore"):
        d_loo = v_loo / m_loo
    return MonteCarloEstimate(
        samples=n,
        L=L,
        seed=seed,
        mean=float(mean),
        variance=float(var),
        dispersion=float(var / mean),
        se_mean=_jackknife_se(m_loo),
        se_variance=_jackknife_se(v_loo),
        se_dispersion=_jackknife_se(d_loo),
    )

