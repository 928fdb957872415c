"""Exact moments of the state count for uniformly random symbols.

Under uniform symbols the binary state follows a two-state Markov chain with
second eigenvalue mu = t/N.  All moments here are exact ``Fraction`` values.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .core import GpkDecomposition
from .errors import DegenerateChain, DegenerateDistribution


@dataclass(frozen=True)
class MarkovChain:
    mu: Fraction
    pi0: Fraction
    pi1: Fraction
    transition: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]
    xi: float  # correlation length 1/ln(N/t); 0.0 when t = 0

    def is_stationary(self, dist: tuple[Fraction, Fraction] | None = None) -> bool:
        p0, p1 = dist if dist is not None else (self.pi0, self.pi1)
        (m00, m01), (m10, m11) = self.transition
        return (p0 * m00 + p1 * m10, p0 * m01 + p1 * m11) == (p0, p1)


def markov_chain(gpk: GpkDecomposition) -> MarkovChain:
    g, t, k, N = gpk.g, gpk.t, gpk.k, gpk.N
    if g + k == 0:
        raise DegenerateChain(f"{gpk} has only PROP symbols; the chain is the identity")
    trans = (
        (Fraction(t + k, N), Fraction(g, N)),
        (Fraction(k, N), Fraction(g + t, N)),
    )
    xi = 0.0 if t == 0 else 1.0 / math.log(N / t)
    return MarkovChain(
        mu=Fraction(t, N),
        pi0=Fraction(k, g + k),
        pi1=Fraction(g, g + k),
        transition=trans,
        xi=xi,
    )


def autocorrelation(gpk: GpkDecomposition, m: int) -> Fraction:
    if m < 0:
        raise ValueError("lag must be nonnegative")
    return markov_chain(gpk).mu ** m


def expected_propagation(gpk: GpkDecomposition) -> tuple[Fraction, Fraction]:
    """(E[P*]/L, E[P*]/E[#state 1]) in the stationary regime."""
    chain = markov_chain(gpk)
    prop = Fraction(gpk.t, gpk.N)
    return prop * chain.pi1, prop


class Regime(enum.Enum):
    STATIONARY = "stationary"
    TRANSIENT = "transient"


@dataclass(frozen=True)
class MomentReport:
    L: int
    mean: Fraction
    variance: Fraction
    regime: Regime

    @property
    def dispersion(self) -> Fraction:
        if self.mean == 0:
            raise DegenerateDistribution("state count is identically zero")
        return self.variance / self.mean


def _check_length(L: int) -> None:
    if L < 1:
        raise ValueError("L must be a positive integer")


def stationary_moments(gpk: GpkDecomposition, L: int) -> MomentReport:
    """Moments of nu = sigma_1 + ... + sigma_L with sigma_0 drawn from pi."""
    _check_length(L)
    c = markov_chain(gpk)
    mu = c.mu
    mean = L * c.pi1
    var = c.pi1 * c.pi0 * (L * (1 + mu) / (1 - mu) - 2 * mu * (1 - mu**L) / (1 - mu) ** 2)
    report = MomentReport(L, mean, var, Regime.STATIONARY)
    if mean == 0:
        raise DegenerateDistribution(f"{gpk} never reaches state 1")
    return report


def stationary_variance_direct(gpk: GpkDecomposition, L: int) -> Fraction:
    """Double sum of pi1 pi0 mu^|k-j| over 1 <= j, k <= L."""
    c = markov_chain(gpk)
    base = c.pi1 * c.pi0
    return sum((base * c.mu ** abs(k - j) for j in range(1, L + 1) for k in range(1, L + 1)), Fraction(0))


def asymptotic_dispersion(gpk: GpkDecomposition) -> Fraction:
    """k(g + k + 2t) / (g + k)^2."""
    markov_chain(gpk)
    g, t, k = gpk.g, gpk.t, gpk.k
    if g == 0:
        raise DegenerateDistribution(f"{gpk} never reaches state 1")
    return Fraction(k * (g + k + 2 * t), (g + k) ** 2)


def transient_marginals(gpk: GpkDecomposition, L: int) -> list[Fraction]:
    """P(sigma_k = 1 | sigma_0 = 0) for k = 0..L."""
    c = markov_chain(gpk)
    out, power = [], Fraction(1)
    for _ in range(L + 1):
        out.append(c.pi1 * (1 - power))
        power *= c.mu
    return out


def transient_covariance(gpk: GpkDecomposition, j: int, k: int) -> Fraction:
    """Cov(sigma_j, sigma_k) from sigma_0 = 0, for 1 <= j <= k."""
    c = markov_chain(gpk)
    if j == k:
        p = c.pi1 * (1 - c.mu**j)
        return p * (1 - p)
    mj = c.mu**j
    return c.pi1 * (1 - mj) * c.mu ** (k - j) * (c.pi0 + c.pi1 * mj)


def transient_moments(gpk: GpkDecomposition, L: int, direct: bool = False) -> MomentReport:
    """Moments of nu from sigma_0 = 0.

    The default path sums each row of covariances as a geometric series
    (O(L) exact terms); ``direct=True`` adds every pair, O(L^2).
    """
    _check_length(L)
    c = markov_chain(gpk)
    mu, pi0, pi1 = c.mu, c.pi0, c.pi1
    mean = pi1 * (L - mu * (1 - mu**L) / (1 - mu))
    if direct:
        var = sum((transient_covariance(gpk, k, k) for k in range(1, L + 1)), Fraction(0))
        var += 2 * sum(
            (transient_covariance(gpk, j, k) for j in range(1, L + 1) for k in range(j + 1, L + 1)),
            Fraction(0),
        )
    else:
        powers = [Fraction(1)]
        geo = [Fraction(0)]  # geo[n] = mu + ... + mu^n
        for _ in range(L):
            powers.append(powers[-1] * mu)
            geo.append(geo[-1] + powers[-1])
        var = Fraction(0)
        for j in range(1, L + 1):
            p = pi1 * (1 - powers[j])
            var += p * (1 - p)
            var += 2 * pi1 * (1 - powers[j]) * (pi0 + pi1 * powers[j]) * geo[L - j]
    if mean == 0:
        raise DegenerateDistribution(f"{gpk} never reaches state 1")
    return MomentReport(L, mean, var, Regime.TRANSIENT)
