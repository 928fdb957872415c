"""Poisson transition for symmetric chains (g = k, started in state 0).

For a symmetric chain the dispersion of the state count depends only on the
second eigenvalue ``mu`` and the length ``L``.  Its long-run limit crosses 1
at mu = 1/3; at finite L the crossing point mu*(L) sits slightly above.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .core import GpkDecomposition, spectral_data
from .errors import InvalidMu, NoInteriorRoot, ToleranceNotMet

ONE_THIRD = Fraction(1, 3)
BRACKET_LO = 1 / 3 + 1e-15
BRACKET_HI = 1 - 1e-9


def _as_mu(mu: Fraction | int | float) -> Fraction:
    mu = Fraction(mu)
    if not (0 < mu < 1):
        raise InvalidMu(f"mu must lie in (0, 1), got {mu}")
    return mu


def _check_length(L: int) -> None:
    if L < 1:
        raise ValueError("L must be a positive integer")


def symmetric_asymptotic_dispersion(mu: Fraction) -> Fraction:
    """(1 + mu) / (2 (1 - mu))."""
    mu = _as_mu(mu)
    return (1 + mu) / (2 * (1 - mu))


def marginal_dispersion(mu: Fraction, k: int) -> Fraction:
    """Variance increment over mean increment at position k."""
    mu = _as_mu(mu)
    if k < 1:
        raise ValueError("k must be a positive integer")
    return symmetric_asymptotic_dispersion(mu) * (1 - mu**k)


def marginal_dispersion_closed(mu: Fraction, L: int) -> Fraction:
    """Position L + 1 marginal, written as (1 + mu^(L+1))/2 + mu (1 - mu^L)/(1 - mu)."""
    mu = _as_mu(mu)
    if L < 0:
        raise ValueError("L must be nonnegative")
    return (1 + mu ** (L + 1)) / 2 + mu * (1 - mu**L) / (1 - mu)


def _dispersion_parts(mu: Fraction, L: int) -> tuple[int, int]:
    """Integer numerator and positive denominator of D(L, mu), not reduced.

    With mu = a/b and B = b^L this is the asymptotic value times S2/S1,
    where S1 = sum (1 - mu^k) and S2 = sum (1 - mu^k)^2 over k = 1..L,
    both summed as geometric series and cleared of denominators.
    """
    a, b = mu.numerator, mu.denominator
    A, B = a**L, b**L
    n1 = a * (B - A)  # mu (1 - mu^L)/(1 - mu) = n1 / (B (b - a))
    n2 = a * a * (B * B - A * A)  # mu^2 (1 - mu^2L)/(1 - mu^2) = n2 / (B^2 (b^2 - a^2))
    d1 = B * (b - a)
    s2 = L * d1 * B * (b + a) - 2 * n1 * B * (b + a) + n2
    s1 = L * d1 - n1
    return s2, 2 * (b - a) * B * s1


def symmetric_dispersion(mu: Fraction, L: int) -> Fraction:
    """Exact D(L, mu) as the asymptotic value times S2/S1."""
    mu = _as_mu(mu)
    _check_length(L)
    return Fraction(*_dispersion_parts(mu, L))


def symmetric_dispersion_direct(mu: Fraction, L: int) -> Fraction:
    """Same quantity with the two sums added term by term."""
    mu = _as_mu(mu)
    _check_length(L)
    terms = [1 - mu**k for k in range(1, L + 1)]
    return symmetric_asymptotic_dispersion(mu) * sum(w * w for w in terms) / sum(terms)


@dataclass(frozen=True)
class PoissonRoot:
    L: int
    mu_star: float
    tol: float
    residual: float
    iterations: int

    @property
    def excess(self) -> float:
        return self.mu_star - 1 / 3

    @property
    def rate(self) -> float:
        return self.L * self.excess


def poisson_root(L: int, tol: float = 1e-12) -> PoissonRoot:
    """Bisection for D(L, mu) = 1 on (1/3, 1).

    Probes sit at binary64 midpoints and decide the sign of D - 1 exactly;
    the loop runs until the bracket is two adjacent doubles, and the
    residual at the returned point is computed exactly.
    """
    _check_length(L)
    if L == 1:
        raise NoInteriorRoot("D(1, mu) = (1 + mu)/2 reaches 1 only at mu = 1")
    if not tol > 0:
        raise ValueError("tol must be positive")

    def sign(x: float) -> int:
        num, den = _dispersion_parts(Fraction(x), L)
        return (num > den) - (num < den)

    lo, hi = BRACKET_LO, BRACKET_HI
    if not (sign(lo) < 0 < sign(hi)):
        raise NoInteriorRoot(f"no sign change on [{lo}, {hi}] for L = {L}")
    iterations = 0
    while True:
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:
            break
        iterations += 1
        if sign(mid) > 0:
            hi = mid
        else:
            lo = mid
    best = min((lo, hi), key=lambda x: abs(symmetric_dispersion(Fraction(x), L) - 1))
    residual = float(abs(symmetric_dispersion(Fraction(best), L) - 1))
    if residual > tol:
        raise ToleranceNotMet(f"residual {residual:.3e} exceeds tol {tol:.3e} at L = {L}")
    return PoissonRoot(L=L, mu_star=best, tol=tol, residual=residual, iterations=iterations)


def convergence_rows(lengths: Iterable[int], tol: float = 1e-12) -> list[PoissonRoot]:
    return [poisson_root(L, tol) for L in lengths]


@dataclass(frozen=True)
class ExpansionCheck:
    mu: Fraction
    L: int
    exact: Fraction
    first_order: Fraction
    coefficient: Fraction  # mu / ((1 - mu)(1 + mu))

    @property
    def residual(self) -> Fraction:
        return self.exact - self.first_order


def asymptotic_expansion_check(mu: Fraction, L: int) -> ExpansionCheck:
    """Compare D(L, mu) with D_inf(mu) [1 - mu / (L (1 - mu)(1 + mu))]."""
    mu = _as_mu(mu)
    _check_length(L)
    coeff = mu / ((1 - mu) * (1 + mu))
    approx = symmetric_asymptotic_dispersion(mu) * (1 - coeff / L)
    return ExpansionCheck(mu, L, symmetric_dispersion(mu, L), approx, coeff)


def expansion_residual_ratios(mu: Fraction, lengths: Sequence[int]) -> list[float]:
    """Successive residual ratios r(L_i)/r(L_{i+1}); about 4 on a doubling grid."""
    res = [asymptotic_expansion_check(mu, L).residual for L in lengths]
    return [float(a / b) for a, b in zip(res, res[1:])]


@dataclass
class MonotonicityReport:
    grid: list[Fraction]
    L_max: int
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    roots: list[PoissonRoot] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def _expect(self, ok: bool, message: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(message)


def monotonicity_scan(mu_grid: Sequence[Fraction], L_max: int, roots: bool = True) -> MonotonicityReport:
    """Exact comparisons of D over L and mu, the marginal bound, and root order."""
    grid = sorted(_as_mu(m) for m in mu_grid)
    report = MonotonicityReport(grid=grid, L_max=L_max)
    table = {mu: [symmetric_dispersion(mu, L) for L in range(1, L_max + 1)] for mu in grid}
    for mu in grid:
        row = table[mu]
        for L in range(1, L_max):
            report._expect(row[L - 1] < row[L], f"D({L},{mu}) >= D({L + 1},{mu})")
        for L in range(1, L_max + 1):
            report._expect(row[L - 1] < marginal_dispersion(mu, L + 1), f"D({L},{mu}) >= d_{L + 1}")
        for L in range(0, L_max):
            step = marginal_dispersion_closed(mu, L + 1) - marginal_dispersion_closed(mu, L)
            report._expect(step == mu ** (L + 1) * (1 + mu) / 2, f"marginal step mismatch at L={L}, mu={mu}")
    for lo, hi in zip(grid, grid[1:]):
        for L in range(1, L_max + 1):
            report._expect(table[lo][L - 1] < table[hi][L - 1], f"D({L},{lo}) >= D({L},{hi})")
    if roots and L_max >= 3:
        report.roots = convergence_rows(range(2, L_max + 1))
        for a, b in zip(report.roots, report.roots[1:]):
            report._expect(b.mu_star < a.mu_star, f"mu*({b.L}) >= mu*({a.L})")
            report._expect(a.mu_star > 1 / 3, f"mu*({a.L}) <= 1/3")
    return report


def poisson_coupling(N: int) -> float:
    """Coupling of the symmetric decomposition g = t = k = N/3."""
    if N % 3:
        raise ValueError("N must be divisible by 3")
    return spectral_data(GpkDecomposition(N // 3, N // 3, N // 3)).coupling

