"""GEN/PROP/KILL decompositions and the 2x2 cascade-free transfer matrix.

A binary stateful operation without negation splits its alphabet into
``g`` GEN symbols (state forced to 1), ``t`` PROP symbols (state kept) and
``k`` KILL symbols (state reset to 0).  The number of cascade-free words of
length L depends only on ``N = g + t + k`` and ``d = g * t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidDecomposition, NotApplicable

__all__ = [
    "GpkDecomposition",
    "TransferMatrix2",
    "SpectralData",
    "ChebyshevCheck",
    "build_transfer_matrix",
    "count_cascade_free",
    "spectral_data",
    "spectral_from_trace_det",
    "chebyshev_u",
    "verify_chebyshev_representation",
    "series_inverse",
    "gf_coefficients",
    "cascade_free_density",
    "parse_gpk",
]


@dataclass(frozen=True)
class GpkDecomposition:
    g: int
    t: int
    k: int

    def __post_init__(self) -> None:
        for name in ("g", "t", "k"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise InvalidDecomposition(f"{name} must be a nonnegative integer, got {value!r}")
        if self.g + self.t + self.k < 1:
            raise InvalidDecomposition("alphabet must be nonempty (g + t + k >= 1)")

    @property
    def N(self) -> int:
        return self.g + self.t + self.k

    @property
    def d(self) -> int:
        return self.g * self.t

    def __str__(self) -> str:
        return f"{self.g}:{self.t}:{self.k}"


def parse_gpk(text: str) -> GpkDecomposition:
    """Parse ``"g:t:k"``."""
    parts = text.split(":")
    if len(parts) != 3:
        raise InvalidDecomposition(f"expected g:t:k, got {text!r}")
    try:
        g, t, k = (int(p) for p in parts)
    except ValueError:
        raise InvalidDecomposition(f"expected integers in g:t:k, got {text!r}") from None
    return GpkDecomposition(g, t, k)


@dataclass(frozen=True)
class TransferMatrix2:
    """Rows and columns indexed by (R, G): rest state and generating state."""

    entries: tuple[tuple[int, int], tuple[int, int]]

    @property
    def trace(self) -> int:
        return self.entries[0][0] + self.entries[1][1]

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.entries
        return a * d - b * c

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def build_transfer_matrix(gpk: GpkDecomposition) -> TransferMatrix2:
    g, t, k = gpk.g, gpk.t, gpk.k
    return TransferMatrix2(((k + t, g), (k, g)))


def count_cascade_free(gpk: GpkDecomposition, L: int) -> list[int]:
    """Exact counts a(0..L) from a(L) = N a(L-1) - d a(L-2), a(0)=1, a(1)=N."""
    if L < 0:
        raise ValueError("L must be nonnegative")
    N, d = gpk.N, gpk.d
    values = [1]
    if L >= 1:
        values.append(N)
    for _ in range(2, L + 1):
        values.append(N * values[-1] - d * values[-2])
    return values


@dataclass(frozen=True)
class SpectralData:
    discriminant: int
    lambda1: float
    lambda2: float
    coupling: float  # math.inf when the determinant vanishes
    degenerate: bool
    trace: int
    det: int

    @property
    def coupling_infinite(self) -> bool:
        return math.isinf(self.coupling)


def spectral_from_trace_det(trace: int, det: int) -> SpectralData:
    """Eigen-data of a 2x2 integer matrix given only its trace and determinant."""
    disc = trace * trace - 4 * det
    root = math.sqrt(disc) if disc >= 0 else math.nan
    lam1 = (trace + root) / 2
    lam2 = (trace - root) / 2
    if det == 0:
        coupling = math.inf
    elif det > 0:
        coupling = trace / (2 * math.sqrt(det))
    else:
        coupling = math.nan
    return SpectralData(
        discriminant=disc,
        lambda1=lam1,
        lambda2=lam2,
        coupling=coupling,
        degenerate=disc == 0,
        trace=trace,
        det=det,
    )


def spectral_data(gpk: GpkDecomposition) -> SpectralData:
    return spectral_from_trace_det(gpk.N, gpk.d)


def chebyshev_u(n: int, x: float) -> float:
    """U_n(x) by the three-term forward recurrence, in binary64."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    prev, cur = 1.0, 2.0 * x
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur


@dataclass(frozen=True)
class ChebyshevCheck:
    L: int
    tol: float
    max_rel_error: float
    worst_index: int
    passed: bool


def verify_chebyshev_representation(
    gpk: GpkDecomposition, L: int, tol: float = 1e-9
) -> ChebyshevCheck:
    """Compare exact a(l) with sqrt(d)^l * U_l(x) for l = 0..L."""
    if gpk.d == 0:
        raise NotApplicable(f"determinant is zero for {gpk}; no Chebyshev form")
    exact = count_cascade_free(gpk, L)
    root_d = math.sqrt(gpk.d)
    x = gpk.N / (2 * root_d)
    worst, worst_at = 0.0, 0
    for ell, a in enumerate(exact):
        approx = root_d**ell * chebyshev_u(ell, x)
        err = abs(approx - a) / a
        if err > worst:
            worst, worst_at = err, ell
    return ChebyshevCheck(L=L, tol=tol, max_rel_error=worst, worst_index=worst_at, passed=worst <= tol)


def series_inverse(denominator: list[int], n_terms: int) -> list[Fraction]:
    """First ``n_terms`` Taylor coefficients of 1 / sum(denominator[i] z^i)."""
    if not denominator or denominator[0] == 0:
        raise ValueError("constant term of the denominator must be nonzero")
    c0 = Fraction(denominator[0])
    out: list[Fraction] = []
    for n in range(n_terms):
        acc = Fraction(1 if n == 0 else 0)
        for i in range(1, min(n, len(denominator) - 1) + 1):
            acc -= denominator[i] * out[n - i]
        out.append(acc / c0)
    return out


def gf_coefficients(gpk: GpkDecomposition, L: int) -> list[int]:
    """Coefficients of 1/(1 - N z + d z^2) up to z^L."""
    coeffs = series_inverse([1, -gpk.N, gpk.d], L + 1)
    assert all(c.denominator == 1 for c in coeffs)
    return [int(c) for c in coeffs]


def cascade_free_density(gpk: GpkDecomposition, L: int) -> Fraction:
    return Fraction(count_cascade_free(gpk, L)[-1], gpk.N**L)
