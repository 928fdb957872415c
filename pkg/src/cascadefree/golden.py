"""Published reference tables and the suites that check them.

Each table is frozen as printed; a suite recomputes every row from the
library and reports one ``VerifyRow`` per value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .avoidance import char_poly, chebyshev3, count_avoiding, restrict
from .core import chebyshev_u, count_cascade_free
from .instances import (
    addition_instance,
    binary_four_sum_instance,
    discriminant_row,
    doubling_instance,
    fibonacci_bisection,
    scaling_law_check,
    sediment_instance,
    ternary_three_sum_instance,
)
from .markov import asymptotic_dispersion, markov_chain
from .poisson import poisson_root

# carry/doubling scaling law: (p, L, a_carry, a_dbl, p^L * a_dbl)
SCALING_TABLE = [
    (3, 2, 72, 8, 72),
    (3, 3, 567, 21, 567),
    (3, 4, 4455, 55, 4455),
    (5, 2, 575, 23, 575),
    (5, 3, 13125, 105, 13125),
    (5, 4, 299375, 479, 299375),
    (7, 2, 2254, 46, 2254),
    (7, 3, 103243, 301, 103243),
    (7, 4, 4727569, 1969, 4727569),
    (11, 2, 14036, 116, 14036),
    (11, 3, 1625151, 1221, 1625151),
    (11, 4, 188151491, 12851, 188151491),
    (13, 2, 27547, 163, 27547),
    (13, 3, 4484077, 2041, 4484077),
    (13, 4, 729876355, 25555, 729876355),
]

# base-3 doubling: (L, a_dbl, F(2L+2), U_L(3/2), a_carry)
FIBONACCI_TABLE = [
    (0, 1, 1, 1, 1),
    (1, 3, 3, 3, 9),
    (2, 8, 8, 8, 72),
    (3, 21, 21, 21, 567),
    (4, 55, 55, 55, 4455),
    (5, 144, 144, 144, 34992),
]

# base-2 addition, OEIS A007070
A007070_PREFIX = [1, 4, 14, 48, 164, 560]

# carry dispersion: (p, mu, D_inf)
DISPERSION_TABLE = [
    (2, Fraction(1, 2), Fraction(3, 2)),
    (3, Fraction(1, 3), Fraction(1)),
    (5, Fraction(1, 5), Fraction(3, 4)),
    (7, Fraction(1, 7), Fraction(2, 3)),
]

# finite Poisson transition point: (L, mu*, mu* - 1/3, L (mu* - 1/3))
CONVERGENCE_TABLE = [
    (5, 0.3792, 4.58e-2, 0.229),
    (10, 0.3525, 1.92e-2, 0.192),
    (20, 0.3422, 8.90e-3, 0.178),
    (50, 0.3368, 3.42e-3, 0.171),
    (100, 0.3350, 1.69e-3, 0.169),
]

# discriminant spectrum: (p, Delta, x)
DISCRIMINANT_TABLE = [
    (2, 2, 1.414),
    (3, 5, 1.500),
    (5, 17, 1.768),
    (7, 37, 2.021),
    (13, 145, 2.653),
]

TERNARY_MATRIX = [[10, 16], [4, 19]]
TERNARY_TRACE, TERNARY_DET, TERNARY_COUPLING = 29, 126, 1.292
BINARY4_MATRIX = [[5, 10, 1], [1, 10, 5], [0, 5, 10]]
BINARY4_CHARPOLY = (1, -25, 165, -280)
BINARY4_PREFIX = [1, 16, 255]

MU_TOL = 5e-5
RATE_TOL = 5e-3
COUPLING_REL_TOL = 1e-3
# three printed decimals
TERNARY_COUPLING_TOL = 5e-4


@dataclass(frozen=True)
class VerifyRow:
    suite: str
    item: str
    expected: str
    actual: str
    passed: bool


def _exact(suite: str, item: str, expected: object, actual: object) -> VerifyRow:
    return VerifyRow(suite, item, str(expected), str(actual), expected == actual)


def _close(suite: str, item: str, expected: float, actual: float, tol: float, rel: bool = False) -> VerifyRow:
    err = abs(actual - expected) / (abs(expected) if rel else 1.0)
    return VerifyRow(suite, item, f"{expected}", f"{actual:.6g}", err <= tol)


def suite_scaling() -> list[VerifyRow]:
    rows = []
    for p, L, carry, dbl, scaled in SCALING_TABLE:
        got = scaling_law_check(p, L)[L]
        tag = f"p={p},L={L}"
        rows.append(_exact("scaling", f"{tag} a_carry", carry, got.a_carry))
        rows.append(_exact("scaling", f"{tag} a_dbl", dbl, got.a_dbl))
        rows.append(_exact("scaling", f"{tag} p^L*a_dbl", scaled, got.scaled))
    return rows


def suite_fibonacci(extended_to: int = 50) -> list[VerifyRow]:
    rows = []
    dbl = count_cascade_free(doubling_instance(3), extended_to)
    carry = count_cascade_free(addition_instance(3), 5)
    for L, a_dbl, fib, u, a_carry in FIBONACCI_TABLE:
        rows.append(_exact("fibonacci", f"L={L} a_dbl", a_dbl, dbl[L]))
        rows.append(_exact("fibonacci", f"L={L} F(2L+2)", fib, fibonacci_bisection(L)))
        rows.append(_exact("fibonacci", f"L={L} U_L(3/2)", u, round(chebyshev_u(L, 1.5))))
        rows.append(_exact("fibonacci", f"L={L} a_carry", a_carry, carry[L]))
    for L in range(len(FIBONACCI_TABLE), extended_to + 1):
        rows.append(_exact("fibonacci", f"L={L} a_dbl=F(2L+2)", fibonacci_bisection(L), dbl[L]))
    return rows


def suite_a007070() -> list[VerifyRow]:
    got = count_cascade_free(addition_instance(2), len(A007070_PREFIX) - 1)
    return [_exact("a007070", f"L={L}", want, got[L]) for L, want in enumerate(A007070_PREFIX)]


def suite_dispersion() -> list[VerifyRow]:
    rows = []
    for p, mu, d_inf in DISPERSION_TABLE:
        gpk = addition_instance(p)
        rows.append(_exact("dispersion", f"p={p} mu", mu, markov_chain(gpk).mu))
        rows.append(_exact("dispersion", f"p={p} D_inf", d_inf, asymptotic_dispersion(gpk)))
    return rows


def suite_convergence() -> list[VerifyRow]:
    rows = []
    for L, mu_star, excess, rate in CONVERGENCE_TABLE:
        root = poisson_root(L)
        rows.append(_close("convergence", f"L={L} mu*", mu_star, root.mu_star, MU_TOL))
        rows.append(_close("convergence", f"L={L} mu*-1/3", excess, root.excess, MU_TOL))
        rows.append(_close("convergence", f"L={L} L*(mu*-1/3)", rate, root.rate, RATE_TOL))
    return rows


def suite_discriminant() -> list[VerifyRow]:
    rows = []
    for p, disc, x in DISCRIMINANT_TABLE:
        got = discriminant_row(p)
        rows.append(_exact("discriminant", f"p={p} Delta", disc, got.discriminant))
        rows.append(_close("discriminant", f"p={p} x", x, got.coupling, COUPLING_REL_TOL, rel=True))
    return rows


def suite_avoidance() -> list[VerifyRow]:
    ternary, binary4 = ternary_three_sum_instance(), binary_four_sum_instance()
    tm = restrict(ternary)
    spec = chebyshev3(ternary)
    rows = [
        _exact("avoidance", "ternary matrix", TERNARY_MATRIX, tm.tolist()),
        _exact("avoidance", "ternary trace", TERNARY_TRACE, spec.trace),
        _exact("avoidance", "ternary det", TERNARY_DET, spec.det),
        _close("avoidance", "ternary coupling", TERNARY_COUPLING, spec.coupling, TERNARY_COUPLING_TOL),
        _exact("avoidance", "binary4 matrix", BINARY4_MATRIX, restrict(binary4).tolist()),
        _exact("avoidance", "binary4 charpoly", BINARY4_CHARPOLY, char_poly(restrict(binary4))),
        _exact("avoidance", "binary4 a(0..2)", BINARY4_PREFIX, count_avoiding(binary4, 2)),
    ]
    for p in (2, 3, 5):
        counts = count_avoiding(sediment_instance(p), 4)
        rows.append(_exact("avoidance", f"sediment p={p}", [(p * (p - 1)) ** L for L in range(5)], counts))
    return rows


SUITES: dict[str, Callable[[], list[VerifyRow]]] = {
    "scaling": suite_scaling,
    "fibonacci": suite_fibonacci,
    "a007070": suite_a007070,
    "dispersion": suite_dispersion,
    "convergence": suite_convergence,
    "discriminant": suite_discriminant,
    "avoidance": suite_avoidance,
}


def run_suite(name: str) -> list[VerifyRow]:
    if name == "all":
        return [row for fn in SUITES.values() for row in fn()]
    return SUITES[name]()

