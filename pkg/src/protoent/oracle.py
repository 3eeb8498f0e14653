"""Closed-form reference values, kept independent of the numerical core.

Nothing here touches state vectors; every value comes straight from a
formula in the mean photon number.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

SCALED_SWITCH = 30.0


def _check_finite(x: float) -> None:
    if not math.isfinite(x):
        raise ValueError(f"non-finite argument {x!r}")


def bessel_i0(x: float) -> float:
    """Modified Bessel function ``I0(x) = sum (x/2)^(2k) / (k!)^2``."""
    _check_finite(x)
    x = abs(x)
    if x > SCALED_SWITCH:
        return bessel_i0e(x) * math.exp(x)
    q = (x / 2) ** 2
    term, total, k = 1.0, 1.0, 0
    while True:
        k += 1
        term *= q / (k * k)
        total += term
        if term < total * 1e-17:
            return total


def bessel_i0e(x: float) -> float:
    """Exponentially scaled ``exp(-|x|) I0(x)``.

    Above the switch point the large-argument expansion
    ``(2 pi x)^(-1/2) sum_k ((2k-1)!!)^2 / (k! (8x)^k)`` is used. Its terms
    keep shrinking until ``k ~ 2x``, far past double precision once
    ``x > 30``, and nothing overflows.
    """
    _check_finite(x)
    x = abs(x)
    if x <= SCALED_SWITCH:
        return bessel_i0(x) * math.exp(-x)
    term, total, k = 1.0, 1.0, 0
    while True:
        k += 1
        term *= (2 * k - 1) ** 2 / (8.0 * k * x)
        total += term
        if term < total * 1e-17:
            return total / math.sqrt(2 * math.pi * x)


@dataclass(frozen=True)
class OracleResult:
    label: str
    value: float
    formula: str


def coherent_S_M(nbar: float) -> float:
    return 1.0 - bessel_i0e(2 * nbar)


def tmsv_S_M(nbar: float) -> float:
    return nbar / (1 + nbar)


def coherent_S_a(nbar: float) -> float:
    return math.tanh(2 * nbar) ** 2


def coherent_parity(nbar: float) -> tuple[float, float]:
    """Poisson ``(p_even, p_odd) = exp(-nbar) (cosh nbar, sinh nbar)``."""
    # exp(-x) cosh x = (1 + exp(-2x)) / 2 stays finite for large x
    e = math.exp(-2 * nbar)
    return (1 + e) / 2, (1 - e) / 2


def tmsv_Sx2(nbar: float) -> float:
    return nbar * (nbar + 2)


def tmsv_NSx2(nbar: float) -> float:
    return nbar * (nbar + 2) * (3 * nbar + 2)


def coherent_number_distribution(nbar: float, n: int) -> float:
    if nbar == 0:
        return 1.0 if n == 0 else 0.0
    return math.exp(-nbar + n * math.log(nbar) - math.lgamma(n + 1))


def tmsv_number_distribution(nbar: float, n: int) -> float:
    """Weight of total number ``n``; odd totals never occur."""
    if n % 2:
        return 0.0
    half = n // 2
    return 2 * nbar ** half / (nbar + 2) ** (half + 1)


def oracle_suite(nbar: float) -> list[OracleResult]:
    if not math.isfinite(nbar) or nbar < 0:
        raise ValueError(f"nbar must be a finite nonnegative number, got {nbar!r}")
    p_even, p_odd = coherent_parity(nbar)
    return [
        OracleResult("S_M_coherent", coherent_S_M(nbar), "1 - exp(-2N) I0(2N)"),
        OracleResult("S_M_tmsv", tmsv_S_M(nbar), "N / (1 + N)"),
        OracleResult("S_N_tmsv", 0.0, "0"),
        OracleResult("S_a_coherent", coherent_S_a(nbar), "tanh(2N)^2"),
        OracleResult("p_even_coherent", p_even, "exp(-N) cosh(N)"),
        OracleResult("p_odd_coherent", p_odd, "exp(-N) sinh(N)"),
        OracleResult("NSx2_tmsv", tmsv_NSx2(nbar), "N (N + 2) (3N + 2)"),
        OracleResult("Sx2_tmsv", tmsv_Sx2(nbar), "N (N + 2)"),
    ]
