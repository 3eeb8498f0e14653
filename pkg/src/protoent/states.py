"""Constructors for the states used throughout: coherent pairs, two-mode
squeezed vacuum, SU(2) coherent blocks and seeded random states."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc, gammaln

from .fock import EPS_TRUNC, TwoModeKet, triangle_mask
from .number_phase import BlockKet

MAX_AUTO_CUTOFF = 2000


class CutoffError(ValueError):
    """The requested truncation discards more probability than allowed."""

    def __init__(self, message: str, suggested_cutoff: int):
        super().__init__(f"{message}; suggested cutoff >= {suggested_cutoff}")
        self.suggested_cutoff = suggested_cutoff


@dataclass(frozen=True)
class ModeSplit:
    """Polar parametrization of a pair of coherent amplitudes.

    ``alpha1 = r sin(theta/2) exp(i(delta + phi))``,
    ``alpha2 = r cos(theta/2) exp(i(delta - phi))`` with ``r**2`` the total
    mean photon number.
    """

    r: float
    theta: float
    phi: float = 0.0
    delta: float = 0.0

    @property
    def nbar(self) -> float:
        return self.r ** 2

    @property
    def alphas(self) -> tuple[complex, complex]:
        a1 = self.r * math.sin(self.theta / 2) * cmath.exp(1j * (self.delta + self.phi))
        a2 = self.r * math.cos(self.theta / 2) * cmath.exp(1j * (self.delta - self.phi))
        return a1, a2

    @classmethod
    def from_alphas(cls, alpha1: complex, alpha2: complex) -> "ModeSplit":
        m1, m2 = abs(alpha1), abs(alpha2)
        r = math.hypot(m1, m2)
        theta = 2 * math.atan2(m1, m2)
        arg1, arg2 = cmath.phase(alpha1), cmath.phase(alpha2)
        return cls(r, theta, (arg1 - arg2) / 2, (arg1 + arg2) / 2)

    @classmethod
    def from_nbar(cls, nbar: float, theta: float = math.pi / 2,
                  phi: float = 0.0, delta: float = 0.0) -> "ModeSplit":
        if nbar < 0:
            raise ValueError("nbar must be nonnegative")
        return cls(math.sqrt(nbar), theta, phi, delta)


# -- truncation tails -------------------------------------------------------

def poisson_tail(nbar: float, cutoff: int) -> float:
    """P(n > cutoff) for a Poisson(nbar) total photon number."""
    if nbar == 0:
        return 0.0
    # regularized lower incomplete gamma: P(X > c) = P(c + 1, nbar)
    return float(gammainc(cutoff + 1, nbar))


def poisson_cutoff(nbar: float, eps_trunc: float = EPS_TRUNC) -> int:
    c = max(0, int(nbar))
    while poisson_tail(nbar, c) >= eps_trunc:
        c += 1
        if c > MAX_AUTO_CUTOFF:
            raise CutoffError(f"no cutoff below {MAX_AUTO_CUTOFF} reaches tail {eps_trunc}",
                              MAX_AUTO_CUTOFF)
    return c


def tmsv_tail(xi_abs_sq: float, cutoff: int) -> float:
    """P(total number > cutoff) for a two-mode squeezed vacuum."""
    return float(xi_abs_sq ** (cutoff // 2 + 1)) if xi_abs_sq > 0 else 0.0


def tmsv_cutoff(xi_abs_sq: float, eps_trunc: float = EPS_TRUNC) -> int:
    if xi_abs_sq == 0:
        return 0
    pairs = math.ceil(math.log(eps_trunc) / math.log(xi_abs_sq))
    c = 2 * max(pairs - 1, 0)
    while tmsv_tail(xi_abs_sq, c) >= eps_trunc:
        c += 2
    if c > MAX_AUTO_CUTOFF:
        raise CutoffError("squeezing too strong for automatic truncation", c)
    return c


def _tail_record(amps: np.ndarray, analytic_tail: float) -> float:
    defect = abs(1.0 - float(np.vdot(amps, amps).real))
    return max(analytic_tail, defect)


# -- coherent pairs -----------------------------------------------------------

def coherent_amplitudes(alpha: complex, nmax: int) -> np.ndarray:
    """Single-mode amplitudes ``exp(-|a|^2/2) a^n / sqrt(n!)`` for n = 0..nmax.

    Built by ratio recursion so nothing overflows at large n.
    """
    out = np.empty(nmax + 1, dtype=complex)
    out[0] = math.exp(-abs(alpha) ** 2 / 2)
    if nmax:
        ratios = alpha / np.sqrt(np.arange(1, nmax + 1))
        out[1:] = out[0] * np.cumprod(ratios)
    return out


def coherent_pair(alpha1: complex, alpha2: complex, cutoff: int | None = None,
                  eps_trunc: float = EPS_TRUNC) -> TwoModeKet:
    """Product coherent state ``|alpha1>_1 |alpha2>_2``.

    With ``cutoff=None`` the truncation is chosen so the Poisson tail of the
    total number stays below ``eps_trunc``.
    """
    nbar = abs(alpha1) ** 2 + abs(alpha2) ** 2
    needed = poisson_cutoff(nbar, eps_trunc)
    if cutoff is None:
        cutoff = needed
    tail = poisson_tail(nbar, cutoff)
    if tail > eps_trunc:
        raise CutoffError(f"cutoff {cutoff} leaves tail {tail:.3e} > {eps_trunc:.1e}", needed)
    amps = np.outer(coherent_amplitudes(alpha1, cutoff), coherent_amplitudes(alpha2, cutoff))
    amps[~triangle_mask(cutoff)] = 0
    return TwoModeKet(cutoff, amps, _tail_record(amps, tail))


def coherent_from_split(split: ModeSplit, cutoff: int | None = None,
                        eps_trunc: float = EPS_TRUNC) -> TwoModeKet:
    return coherent_pair(*split.alphas, cutoff=cutoff, eps_trunc=eps_trunc)


# -- two-mode squeezed vacuum -------------------------------------------------

def xi_from_nbar(nbar: float, phase: float = 0.0) -> complex:
    """Squeezing parameter giving total mean photon number ``nbar``."""
    if nbar < 0:
        raise ValueError("nbar must be nonnegative")
    return math.sqrt(nbar / (nbar + 2)) * cmath.exp(1j * phase)


def tmsv_nbar(xi: complex) -> float:
    x = abs(xi) ** 2
    return 2 * x / (1 - x)


def tmsv(xi: complex, cutoff: int | None = None, eps_trunc: float = EPS_TRUNC) -> TwoModeKet:
    """Two-mode squeezed vacuum ``sqrt(1-|xi|^2) sum xi^n |n>_1 |n>_2``."""
    lam = abs(xi) ** 2
    if not lam < 1:
        raise ValueError(f"|xi| must be < 1, got {abs(xi)}")
    needed = tmsv_cutoff(lam, eps_trunc)
    if cutoff is None:
        cutoff = needed
    tail = tmsv_tail(lam, cutoff)
    if tail > eps_trunc:
        raise CutoffError(f"cutoff {cutoff} leaves tail {tail:.3e} > {eps_trunc:.1e}", needed)
    pairs = cutoff // 2
    diag = math.sqrt(1 - lam) * np.power(complex(xi), np.arange(pairs + 1))
    amps = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    idx = np.arange(pairs + 1)
    amps[idx, idx] = diag
    return TwoModeKet(cutoff, amps, _tail_record(amps, tail))


# -- SU(2) coherent blocks ----------------------------------------------------

def su2_coherent(n: int, theta: float, phi: float) -> BlockKet:
    """Normalized SU(2) coherent state on the fixed-total-number block ``n``.

    The amplitude on ``n1 = k`` (so ``2m = 2k - n``) is
    ``sqrt(C(n, k)) sin(theta/2)^k cos(theta/2)^(n-k) exp(i (2k - n) phi)``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    k = np.arange(n + 1)
    log_binom = 0.5 * (gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1))
    s, c = math.sin(theta / 2), math.cos(theta / 2)
    # np.power(0.0, 0) == 1, which is what the 0**0 corner needs
    mag = np.exp(log_binom) * np.power(s, k) * np.power(c, n - k)
    vec = mag * np.exp(1j * (2 * k - n) * phi)
    return BlockKet({n: vec})


def coherent_pair_via_su2(alpha1: complex, alpha2: complex, cutoff: int) -> BlockKet:
    """Coherent pair assembled block by block from SU(2) coherent states,
    weighted by ``sqrt(p_n) exp(i n delta)`` with Poisson ``p_n``."""
    split = ModeSplit.from_alphas(alpha1, alpha2)
    nbar = split.nbar
    blocks = {}
    for n in range(cutoff + 1):
        if nbar == 0:
            sqrt_p = 1.0 if n == 0 else 0.0
        else:
            sqrt_p = math.exp(0.5 * (-nbar + n * math.log(nbar) - math.lgamma(n + 1)))
        vec = su2_coherent(n, split.theta, split.phi).blocks[n]
        blocks[n] = sqrt_p * cmath.exp(1j * n * split.delta) * vec
    return BlockKet(blocks)


# -- random states ------------------------------------------------------------

def random_pure(seed: int, cutoff: int) -> TwoModeKet:
    """Normalized state with i.i.d. complex Gaussian amplitudes on the triangle."""
    if cutoff < 0:
        raise ValueError("cutoff must be nonnegative")
    rng = np.random.default_rng(seed)
    mask = triangle_mask(cutoff)
    size = int(mask.sum())
    vals = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    vals /= np.linalg.norm(vals)
    amps = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    amps[mask] = vals
    return TwoModeKet(cutoff, amps, _tail_record(amps, 0.0))
