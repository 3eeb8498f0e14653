"""Embedding of the two-mode space into a product ``H_N (x) H_M``.

Each ``|n1>|n2>`` maps to ``|n>_N |m>_M``; tracing out the ``N`` factor of
the embedded pure state leaves the Gram matrix
``d[m, m'] = sum_n c(n/2 + m, n/2 - m) conj(c(n/2 + m', n/2 - m'))``.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .fock import TwoModeKet

PSD_FLOOR = -1e-10


@dataclass(frozen=True, eq=False)
class EmbeddedGram:
    """Reduced state on ``H_M``, rows/columns labeled by ``twoM`` in
    ``twoM_lo .. twoM_lo + d.shape[0] - 1``."""

    twoM_lo: int
    d: np.ndarray

    @property
    def twoM_range(self) -> range:
        return range(self.twoM_lo, self.twoM_lo + self.d.shape[0])

    def entry(self, twoM: int, twoM_prime: int) -> complex:
        i, j = twoM - self.twoM_lo, twoM_prime - self.twoM_lo
        size = self.d.shape[0]
        if 0 <= i < size and 0 <= j < size:
            return complex(self.d[i, j])
        return 0j

    def min_eigenvalue(self) -> float:
        if self.d.size == 0:
            return 0.0
        return float(np.linalg.eigvalsh(self.d)[0])

    def validate(self, eps_trunc: float = 1e-12) -> None:
        """Raise ``ValueError`` if the Gram matrix is not a density matrix."""
        if not np.allclose(self.d, self.d.conj().T, rtol=0, atol=1e-12):
            raise ValueError("Gram matrix is not Hermitian")
        tr = float(np.trace(self.d).real)
        if abs(tr - 1) > eps_trunc:
            raise ValueError(f"Gram matrix trace {tr!r} differs from 1")
        if self.min_eigenvalue() < PSD_FLOOR:
            raise ValueError("Gram matrix is not positive semidefinite")
        labels = np.array(self.twoM_range)
        parity_clash = (labels[:, None] - labels[None, :]) % 2 == 1
        if np.any(self.d[parity_clash] != 0):
            raise ValueError("Gram matrix couples twoM labels of different parity")

    def to_csv(self) -> str:
        """Nonzero entries as ``twoM,twoM_prime,re,im`` rows."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["twoM", "twoM_prime", "re", "im"])
        for i, a in enumerate(self.twoM_range):
            for j, b in enumerate(self.twoM_range):
                z = self.d[i, j]
                if z != 0:
                    writer.writerow([a, b, repr(float(z.real)), repr(float(z.imag))])
        return buf.getvalue()


def embed_gram(psi: TwoModeKet) -> EmbeddedGram:
    """Partial trace over ``H_N`` of the embedded state."""
    c = psi.cutoff
    ks, ls = np.nonzero(psi.amps)
    if ks.size == 0:
        raise ValueError("zero state")
    lo, hi = int((ks - ls).min()), int((ks - ls).max())
    V = np.zeros((c + 1, hi - lo + 1), dtype=complex)
    V[ks + ls, ks - ls - lo] = psi.amps[ks, ls]
    d = V.T @ V.conj()
    return EmbeddedGram(lo, d)


def embedded_entropy(g: EmbeddedGram) -> float:
    """``1 - sum |d[m, m']|**2`` for the trace-normalized Gram matrix."""
    tr = float(np.trace(g.d).real)
    return 1.0 - float(np.sum(np.abs(g.d) ** 2)) / tr ** 2


def S_embedded(psi: TwoModeKet) -> float:
    return embedded_entropy(embed_gram(psi))


# -- Susskind-Glogower ladder on H_N -----------------------------------------

@dataclass(frozen=True)
class SGOperator:
    """Power of the number-lowering operator ``E|n> = |n-1>``, ``E|0> = 0``."""

    power: int = 1

    def __post_init__(self):
        if self.power < 1:
            raise ValueError("power must be positive")

    def apply(self, vec: np.ndarray) -> np.ndarray:
        out = np.zeros_like(vec)
        if self.power < vec.size:
            out[:-self.power] = vec[self.power:]
        return out


def number_factor(psi: TwoModeKet) -> np.ndarray:
    """The ``twoM = 0`` slice ``sum_n c(n/2, n/2) |n>_N`` (odd ``n`` are empty)."""
    vec = np.zeros(psi.cutoff + 1, dtype=complex)
    idx = np.arange(psi.cutoff // 2 + 1)
    vec[2 * idx] = psi.amps[idx, idx]
    return vec


def sg_eigencheck(psi: TwoModeKet, xi: complex | None = None) -> float:
    """Residual ``|| E^2 phi - xi phi ||`` of the normalized ``N`` factor.

    Without an explicit ``xi`` the Rayleigh quotient ``<phi|E^2|phi>`` is
    used.  Meaningful only for states supported on ``twoM = 0``.
    """
    phi = number_factor(psi)
    nrm = np.linalg.norm(phi)
    if nrm == 0:
        raise ValueError("N factor has zero norm (no twoM = 0 support)")
    phi = phi / nrm
    e2phi = SGOperator(2).apply(phi)
    if xi is None:
        xi = np.vdot(phi, e2phi)
    return float(np.linalg.norm(e2phi - xi * phi))
