"""Total-number / relative-number relabeling and the dephasing reductions.

The basis vector ``|n1>_1 |n2>_2`` is relabeled as ``|n, m>`` with
``n = n1 + n2`` and ``m = (n1 - n2) / 2``.  Since ``m`` is half-integer it is
always carried as the integer ``twoM = n1 - n2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fock import TwoModeKet, basis_labels, triangle_mask

P_FLOOR = 1e-15


def twoM_values(n: int) -> np.ndarray:
    """``twoM`` labels of block ``n`` in storage order (``n1 = 0..n``)."""
    return 2 * np.arange(n + 1) - n


@dataclass
class BlockKet:
    """A state split into fixed-total-number blocks.

    ``blocks[n][k]`` is the amplitude of ``|n1 = k, n2 = n - k>``, i.e. of
    ``|n, twoM = 2k - n>``.
    """

    blocks: dict[int, np.ndarray]

    def __post_init__(self):
        clean = {}
        for n, vec in self.blocks.items():
            vec = np.asarray(vec, dtype=complex)
            if n < 0 or vec.shape != (n + 1,):
                raise ValueError(f"block {n} must have length {n + 1}")
            clean[int(n)] = vec
        self.blocks = dict(sorted(clean.items()))

    def amplitude(self, n: int, twoM: int) -> complex:
        if abs(twoM) > n or (n - twoM) % 2:
            raise KeyError(f"(n={n}, twoM={twoM}) is not a basis label")
        vec = self.blocks.get(n)
        return 0j if vec is None else complex(vec[(n + twoM) // 2])

    @property
    def norm_sq(self) -> float:
        return float(sum(np.vdot(v, v).real for v in self.blocks.values()))

    def weights(self) -> dict[int, float]:
        return {n: float(np.vdot(v, v).real) for n, v in self.blocks.items()}

    def to_ket(self, cutoff: int | None = None, tail_bound: float = 0.0) -> TwoModeKet:
        """Inverse relabeling back to the two-mode Fock layout."""
        if cutoff is None:
            cutoff = max(self.blocks, default=0)
        amps = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
        for n, vec in self.blocks.items():
            if n > cutoff:
                if np.any(vec):
                    raise ValueError(f"block {n} exceeds cutoff {cutoff}")
                continue
            k = np.arange(n + 1)
            amps[k, n - k] = vec
        return TwoModeKet(cutoff, amps, tail_bound)


def relabel(psi: TwoModeKet) -> BlockKet:
    """Split ``psi`` into its total-number blocks ``0..cutoff``."""
    blocks = {}
    for n in range(psi.cutoff + 1):
        k = np.arange(n + 1)
        blocks[n] = psi.amps[k, n - k].copy()
    return BlockKet(blocks)


def block_kets(psi: TwoModeKet) -> list[tuple[int, TwoModeKet]]:
    """Unnormalized projections ``Pi_n |psi>`` for every total number ``n``."""
    c = psi.cutoff
    k = np.arange(c + 1)
    total = k[:, None] + k[None, :]
    return [(n, TwoModeKet(c, np.where(total == n, psi.amps, 0))) for n in range(c + 1)]


@dataclass
class DephasedDensity:
    """Block-diagonal density ``sum_i p_i |u_i><u_i|`` left after removing
    coherences between eigenspaces of ``N`` (``kind='n'``) or of ``Sz``
    (``kind='m'``).

    ``labels`` are total numbers ``n`` or relative labels ``twoM``; the
    ``components`` are the normalized projections.
    """

    kind: str
    labels: list[int]
    weights: np.ndarray
    components: list[TwoModeKet] = field(repr=False)

    def purity(self) -> float:
        """``tr(rho**2)`` of the trace-normalized density."""
        total = self.total_weight()
        if total == 0:
            raise ValueError("empty density")
        return float(np.sum(self.weights ** 2)) / total ** 2

    def total_weight(self) -> float:
        return float(np.sum(self.weights))

    def density_matrix(self) -> np.ndarray:
        """Dense matrix on the flattened basis ordered as ``fock.basis_labels``."""
        if not self.components:
            return np.zeros((0, 0), dtype=complex)
        cutoff = self.components[0].cutoff
        ks, ls = basis_labels(cutoff)
        rho = np.zeros((ks.size, ks.size), dtype=complex)
        for p, comp in zip(self.weights, self.components):
            v = comp.amps[ks, ls]
            rho += p * np.outer(v, v.conj())
        return rho


def _dephase(psi: TwoModeKet, kind: str, label_grid: np.ndarray, labels) -> DephasedDensity:
    probs = np.abs(psi.amps) ** 2
    mask = triangle_mask(psi.cutoff)
    kept_labels, weights, comps = [], [], []
    for lab in labels:
        sel = mask & (label_grid == lab)
        p = float(probs[sel].sum())
        if p <= P_FLOOR:
            continue
        amps = np.where(sel, psi.amps, 0) / np.sqrt(p)
        kept_labels.append(int(lab))
        weights.append(p)
        comps.append(TwoModeKet(psi.cutoff, amps))
    return DephasedDensity(kind, kept_labels, np.array(weights), comps)


def dephase_n(psi: TwoModeKet) -> DephasedDensity:
    """``rho_M = sum_n Pi_n |psi><psi| Pi_n``, one component per total number."""
    k = np.arange(psi.cutoff + 1)
    total = k[:, None] + k[None, :]
    return _dephase(psi, "n", total, range(psi.cutoff + 1))


def dephase_m(psi: TwoModeKet) -> DephasedDensity:
    """``rho_N = sum_m Pi_m |psi><psi| Pi_m``, one component per ``twoM``.

    Only labels with ``n = twoM (mod 2)`` exist, which the diagonal
    ``n1 - n2 = twoM`` enforces automatically.
    """
    k = np.arange(psi.cutoff + 1)
    diff = k[:, None] - k[None, :]
    return _dephase(psi, "m", diff, range(-psi.cutoff, psi.cutoff + 1))


def linear_entropy(rho: DephasedDensity) -> float:
    """``1 - sum p_i**2`` with the weights rescaled to unit sum.

    The rescaling removes the ``2 * tail`` bias a truncated state would
    otherwise carry, so a single surviving component gives exactly 0.
    """
    return 1.0 - rho.purity()


def S_M(psi: TwoModeKet) -> float:
    return linear_entropy(dephase_n(psi))


def S_N(psi: TwoModeKet) -> float:
    return linear_entropy(dephase_m(psi))
