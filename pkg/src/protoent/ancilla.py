"""Ancilla couplings that turn number-phase correlations into entanglement
between separate systems.

Two schemes are simulated exactly:

* a pair of two-level atoms coupled through ``H = lam (N sigma_1 + Sz sigma_2)``
  with ``sigma_j = |e><e|``, followed by projection of the field;
* a pointer whose position is shifted by the eigenvalue of ``B``, giving a
  joint measurement of two commuting observables ``A`` and ``B``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .fock import DIAGONAL_OPS, OpKind, TwoModeKet, apply_array

# Atomic basis order: index = 2 * s1 + s2 with s = 1 for the excited level.
ATOM_LABELS = ("gg", "ge", "eg", "ee")
PLUS_MINUS = np.array([1, -1, 1, -1], dtype=complex) / 2
MINUS_PLUS = np.array([1, 1, -1, -1], dtype=complex) / 2


class PostSelectionError(RuntimeError):
    pass


class WraparoundError(ValueError):
    def __init__(self, required_L: int):
        super().__init__(f"pointer range too small; need L >= {required_L}")
        self.required_L = required_L


@dataclass(frozen=True)
class AtomCouplingConfig:
    lambda_tau: float = math.pi


@dataclass(frozen=True, eq=False)
class AtomFieldState:
    """Joint field-atom amplitudes ``amps[k, l, atom]``.

    ``field_input`` keeps the field state the atoms were coupled to, which is
    the default projection probe.
    """

    amps: np.ndarray
    field_input: TwoModeKet

    @property
    def norm_sq(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)


def evolve_atoms(psi: TwoModeKet, cfg: AtomCouplingConfig = AtomCouplingConfig()) -> AtomFieldState:
    """Couple ``psi`` to atoms prepared in ``|+>_1 |->_2``.

    The Hamiltonian is diagonal in the joint Fock/atomic basis, so the
    evolution is the exact phase ``exp(-i lam tau (n s1 + (n1 - n2) s2))``.
    """
    k = np.arange(psi.cutoff + 1)
    total = (k[:, None] + k[None, :])[:, :, None]
    diff = (k[:, None] - k[None, :])[:, :, None]
    s1 = np.array([0, 0, 1, 1])[None, None, :]
    s2 = np.array([0, 1, 0, 1])[None, None, :]
    phase = np.exp(-1j * cfg.lambda_tau * (total * s1 + diff * s2))
    amps = psi.amps[:, :, None] * PLUS_MINUS[None, None, :] * phase
    return AtomFieldState(amps, psi)


def parity_branches(psi: TwoModeKet) -> tuple[TwoModeKet, TwoModeKet]:
    """Unnormalized projections on even and odd total photon number."""
    k = np.arange(psi.cutoff + 1)
    even = ((k[:, None] + k[None, :]) % 2) == 0
    return (TwoModeKet(psi.cutoff, np.where(even, psi.amps, 0)),
            TwoModeKet(psi.cutoff, np.where(even, 0, psi.amps)))


def parity_weights(psi: TwoModeKet) -> tuple[float, float]:
    """``(p_even, p_odd)`` of the total photon number."""
    even, odd = parity_branches(psi)
    return even.norm_sq, odd.norm_sq


def project_and_reduce(afs: AtomFieldState,
                       probe: TwoModeKet | None = None) -> tuple[np.ndarray, float]:
    """Project the field on ``probe`` and return the normalized atomic
    4-vector with the success probability of the projection."""
    if probe is None:
        probe = afs.field_input
    if probe.amps.shape != afs.amps.shape[:2]:
        raise ValueError("probe cutoff does not match the field state")
    atoms = np.einsum("kl,kla->a", probe.amps.conj(), afs.amps)
    prob = float(np.vdot(atoms, atoms).real)
    if prob == 0:
        raise PostSelectionError("projection onto the probe has zero probability")
    return atoms / math.sqrt(prob), prob


def branch_coefficients(atoms: np.ndarray) -> tuple[complex, complex]:
    """Overlaps of an atomic vector with ``|+>|->`` and ``|->|+>``."""
    return complex(np.vdot(PLUS_MINUS, atoms)), complex(np.vdot(MINUS_PLUS, atoms))


def reduced_linear_entropy(atoms: np.ndarray) -> float:
    """``2 (1 - tr rho_1^2)`` for a two-qubit pure state, scaled to [0, 1]."""
    m = np.asarray(atoms, dtype=complex).reshape(2, 2)
    m = m / np.linalg.norm(m)
    rho1 = m @ m.conj().T
    return 2.0 * (1.0 - float(np.real(np.trace(rho1 @ rho1))))


def atomic_entropy(p_e: float, p_o: float) -> float:
    """Normalized linear entropy of ``p_e |+-> + p_o |-+>`` (up to norm)."""
    if p_e < 0 or p_o < 0:
        raise ValueError("branch weights must be nonnegative")
    s = p_e ** 2 + p_o ** 2
    if s == 0:
        raise ValueError("both branch weights vanish")
    return 2.0 * (1.0 - (p_e ** 4 + p_o ** 4) / s ** 2)


def extracted_entropy(psi: TwoModeKet, cfg: AtomCouplingConfig = AtomCouplingConfig(),
                      probe: TwoModeKet | None = None) -> float:
    """Atomic entanglement after coupling and projecting on ``probe``."""
    atoms, _ = project_and_reduce(evolve_atoms(psi, cfg), probe)
    return reduced_linear_entropy(atoms)


# -- pointer joint measurement -------------------------------------------------

class PointerMoments(NamedTuple):
    meanAP: float
    meanA: float
    meanP: float


@dataclass(frozen=True, eq=False)
class PointerJointState:
    """Field-pointer amplitudes ``amps[k, l, p + L]`` for pointer positions ``-L..L``."""

    amps: np.ndarray
    L: int

    @property
    def positions(self) -> np.ndarray:
        return np.arange(-self.L, self.L + 1)


def eigen_projections(psi: TwoModeKet, b: OpKind | str) -> dict[int, np.ndarray]:
    """Split ``psi`` into components ``Pi_b |psi>`` over the integer spectrum of ``b``.

    Diagonal operators are split directly; ``Sx`` and ``Sy`` are
    diagonalized block by block, which is exact since they commute with N.
    """
    b = OpKind.parse(b)
    c = psi.cutoff
    out: dict[int, np.ndarray] = {}
    if b in DIAGONAL_OPS:
        eig = apply_array(b, np.ones((c + 1, c + 1))).real
        k = np.arange(c + 1)
        inside = (k[:, None] + k[None, :]) <= c
        for val in np.unique(eig[inside]):
            sel = inside & (eig == val)
            if np.any(psi.amps[sel]):
                out[int(val)] = np.where(sel, psi.amps, 0)
        return out
    for n in range(c + 1):
        k = np.arange(n + 1)
        cols = np.zeros((c + 1, c + 1, n + 1), dtype=complex)
        cols[k, n - k, k] = 1.0
        mat = apply_array(b, cols)[k, n - k, :]
        evals, evecs = np.linalg.eigh(mat)
        ints = np.rint(evals)
        if np.max(np.abs(evals - ints)) > 1e-9:
            raise ArithmeticError(f"{b.name} spectrum not integer in block {n}")
        coeffs = evecs.conj().T @ psi.amps[k, n - k]
        for val, vec, w in zip(ints.astype(int), evecs.T, coeffs):
            if w == 0:
                continue
            arr = out.setdefault(int(val), np.zeros((c + 1, c + 1), dtype=complex))
            arr[k, n - k] += w * vec
    return out


def pointer_state(psi: TwoModeKet, b: OpKind | str, L: int | None = None) -> PointerJointState:
    """Apply the conditional shift ``|p> -> |p + b>`` to a pointer starting at 0.

    Peak memory is ``(cutoff + 1)**2 * (2 L + 1)`` complex numbers.
    """
    proj = eigen_projections(psi, b)
    max_b = max((abs(v) for v in proj), default=0)
    required = max_b + 1
    if L is None:
        L = required
    if L < required:
        raise WraparoundError(required)
    amps = np.zeros(psi.amps.shape + (2 * L + 1,), dtype=complex)
    for val, comp in proj.items():
        amps[:, :, L + val] += comp
    if np.any(amps[:, :, 0]) or np.any(amps[:, :, -1]):
        raise WraparoundError(required)  # pragma: no cover
    return PointerJointState(amps, L)


def pointer_joint_measure(psi: TwoModeKet, b: OpKind | str, a: OpKind | str,
                          L: int | None = None) -> PointerMoments:
    """Moments ``<A P>``, ``<A>`` and ``<P>`` after transferring ``B`` to a pointer.

    For commuting ``A``, ``B`` these reproduce ``<A B>``, ``<A>`` and ``<B>``.
    """
    a = OpKind.parse(a)
    joint = pointer_state(psi, b, L)
    amps = joint.amps
    a_amps = apply_array(a, amps)
    per_slot = np.einsum("klp,klp->p", amps.conj(), a_amps)
    weights = np.einsum("klp,klp->p", amps.conj(), amps).real
    pos = joint.positions
    meanAP = per_slot @ pos
    meanA = per_slot.sum()
    for z in (meanAP, meanA):
        if abs(z.imag) > 1e-10 * max(1.0, abs(z.real)):
            raise ArithmeticError("A is not Hermitian on the pointer slices")
    return PointerMoments(float(meanAP.real), float(meanA.real), float(weights @ pos))
