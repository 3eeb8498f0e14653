"""Truncated two-mode Fock space.

A pure state is stored as a dense ``(cutoff + 1, cutoff + 1)`` complex array
``amps[k, l]`` holding the amplitude of ``|k>_1 |l>_2``.  Entries with
``k + l > cutoff`` are identically zero, so every number-conserving operator
maps the truncated space onto itself without loss.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

EPS_TRUNC = 1e-12
HERMITIAN_IMAG_TOL = 1e-10


class OpKind(enum.Enum):
    """Number-conserving two-mode observables."""

    N_total = "N"
    N1 = "N1"
    N2 = "N2"
    Sx = "Sx"
    Sy = "Sy"
    Sz = "Sz"

    @classmethod
    def parse(cls, name: "str | OpKind") -> "OpKind":
        if isinstance(name, OpKind):
            return name
        for member in cls:
            if name in (member.name, member.value):
                return member
        raise ValueError(f"unknown operator kind {name!r}")


# Operators whose matrix is diagonal in the Fock basis.
DIAGONAL_OPS = frozenset({OpKind.N_total, OpKind.N1, OpKind.N2, OpKind.Sz})


def triangle_mask(cutoff: int) -> np.ndarray:
    """Boolean mask of the physical entries ``k + l <= cutoff``."""
    k = np.arange(cutoff + 1)
    return (k[:, None] + k[None, :]) <= cutoff


@dataclass(frozen=True, eq=False)
class TwoModeKet:
    """Immutable pure state on the truncated two-mode space.

    ``tail_bound`` bounds the probability mass discarded by the truncation,
    so ``|1 - norm**2| <= tail_bound``.
    """

    cutoff: int
    amps: np.ndarray
    tail_bound: float = 0.0

    def __post_init__(self):
        if self.cutoff < 0:
            raise ValueError("cutoff must be nonnegative")
        amps = np.array(self.amps, dtype=complex)
        if amps.shape != (self.cutoff + 1, self.cutoff + 1):
            raise ValueError(
                f"amps shape {amps.shape} does not match cutoff {self.cutoff}"
            )
        if not np.all(np.isfinite(amps)):
            raise FloatingPointError("non-finite amplitude")
        outside = ~triangle_mask(self.cutoff)
        if np.any(amps[outside] != 0):
            raise ValueError("amplitudes present with k + l > cutoff")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @classmethod
    def basis(cls, k: int, l: int, cutoff: int | None = None) -> "TwoModeKet":
        """The Fock state ``|k>_1 |l>_2``."""
        cutoff = k + l if cutoff is None else cutoff
        if k < 0 or l < 0 or k + l > cutoff:
            raise ValueError(f"|{k},{l}> lies outside cutoff {cutoff}")
        amps = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
        amps[k, l] = 1.0
        return cls(cutoff, amps)

    @classmethod
    def vacuum(cls, cutoff: int = 0) -> "TwoModeKet":
        return cls.basis(0, 0, cutoff)

    @classmethod
    def superpose(cls, terms: Iterable[tuple[complex, int, int]],
                  cutoff: int | None = None, normalize: bool = True) -> "TwoModeKet":
        """Build ``sum coeff |k, l>`` from ``(coeff, k, l)`` triples."""
        terms = list(terms)
        if cutoff is None:
            cutoff = max(k + l for _, k, l in terms)
        amps = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
        for coeff, k, l in terms:
            amps[k, l] += coeff
        if normalize:
            amps /= np.linalg.norm(amps)
        return cls(cutoff, amps)

    @property
    def norm_sq(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def normalized(self) -> "TwoModeKet":
        nrm = np.sqrt(self.norm_sq)
        if nrm == 0:
            raise ZeroDivisionError("cannot normalize the zero vector")
        return TwoModeKet(self.cutoff, self.amps / nrm, self.tail_bound)

    def with_cutoff(self, cutoff: int) -> "TwoModeKet":
        """Embed into a larger truncation (or shrink, if nothing is lost)."""
        amps = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
        m = min(cutoff, self.cutoff) + 1
        amps[:m, :m] = self.amps[:m, :m]
        amps[~triangle_mask(cutoff)] = 0
        lost = self.norm_sq - float(np.vdot(amps, amps).real)
        if lost > 0:
            raise ValueError(f"shrinking to cutoff {cutoff} discards mass {lost:.3e}")
        return TwoModeKet(cutoff, amps, self.tail_bound)

    def number_distribution(self) -> np.ndarray:
        """Total photon number weights ``p_n`` for ``n = 0..cutoff``."""
        probs = np.abs(self.amps) ** 2
        c = self.cutoff
        # p_n is the n-th anti-diagonal sum.
        flipped = probs[:, ::-1]
        return np.array([np.trace(flipped, offset=c - n) for n in range(c + 1)])

    # -- serialization -------------------------------------------------
    def to_dict(self) -> dict:
        ks, ls = np.nonzero(self.amps)
        return {
            "cutoff": int(self.cutoff),
            "amps": [
                [int(k), int(l), float(self.amps[k, l].real), float(self.amps[k, l].imag)]
                for k, l in zip(ks, ls)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict, eps_trunc: float = EPS_TRUNC) -> "TwoModeKet":
        """Parse the ``{cutoff, amps: [[k, l, re, im], ...]}`` schema.

        Raises ``StateFormatError`` naming the offending location.
        """
        if not isinstance(data, dict):
            raise StateFormatError("$", "expected a JSON object")
        if "cutoff" not in data:
            raise StateFormatError("$.cutoff", "missing")
        cutoff = data["cutoff"]
        if isinstance(cutoff, bool) or not isinstance(cutoff, int) or cutoff < 0:
            raise StateFormatError("$.cutoff", "expected a nonnegative integer")
        rows = data.get("amps")
        if not isinstance(rows, list):
            raise StateFormatError("$.amps", "expected a list")
        amps = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
        for i, row in enumerate(rows):
            where = f"$.amps[{i}]"
            if not isinstance(row, list) or len(row) != 4:
                raise StateFormatError(where, "expected [k, l, re, im]")
            k, l, re, im = row
            if not all(isinstance(v, int) and not isinstance(v, bool) for v in (k, l)):
                raise StateFormatError(where, "k and l must be integers")
            if k < 0 or l < 0 or k + l > cutoff:
                raise StateFormatError(where, f"index ({k}, {l}) outside cutoff {cutoff}")
            if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (re, im)):
                raise StateFormatError(where, "re and im must be numbers")
            amps[k, l] += complex(re, im)
        if not np.all(np.isfinite(amps)):
            raise StateFormatError("$.amps", "non-finite amplitude")
        defect = abs(1.0 - float(np.vdot(amps, amps).real))
        if defect > eps_trunc:
            raise StateFormatError("$.amps", f"state not normalized (|1 - norm^2| = {defect:.3e})")
        return cls(cutoff, amps, defect)

    @classmethod
    def from_json(cls, text: str, eps_trunc: float = EPS_TRUNC) -> "TwoModeKet":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise StateFormatError(f"line {exc.lineno} column {exc.colno}", exc.msg) from exc
        return cls.from_dict(data, eps_trunc)


class StateFormatError(ValueError):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


def _check_same_cutoff(a: TwoModeKet, b: TwoModeKet) -> None:
    if a.cutoff != b.cutoff:
        raise ValueError(f"cutoff mismatch: {a.cutoff} vs {b.cutoff}")


def apply_array(op: OpKind, arr: np.ndarray) -> np.ndarray:
    """Apply ``op`` to the first two axes of ``arr`` (trailing axes are batched).

    ``arr`` must vanish outside the ``k + l <= cutoff`` triangle.
    """
    op = OpKind.parse(op)
    dim = arr.shape[0]
    n = np.arange(dim, dtype=float)
    extra = (None,) * (arr.ndim - 2)
    k = n[(slice(None), None) + extra]
    l = n[(None, slice(None)) + extra]
    if op is OpKind.N1:
        return k * arr
    if op is OpKind.N2:
        return l * arr
    if op is OpKind.N_total:
        return (k + l) * arr
    if op is OpKind.Sz:
        return (k - l) * arr
    raise_ = _raise_lower(arr, k, l)
    lower = _lower(arr, k, l)
    if op is OpKind.Sx:
        return raise_ + lower
    if op is OpKind.Sy:
        return 1j * (lower - raise_)
    raise ValueError(f"unsupported operator {op!r}")  # pragma: no cover


def _raise_lower(arr, k, l):
    # a1^dag a2 |k, l> = sqrt((k + 1) l) |k + 1, l - 1>
    out = np.zeros_like(arr, dtype=complex)
    out[1:, :-1] = (np.sqrt((k[:-1] + 1) * l[:, 1:]) * arr[:-1, 1:])
    return out


def _lower(arr, k, l):
    # a2^dag a1 |k, l> = sqrt(k (l + 1)) |k - 1, l + 1>
    out = np.zeros_like(arr, dtype=complex)
    out[:-1, 1:] = (np.sqrt(k[1:] * (l[:, :-1] + 1)) * arr[1:, :-1])
    return out


def apply_operator(op: OpKind | str, psi: TwoModeKet) -> TwoModeKet:
    """Return ``op |psi>`` (unnormalized) in the same truncation."""
    out = apply_array(OpKind.parse(op), psi.amps)
    return TwoModeKet(psi.cutoff, out, psi.tail_bound)


def inner(a: TwoModeKet, b: TwoModeKet) -> complex:
    """``<a|b>``."""
    _check_same_cutoff(a, b)
    return complex(np.vdot(a.amps, b.amps))


def expectation(ops: Sequence[OpKind | str], psi: TwoModeKet) -> complex:
    """``<psi| op_k ... op_1 |psi>`` with ``ops = [op_1, ..., op_k]``.

    ``op_1`` acts first.  An empty sequence gives the squared norm.
    """
    if not np.all(np.isfinite(psi.amps)):
        raise FloatingPointError("non-finite amplitude")
    arr = psi.amps
    for op in ops:
        arr = apply_array(OpKind.parse(op), arr)
    return complex(np.vdot(psi.amps, arr))


def real_expectation(ops: Sequence[OpKind | str], psi: TwoModeKet) -> float:
    """Expectation of a Hermitian product; rejects a non-negligible imaginary part."""
    val = expectation(ops, psi)
    if abs(val.imag) > HERMITIAN_IMAG_TOL * max(1.0, abs(val.real)):
        raise ArithmeticError(f"expectation has imaginary part {val.imag:.3e}")
    return val.real


def basis_labels(cutoff: int) -> tuple[np.ndarray, np.ndarray]:
    """Occupations ``(k, l)`` of the flattened basis, ordered by total n then k."""
    ks, ls = [], []
    for n in range(cutoff + 1):
        for k in range(n + 1):
            ks.append(k)
            ls.append(n - k)
    return np.array(ks), np.array(ls)


def flatten(psi: TwoModeKet) -> np.ndarray:
    ks, ls = basis_labels(psi.cutoff)
    return psi.amps[ks, ls].copy()


def operator_matrix(op: OpKind | str, cutoff: int) -> np.ndarray:
    """Dense matrix of ``op`` on the flattened truncated basis."""
    op = OpKind.parse(op)
    ks, ls = basis_labels(cutoff)
    dim = ks.size
    cols = np.zeros((cutoff + 1, cutoff + 1, dim), dtype=complex)
    cols[ks, ls, np.arange(dim)] = 1.0
    image = apply_array(op, cols)
    return image[ks, ls, :]
