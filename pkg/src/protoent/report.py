"""Per-state diagnostics and the quantity table shared by the CLI."""
from __future__ import annotations

from typing import Callable

import numpy as np

from . import oracle
from .ancilla import extracted_entropy, parity_weights
from .embedding import S_embedded
from .fock import OpKind, TwoModeKet, real_expectation
from .number_phase import dephase_m, dephase_n, linear_entropy
from .stokes import covariance_witness, higher_moment_witness, stokes_report


def _covariance(psi: TwoModeKet) -> float:
    return covariance_witness(psi, OpKind.Sz)[0]


QUANTITIES: dict[str, Callable[[TwoModeKet], float]] = {
    "S_M": lambda psi: linear_entropy(dephase_n(psi)),
    "S_N": lambda psi: linear_entropy(dephase_m(psi)),
    "S_embedded": S_embedded,
    "S_a": extracted_entropy,
    "covariance": _covariance,
    "higher_moment": higher_moment_witness,
}


def coherent_oracle(quantity: str, alpha1: complex, alpha2: complex) -> float | None:
    nbar = abs(alpha1) ** 2 + abs(alpha2) ** 2
    if quantity == "S_M":
        return oracle.coherent_S_M(nbar)
    if quantity == "S_a":
        return oracle.coherent_S_a(nbar)
    if quantity == "covariance":
        return abs(alpha1) ** 2 - abs(alpha2) ** 2
    if quantity == "S_embedded" and (alpha1 == 0 or alpha2 == 0):
        # all photons in one mode: the Gram matrix is diagonal with Poisson weights
        return oracle.coherent_S_M(nbar)
    return None


def tmsv_oracle(quantity: str, nbar: float) -> float | None:
    return {
        "S_M": oracle.tmsv_S_M(nbar),
        "S_N": 0.0,
        "S_embedded": 0.0,
        "S_a": 0.0,
        "covariance": 0.0,
        "higher_moment": oracle.tmsv_NSx2(nbar) - nbar * oracle.tmsv_Sx2(nbar),
    }.get(quantity)


def state_report(psi: TwoModeKet) -> dict:
    """Every diagnostic of ``psi`` as plain JSON-ready data."""
    dn, dm = dephase_n(psi), dephase_m(psi)
    p_even, p_odd = parity_weights(psi)
    report = {
        "cutoff": psi.cutoff,
        "norm": float(np.sqrt(psi.norm_sq)),
        "tail_bound": psi.tail_bound,
        "nbar": real_expectation([OpKind.N_total], psi),
        "p_n": {str(n): p for n, p in zip(dn.labels, dn.weights.tolist())},
        "p_twoM": {str(m): p for m, p in zip(dm.labels, dm.weights.tolist())},
        "S_M": linear_entropy(dn),
        "S_N": linear_entropy(dm),
        "S_M_minus_S_N": linear_entropy(dn) - linear_entropy(dm),
        "S_embedded": S_embedded(psi),
        "stokes": stokes_report(psi).to_dict(),
        "parity": {"p_even": p_even, "p_odd": p_odd},
        "S_a": extracted_entropy(psi),
    }
    return report
