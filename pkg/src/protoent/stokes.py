"""Covariance witnesses between total number and the Stokes operators."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .fock import OpKind, TwoModeKet, real_expectation

EPS_WIT = 1e-8
STOKES = (OpKind.Sx, OpKind.Sy, OpKind.Sz)


def self_covariance(psi: TwoModeKet, a: OpKind | str) -> float:
    """Variance ``<A^2> - <A>^2``."""
    a = OpKind.parse(a)
    return real_expectation([a, a], psi) - real_expectation([a], psi) ** 2


def covariance(psi: TwoModeKet, a: OpKind | str, b: OpKind | str) -> float:
    """``<A B> - <A><B>`` for commuting ``A`` and ``B``."""
    a, b = OpKind.parse(a), OpKind.parse(b)
    return real_expectation([b, a], psi) - real_expectation([a], psi) * real_expectation([b], psi)


def covariance_witness(psi: TwoModeKet, b: OpKind | str,
                       eps_wit: float = EPS_WIT) -> tuple[float, bool]:
    """Number-Stokes covariance ``<N B> - <N><B>`` and whether it flags entanglement.

    ``b = N`` is the self-covariance case and returns the number variance.
    """
    b = OpKind.parse(b)
    if b is OpKind.N_total:
        value = self_covariance(psi, OpKind.N_total)
    elif b in STOKES:
        value = covariance(psi, OpKind.N_total, b)
    else:
        raise ValueError(f"witness partner must be a Stokes operator or N, got {b.name}")
    return value, abs(value) > eps_wit


def higher_moment_witness(psi: TwoModeKet) -> float:
    """``<N Sx^2> - <N><Sx^2>``."""
    n_sx2 = real_expectation([OpKind.Sx, OpKind.Sx, OpKind.N_total], psi)
    return n_sx2 - real_expectation([OpKind.N_total], psi) * real_expectation(
        [OpKind.Sx, OpKind.Sx], psi)


@dataclass
class Witness:
    label: str
    value: float
    entangled: bool


@dataclass
class StokesReport:
    meanN: float
    meanS: tuple[float, float, float]
    meanNS: tuple[float, float, float]
    covNS: tuple[float, float, float]
    meanSx2: float
    meanNSx2: float
    covNSx2: float
    witnesses: list[Witness] = field(default_factory=list)

    @property
    def any_entangled(self) -> bool:
        return any(w.entangled for w in self.witnesses)

    def to_dict(self) -> dict:
        return asdict(self)


def stokes_report(psi: TwoModeKet, eps_wit: float = EPS_WIT) -> StokesReport:
    """Collect every first and mixed moment used by the witnesses.

    All three Stokes partners are tried; a nonzero covariance with any of
    them flags entanglement.
    """
    meanN = real_expectation([OpKind.N_total], psi)
    meanS = tuple(real_expectation([s], psi) for s in STOKES)
    meanNS = tuple(real_expectation([s, OpKind.N_total], psi) for s in STOKES)
    covNS = tuple(ns - meanN * s for ns, s in zip(meanNS, meanS))
    meanSx2 = real_expectation([OpKind.Sx, OpKind.Sx], psi)
    meanNSx2 = real_expectation([OpKind.Sx, OpKind.Sx, OpKind.N_total], psi)
    covNSx2 = meanNSx2 - meanN * meanSx2
    witnesses = [Witness(f"N-{s.name}", v, abs(v) > eps_wit) for s, v in zip(STOKES, covNS)]
    witnesses.append(Witness("N-Sx^2", covNSx2, abs(covNSx2) > eps_wit))
    varN = self_covariance(psi, OpKind.N_total)
    witnesses.append(Witness("N-N", varN, abs(varN) > eps_wit))
    return StokesReport(meanN, meanS, meanNS, covNS, meanSx2, meanNSx2, covNSx2, witnesses)
