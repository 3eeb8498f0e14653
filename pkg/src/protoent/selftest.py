"""Oracle-versus-numerics checks behind ``protoent selftest``."""
from __future__ import annotations

import math

from . import oracle
from .ancilla import extracted_entropy, pointer_joint_measure
from .embedding import S_embedded, sg_eigencheck
from .fock import OpKind, real_expectation
from .number_phase import S_M, S_N
from .states import ModeSplit, coherent_from_split, coherent_pair, tmsv, xi_from_nbar
from .stokes import covariance_witness


def _check(name, value, ref, tol):
    err = abs(value - ref)
    return name, err <= tol, f"value={value:.12g} ref={ref:.12g} err={err:.2e} tol={tol:.0e}"


def run_checks() -> list[tuple[str, bool, str]]:
    out = []
    for nbar in (0.25, 1.0, 2.0, 5.0):
        psi = coherent_from_split(ModeSplit.from_nbar(nbar, theta=1.1, phi=0.3, delta=-0.7))
        out.append(_check(f"S_M coherent nbar={nbar}", S_M(psi), oracle.coherent_S_M(nbar), 1e-8))
        out.append(_check(f"S_a coherent nbar={nbar}", extracted_entropy(psi),
                          oracle.coherent_S_a(nbar), 1e-8))
    for nbar in (0.5, 1.0, 2.0, 5.0):
        psi = tmsv(xi_from_nbar(nbar), eps_trunc=1e-16)
        out.append(_check(f"S_M tmsv nbar={nbar}", S_M(psi), oracle.tmsv_S_M(nbar), 1e-8))
        out.append(_check(f"S_N tmsv nbar={nbar}", S_N(psi), 0.0, 1e-12))
        sx2 = real_expectation([OpKind.Sx, OpKind.Sx], psi)
        out.append(_check(f"<Sx^2> tmsv nbar={nbar} (relative)",
                          sx2 / oracle.tmsv_Sx2(nbar), 1.0, 1e-8))
    out.append(_check("S_embedded coherent(1,1)", S_embedded(coherent_pair(1, 1)), 0.60, 0.005))
    a = math.sqrt(1.5)
    out.append(_check("S_embedded coherent(a,0) equals S_M",
                      S_embedded(coherent_pair(a, 0)), oracle.coherent_S_M(1.5), 1e-10))
    out.append(_check("Sz witness coherent(2,1)",
                      covariance_witness(coherent_pair(2, 1), OpKind.Sz)[0], 3.0, 1e-8))
    psi = coherent_pair(2, 1)
    moments = pointer_joint_measure(psi, OpKind.Sz, OpKind.N_total)
    ab = real_expectation([OpKind.Sz, OpKind.N_total], psi)
    out.append(_check("pointer <A P> = <A B>", moments.meanAP, ab, 1e-10))
    out.append(_check("SG-squared eigenstate residual",
                      sg_eigencheck(tmsv(0.5, eps_trunc=1e-24)), 0.0, 1e-10))
    return out
