"""Entanglement between total photon number and polarization for two-mode
pure states: dephasing entropies, covariance witnesses, the embedded-space
entropy and ancilla extraction schemes."""

from .fock import OpKind, TwoModeKet, apply_operator, expectation, inner
from .states import ModeSplit, coherent_pair, random_pure, su2_coherent, tmsv, xi_from_nbar
from .number_phase import BlockKet, DephasedDensity, dephase_m, dephase_n, linear_entropy, relabel
from .embedding import EmbeddedGram, embed_gram, embedded_entropy, sg_eigencheck
from .stokes import (StokesReport, covariance_witness, higher_moment_witness,
                     self_covariance, stokes_report)
from .ancilla import (AtomCouplingConfig, atomic_entropy, evolve_atoms,
                      pointer_joint_measure, project_and_reduce)

__version__ = "0.1.0"

__all__ = [
    "OpKind", "TwoModeKet", "apply_operator", "expectation", "inner",
    "ModeSplit", "coherent_pair", "random_pure", "su2_coherent", "tmsv", "xi_from_nbar",
    "BlockKet", "DephasedDensity", "dephase_m", "dephase_n", "linear_entropy", "relabel",
    "EmbeddedGram", "embed_gram", "embedded_entropy", "sg_eigencheck",
    "StokesReport", "covariance_witness", "higher_moment_witness", "self_covariance",
    "stokes_report",
    "AtomCouplingConfig", "atomic_entropy", "evolve_atoms", "pointer_joint_measure",
    "project_and_reduce",
]
