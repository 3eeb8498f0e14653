import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

from protoent.fock import TwoModeKet
from protoent.number_phase import (BlockKet, dephase_m, dephase_n, linear_entropy, relabel)
from protoent.states import ModeSplit, coherent_from_split, coherent_pair, random_pure, tmsv

# 1 - exp(-2) I0(2), evaluated with 40-digit arithmetic
S_M_COHERENT_NBAR_1 = 0.6914916774463289604666156807334384599136


def test_relabel_examples():
    blocks = relabel(TwoModeKet.basis(3, 1)).blocks
    assert blocks[4][3] == 1           # n1 = 3 -> twoM = 2*3 - 4 = +2
    assert relabel(TwoModeKet.basis(3, 1)).amplitude(4, 2) == 1
    assert relabel(TwoModeKet.vacuum()).amplitude(0, 0) == 1


def test_relabel_rejects_bad_labels():
    with pytest.raises(KeyError):
        relabel(TwoModeKet.vacuum(3)).amplitude(3, 0)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6), cutoff=st.integers(0, 10))
def test_relabel_round_trip_is_exact(seed, cutoff):
    psi = random_pure(seed, cutoff)
    back = relabel(psi).to_ket(cutoff)
    np.testing.assert_array_equal(back.amps, psi.amps)


def test_block_ket_shape_check():
    with pytest.raises(ValueError):
        BlockKet({2: np.zeros(2)})


def test_dephase_n_examples():
    rho = dephase_n(TwoModeKet.basis(2, 0))
    assert rho.labels == [2] and rho.weights.tolist() == [1.0]
    rho = dephase_n(coherent_pair(1, 1))
    for n, p in zip(rho.labels, rho.weights):
        assert abs(p - math.exp(-2) * 2 ** n / math.factorial(n)) < 1e-12
    psi = TwoModeKet.superpose([(1, 0, 0), (1, 1, 0)])
    rho = dephase_n(psi)
    np.testing.assert_allclose(rho.weights, [0.5, 0.5])


def test_dephase_m_examples():
    rho = dephase_m(tmsv(0.6))
    assert rho.labels == [0]
    assert linear_entropy(rho) == 0
    rho = dephase_m(TwoModeKet.basis(1, 0))
    assert rho.labels == [1] and rho.weights[0] == 1
    # alpha2 = 0: every block n sits entirely at twoM = n
    rho = dephase_m(coherent_pair(1, 0))
    for twoM, p in zip(rho.labels, rho.weights):
        assert abs(p - math.exp(-1) / math.factorial(twoM)) < 1e-12


def test_components_orthonormal():
    rho = dephase_m(random_pure(2, 6))
    for i, a in enumerate(rho.components):
        assert a.norm_sq == pytest.approx(1)
        for b in rho.components[i + 1:]:
            assert abs(np.vdot(a.amps, b.amps)) < 1e-12
    assert rho.total_weight() == pytest.approx(1, abs=1e-12)


def test_linear_entropy_examples():
    assert linear_entropy(dephase_n(TwoModeKet.basis(3, 2))) == 0
    assert linear_entropy(dephase_n(coherent_pair(1, 0))) == pytest.approx(
        S_M_COHERENT_NBAR_1, abs=1e-12)
    psi = tmsv(math.sqrt(1 / 3))  # nbar = 1
    assert linear_entropy(dephase_n(psi)) == pytest.approx(0.5, abs=1e-11)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_entropies_bounded(seed):
    psi = random_pure(seed, 7)
    for rho in (dephase_n(psi), dephase_m(psi)):
        assert 0 <= linear_entropy(rho) < 1


def test_zero_entropy_iff_definite_number():
    psi = TwoModeKet.superpose([(1, 3, 1), (1j, 2, 2), (0.5, 0, 4)])
    assert linear_entropy(dephase_n(psi)) == 0
    assert linear_entropy(dephase_n(TwoModeKet.superpose([(1, 0, 1), (1, 1, 1)]))) > 0


@pytest.mark.parametrize("seed", range(5))
def test_purity_matches_direct_trace(seed):
    psi = random_pure(seed, 6)
    rho = dephase_n(psi)
    mat = rho.density_matrix()
    direct = np.trace(mat @ mat).real
    assert np.sum(rho.weights ** 2) == pytest.approx(direct, abs=1e-12)
    # the matrix really is block diagonal in n
    from protoent.fock import basis_labels
    ks, ls = basis_labels(6)
    n = ks + ls
    assert np.all(mat[n[:, None] != n[None, :]] == 0)


def test_weights_invariant_under_block_unitary():
    psi = random_pure(7, 5)
    blocks = relabel(psi).blocks
    rotated = {n: unitary_group.rvs(n + 1, random_state=n) @ v if n else v
               for n, v in blocks.items()}
    phi = BlockKet(rotated).to_ket(5)
    np.testing.assert_allclose(dephase_n(phi).weights, dephase_n(psi).weights, atol=1e-14)


def test_coherent_S_M_independent_of_split():
    values = []
    for theta in np.linspace(0.1, math.pi, 5):
        for phi, delta in ((0.0, 0.0), (1.2, -0.4)):
            psi = coherent_from_split(ModeSplit.from_nbar(1.7, theta, phi, delta))
            values.append(linear_entropy(dephase_n(psi)))
    assert max(values) - min(values) < 1e-12


def test_tmsv_S_N_zero():
    for xi in (0.2, 0.5, 0.8):
        assert linear_entropy(dephase_m(tmsv(xi))) == 0
