import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from protoent.fock import (OpKind, StateFormatError, TwoModeKet, apply_operator,
                           basis_labels, expectation, flatten, inner, operator_matrix,
                           real_expectation)
from protoent.states import coherent_pair, random_pure, tmsv, xi_from_nbar


def test_number_on_vacuum_is_zero():
    out = apply_operator(OpKind.N_total, TwoModeKet.vacuum(3))
    assert not np.any(out.amps)


def test_sz_eigenstate():
    psi = TwoModeKet.basis(1, 0)
    out = apply_operator(OpKind.Sz, psi)
    np.testing.assert_array_equal(out.amps, psi.amps)


def test_sx_moves_photon_between_modes():
    # direct matrix element of a2^dag a1 on |1,0>
    out = apply_operator(OpKind.Sx, TwoModeKet.basis(1, 0))
    np.testing.assert_array_equal(out.amps, TwoModeKet.basis(0, 1).amps)


def test_ladder_matrix_elements_against_explicit_kron():
    # independent construction: single-mode ladder matrices and Kronecker products
    dim = 6
    a = np.diag(np.sqrt(np.arange(1, dim)), 1)
    I = np.eye(dim)
    a1, a2 = np.kron(a, I), np.kron(I, a)
    full = {
        OpKind.N1: a1.T @ a1,
        OpKind.N2: a2.T @ a2,
        OpKind.Sx: a1.T @ a2 + a2.T @ a1,
        OpKind.Sy: 1j * (a2.T @ a1 - a1.T @ a2),
        OpKind.Sz: a1.T @ a1 - a2.T @ a2,
    }
    cutoff = dim - 1
    ks, ls = basis_labels(cutoff)
    flat_idx = ks * dim + ls
    for op, mat in full.items():
        np.testing.assert_allclose(operator_matrix(op, cutoff), mat[np.ix_(flat_idx, flat_idx)],
                                   atol=1e-14)


@pytest.mark.parametrize("cutoff", [1, 4, 9])
def test_commutators(cutoff):
    N = operator_matrix(OpKind.N_total, cutoff)
    Sx, Sy, Sz = (operator_matrix(op, cutoff) for op in (OpKind.Sx, OpKind.Sy, OpKind.Sz))
    for S in (Sx, Sy, Sz):
        assert np.max(np.abs(N @ S - S @ N)) < 1e-12
    assert np.max(np.abs(Sx @ Sy - Sy @ Sx - 2j * Sz)) < 1e-12
    assert np.max(np.abs(Sy @ Sz - Sz @ Sy - 2j * Sx)) < 1e-12
    assert np.max(np.abs(Sz @ Sx - Sx @ Sz - 2j * Sy)) < 1e-12


@pytest.mark.parametrize("op", list(OpKind))
def test_operators_preserve_total_number_blocks(op):
    psi = random_pure(3, 7)
    before = np.add.outer(np.arange(8), np.arange(8))
    for n in range(8):
        block = np.where(before == n, psi.amps, 0)
        out = apply_operator(op, TwoModeKet(7, block)).amps
        assert not np.any(out[before != n])


def test_expectation_examples():
    assert expectation([OpKind.N_total], coherent_pair(1, 1)) == pytest.approx(2.0, abs=1e-10)
    assert abs(expectation([OpKind.Sz], coherent_pair(1, 1))) < 1e-12
    psi = tmsv(xi_from_nbar(2.0), eps_trunc=1e-16)
    assert real_expectation([OpKind.Sx, OpKind.Sx], psi) == pytest.approx(8.0, rel=1e-10)


def test_empty_sequence_is_norm():
    assert expectation([], random_pure(1, 5)) == pytest.approx(1.0)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), op=st.sampled_from(list(OpKind)))
def test_hermitian_expectations_are_real(seed, op):
    psi = random_pure(seed, 6)
    assert abs(expectation([op], psi).imag) < 1e-10
    assert abs(expectation([op, op], psi).imag) < 1e-10


@settings(max_examples=30, deadline=None)
@given(s1=st.integers(0, 10**6), s2=st.integers(0, 10**6))
def test_inner_conjugate_symmetric(s1, s2):
    a, b = random_pure(s1, 5), random_pure(s2, 5)
    assert inner(a, b) == pytest.approx(inner(b, a).conjugate(), abs=1e-14)


def test_inner_examples():
    assert inner(TwoModeKet.vacuum(), TwoModeKet.vacuum()) == 1
    assert inner(TwoModeKet.basis(1, 0), TwoModeKet.basis(0, 1)) == 0
    psi = coherent_pair(1, 0)
    vac = TwoModeKet.vacuum(psi.cutoff)
    assert inner(psi, vac) == pytest.approx(math.exp(-0.5), abs=1e-15)


def test_inner_cutoff_mismatch():
    with pytest.raises(ValueError, match="cutoff mismatch"):
        inner(TwoModeKet.vacuum(1), TwoModeKet.vacuum(2))


def test_unknown_operator():
    with pytest.raises(ValueError):
        apply_operator("Sw", TwoModeKet.vacuum())


def test_ket_is_immutable():
    psi = TwoModeKet.vacuum(2)
    with pytest.raises(ValueError):
        psi.amps[0, 0] = 2


def test_rejects_amplitude_outside_triangle():
    amps = np.zeros((2, 2), dtype=complex)
    amps[1, 1] = 1
    with pytest.raises(ValueError, match="k \\+ l > cutoff"):
        TwoModeKet(1, amps)


def test_rejects_nonfinite():
    amps = np.array([[np.nan]], dtype=complex)
    with pytest.raises(FloatingPointError):
        TwoModeKet(0, amps)


def test_json_round_trip():
    psi = random_pure(11, 4)
    back = TwoModeKet.from_json(psi.to_json())
    np.testing.assert_array_equal(back.amps, psi.amps)
    assert back.cutoff == psi.cutoff


@pytest.mark.parametrize("text, where", [
    ('{"amps": []}', "$.cutoff"),
    ('{"cutoff": 1, "amps": [[0, 0, 1]]}', "$.amps[0]"),
    ('{"cutoff": 1, "amps": [[1, 1, 1, 0]]}', "$.amps[0]"),
    ('{"cutoff": 1, "amps": [[0, 0, 0.5, 0]]}', "$.amps"),
    ('{"cutoff": 1, "amps": [[0, 0, 1, 0]', "line 1"),
])
def test_json_errors_name_location(text, where):
    with pytest.raises(StateFormatError) as info:
        TwoModeKet.from_json(text)
    assert info.value.location.startswith(where)


def test_flatten_orders_by_total_number():
    psi = TwoModeKet.superpose([(1, 0, 0), (2, 0, 1), (3, 1, 0)], normalize=False)
    np.testing.assert_array_equal(flatten(psi), [1, 2, 3])
