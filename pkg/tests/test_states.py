import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from protoent.number_phase import relabel
from protoent.states import (CutoffError, ModeSplit, coherent_pair, coherent_pair_via_su2,
                             poisson_cutoff, poisson_tail, random_pure, su2_coherent, tmsv,
                             tmsv_nbar, xi_from_nbar)

# Poisson weight of n = 2 at mean 2, and exp(-1/2) / sqrt(2), both to 40 digits
P2_POISSON_2 = 0.2706705664732253837879989899449688068153
AMP_20_ALPHA_1 = 0.4288819424803533982400948206393862390604


def test_coherent_vacuum():
    psi = coherent_pair(0, 0)
    assert psi.cutoff == 0
    assert psi.amps[0, 0] == 1


def test_coherent_pair_poisson_weight():
    psi = coherent_pair(1, 1)
    assert psi.number_distribution()[2] == pytest.approx(P2_POISSON_2, abs=1e-15)


def test_coherent_single_mode_amplitude():
    psi = coherent_pair(1, 0)
    assert psi.amps[2, 0] == pytest.approx(AMP_20_ALPHA_1, abs=1e-15)


@pytest.mark.parametrize("a1, a2", [(1, 1), (2, 1), (0.3 + 0.4j, -1.1j), (3, 0)])
def test_coherent_marginal_matches_poisson(a1, a2):
    psi = coherent_pair(a1, a2)
    nbar = abs(a1) ** 2 + abs(a2) ** 2
    p = psi.number_distribution()
    for n, pn in enumerate(p):
        ref = math.exp(-nbar) * nbar ** n / math.factorial(n)
        assert abs(pn - ref) < 1e-12


def test_coherent_large_cutoff_no_overflow():
    psi = coherent_pair(math.sqrt(10), 0, cutoff=200)
    assert np.all(np.isfinite(psi.amps))
    log_ref = -5 + 100 * math.log(10) - 0.5 * math.lgamma(201)
    assert abs(psi.amps[200, 0]) == pytest.approx(math.exp(log_ref), rel=1e-12)


def test_tail_bound_invariant():
    for psi in (coherent_pair(1, 2), tmsv(0.7), random_pure(5, 6)):
        assert abs(1 - psi.norm_sq) <= psi.tail_bound <= 1e-12


def test_cutoff_too_small_suggests_cutoff():
    with pytest.raises(CutoffError) as info:
        coherent_pair(2, 1, cutoff=5)
    assert info.value.suggested_cutoff == poisson_cutoff(5.0)
    assert poisson_tail(5.0, info.value.suggested_cutoff) < 1e-12


def test_tmsv_vacuum_and_diagonal_support():
    assert tmsv(0).amps[0, 0] == 1
    psi = tmsv(0.6 * cmath.exp(0.4j))
    off = ~np.eye(psi.cutoff + 1, dtype=bool)
    assert not np.any(psi.amps[off])


def test_tmsv_p0():
    psi = tmsv(xi_from_nbar(2.0))
    assert abs(xi_from_nbar(2.0)) ** 2 == pytest.approx(0.5)
    assert psi.number_distribution()[0] == pytest.approx(0.5, abs=1e-15)


@pytest.mark.parametrize("nbar", [0.5, 1.0, 2.0, 5.0])
def test_tmsv_marginal_matches_geometric(nbar):
    psi = tmsv(xi_from_nbar(nbar))
    assert tmsv_nbar(xi_from_nbar(nbar)) == pytest.approx(nbar)
    p = psi.number_distribution()
    for n, pn in enumerate(p):
        ref = 2 * nbar ** (n // 2) / (nbar + 2) ** (n // 2 + 1) if n % 2 == 0 else 0.0
        assert abs(pn - ref) < 1e-12


def test_tmsv_relabels_to_m_zero():
    blocks = relabel(tmsv(0.5)).blocks
    for n, vec in blocks.items():
        for k, amp in enumerate(vec):
            if amp != 0:
                assert 2 * k - n == 0


def test_tmsv_domain():
    with pytest.raises(ValueError):
        tmsv(1.0)


def test_su2_examples():
    vec = su2_coherent(0, 1.3, 0.2).blocks[0]
    np.testing.assert_allclose(vec, [1])
    vec = su2_coherent(1, math.pi / 2, 0).blocks[1]
    np.testing.assert_allclose(vec, [1 / math.sqrt(2), 1 / math.sqrt(2)], atol=1e-15)
    # theta = pi puts every photon in mode 1: n1 = 2 is the last storage slot
    vec = su2_coherent(2, math.pi, 0.9).blocks[2]
    assert abs(vec[2]) == pytest.approx(1)
    assert np.abs(vec[:2]).max() < 1e-15


def test_su2_normalized():
    for n in (3, 40, 150):
        vec = su2_coherent(n, 0.7, 1.1).blocks[n]
        assert np.linalg.norm(vec) == pytest.approx(1, abs=1e-12)


def test_su2_negative_n():
    with pytest.raises(ValueError):
        su2_coherent(-1, 0, 0)


@settings(max_examples=40, deadline=None)
@given(r=st.floats(0, math.sqrt(5)), theta=st.floats(0, math.pi),
       phi=st.floats(-3, 3), delta=st.floats(-3, 3))
def test_coherent_pair_equals_su2_expansion(r, theta, phi, delta):
    split = ModeSplit(r, theta, phi, delta)
    psi = coherent_pair(*split.alphas)
    rebuilt = coherent_pair_via_su2(*split.alphas, cutoff=psi.cutoff).to_ket(psi.cutoff)
    assert np.max(np.abs(rebuilt.amps - psi.amps)) < 1e-10


@settings(max_examples=50, deadline=None)
@given(re1=st.floats(-3, 3), im1=st.floats(-3, 3), re2=st.floats(-3, 3), im2=st.floats(-3, 3))
def test_mode_split_round_trip(re1, im1, re2, im2):
    a1, a2 = complex(re1, im1), complex(re2, im2)
    b1, b2 = ModeSplit.from_alphas(a1, a2).alphas
    assert abs(b1 - a1) < 1e-12 and abs(b2 - a2) < 1e-12


def test_random_pure_properties():
    assert abs(random_pure(9, 0).amps[0, 0]) == pytest.approx(1)
    assert random_pure(4, 8).norm_sq == pytest.approx(1, abs=1e-12)
    np.testing.assert_array_equal(random_pure(42, 6).amps, random_pure(42, 6).amps)
    assert not np.array_equal(random_pure(42, 6).amps, random_pure(43, 6).amps)
