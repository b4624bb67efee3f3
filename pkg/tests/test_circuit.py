import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nsbell.beamsplitter import MIRROR, SYMMETRIC, Mode, make_beam_splitter
from nsbell.bell import coincidence_probabilities
from nsbell.circuit import (
    PartialDistinguishabilityOutput,
    PolarizationRotation,
    ScenarioConfig,
    apply_beam_splitter,
    apply_polarization_rotation,
    distinguishable_propagate,
    simulate_scenario,
    symmetrize,
)
from nsbell.oracle import oracle_propagate
from nsbell.states import CROSS_SIDE, DIAG, V, JonesVector, TwoPhotonState, norm, product_input_state

from conftest import SQ06, jones_vectors, splitters, unitaries

h = 1 / math.sqrt(2)


def test_identity_rotation_is_noop():
    s = product_input_state(DIAG, V)
    assert apply_polarization_rotation(s, "a", PolarizationRotation.identity()).allclose(s, atol=0)


def test_swap_on_path_a_relabels():
    out = apply_polarization_rotation(product_input_state(V, V), "a", PolarizationRotation.swap())
    assert out.allclose(TwoPhotonState.basis(Mode.aH, Mode.bV), atol=0)


def test_quarter_rotation_makes_diagonal():
    out = apply_polarization_rotation(product_input_state(V, V), "a", PolarizationRotation.rotation(math.pi / 4))
    expect = TwoPhotonState.from_dict({(Mode.aV, Mode.bV): h, (Mode.aH, Mode.bV): h})
    assert out.allclose(expect, atol=1e-15)


def test_non_unitary_rotation_rejected():
    with pytest.raises(ValueError, match="unitary"):
        apply_polarization_rotation(product_input_state(V, V), "a", np.array([[1, 0], [0, 2]]))
    with pytest.raises(ValueError, match="path"):
        apply_polarization_rotation(product_input_state(V, V), "c", PolarizationRotation.identity())


def test_hom_bunching_both_v():
    out = apply_beam_splitter(product_input_state(V, V), SYMMETRIC)
    assert out[Mode.aV, Mode.aV] == pytest.approx(1j * h, abs=1e-15)
    assert out[Mode.bV, Mode.bV] == pytest.approx(1j * h, abs=1e-15)
    assert abs(out[Mode.aV, Mode.bV]) < 1e-15


def test_mirror_leaves_state_alone():
    s = product_input_state(JonesVector(0.6, 0.8j), DIAG)
    assert apply_beam_splitter(s, MIRROR).allclose(s, atol=0)


def test_running_example_both_v():
    out = apply_beam_splitter(product_input_state(V, V), make_beam_splitter(SQ06, SQ06))
    # hand expansion: (r aV + i t bV)(i t aV + r bV), bunched terms times sqrt(2)
    bunched = 1j * math.sqrt(2) * math.sqrt(0.24)
    assert out[Mode.aV, Mode.bV] == pytest.approx(0.2, abs=1e-15)
    assert out[Mode.aV, Mode.aV] == pytest.approx(bunched, abs=1e-15)
    assert out[Mode.bV, Mode.bV] == pytest.approx(bunched, abs=1e-15)
    assert abs(bunched) == pytest.approx(0.6928203230, abs=1e-10)
    assert 0.2**2 + 2 * 0.48 == pytest.approx(1.0)
    assert norm(out) == pytest.approx(1, abs=1e-12)


def test_distinguishable_mirror_identity():
    d = distinguishable_propagate(JonesVector(0.6, 0.8), DIAG, MIRROR)
    np.testing.assert_allclose(d.amplitudes, np.kron([0.8, 0.6, 0, 0], [0, 0, h, h]), atol=1e-15)


def test_distinguishable_symmetric_both_v():
    d = distinguishable_propagate(V, V, SYMMETRIC)
    r = t = h
    got = [d[Mode.aV, Mode.aV], d[Mode.aV, Mode.bV], d[Mode.bV, Mode.aV], d[Mode.bV, Mode.bV]]
    np.testing.assert_allclose(got, [1j * r * t, r * r, -t * t, 1j * r * t], atol=1e-15)
    assert norm(d) == pytest.approx(1)


def test_distinguishable_running_example():
    d = distinguishable_propagate(V, V, make_beam_splitter(SQ06, SQ06))
    assert d[Mode.aV, Mode.bV] == pytest.approx(0.6, abs=1e-15)
    assert d[Mode.bV, Mode.aV] == pytest.approx(-0.4, abs=1e-15)


def _cfg(ja, jb, bs, gamma=1.0):
    return ScenarioConfig(ja=ja, jb=jb, bs=bs, gamma=gamma)


def test_gamma_zero_is_classical():
    out = simulate_scenario(_cfg(V, V, SYMMETRIC, gamma=0.0))
    assert isinstance(out, PartialDistinguishabilityOutput)
    assert coincidence_probabilities(out).cross_side_total == pytest.approx(0.5, abs=1e-15)


def test_gamma_one_shows_full_dip():
    out = simulate_scenario(_cfg(V, V, SYMMETRIC))
    assert isinstance(out, TwoPhotonState)
    assert coincidence_probabilities(out).cross_side_total < 1e-30


def test_invalid_gamma():
    with pytest.raises(ValueError, match="gamma"):
        _cfg(V, V, SYMMETRIC, gamma=1.5)


def test_perturbation_rotates_preparation():
    c = ScenarioConfig(ja=DIAG, jb=DIAG, bs=MIRROR, eps=0.1, eps_prime=-0.2)
    ja, jb = c.prepared_jones()
    assert ja.alpha == pytest.approx(math.cos(math.pi / 4 + 0.1))
    assert jb.beta == pytest.approx(math.sin(math.pi / 4 - 0.2))


@settings(max_examples=200)
@given(jones_vectors(), jones_vectors(), splitters())
def test_norm_preserved(ja, jb, bs):
    assert abs(norm(apply_beam_splitter(product_input_state(ja, jb), bs)) - 1) < 1e-12


@settings(max_examples=200)
@given(jones_vectors(), splitters())
def test_identical_photons_on_symmetric_splitter(j, bs):
    s = product_input_state(j, j)
    for sign in (1, -1):
        out = apply_beam_splitter(s, make_beam_splitter(h, h, sign))
        assert max(abs(out[p]) for p in CROSS_SIDE) < 1e-15


@settings(max_examples=200)
@given(jones_vectors(), jones_vectors(), splitters(), unitaries(), unitaries())
def test_engine_matches_oracle(ja, jb, bs, ua, ub):
    s = product_input_state(ja, jb)
    s = apply_polarization_rotation(s, "a", PolarizationRotation(ua))
    s = apply_polarization_rotation(s, "b", PolarizationRotation(ub))
    out = apply_beam_splitter(s, bs)
    assert out.max_deviation(oracle_propagate(ja, jb, bs, ua, ub)) < 1e-10


@settings(max_examples=200)
@given(jones_vectors(), jones_vectors(), splitters())
def test_symmetrized_distinguishable_matches_bosonic(ja, jb, bs):
    sym = symmetrize(distinguishable_propagate(ja, jb, bs))
    assert sym.max_deviation(apply_beam_splitter(product_input_state(ja, jb), bs)) < 1e-10


@given(jones_vectors(), jones_vectors(), splitters(), st.floats(0, 1))
def test_stats_affine_in_gamma_squared(ja, jb, bs, g):
    def stats(gamma):
        return np.array(list(coincidence_probabilities(simulate_scenario(_cfg(ja, jb, bs, gamma))).as_dict().values()))

    both, neither = stats(1.0), stats(0.0)
    np.testing.assert_allclose(stats(g), g**2 * both + (1 - g**2) * neither, atol=1e-12)
