import math

import numpy as np
import pytest

from nsbell.beamsplitter import MIRROR, SYMMETRIC, Mode, from_reflectance
from nsbell.bell import bell_coefficients_closed_form
from nsbell.oracle import CreationPolynomial, draws, oracle_equivalence_suite, oracle_propagate
from nsbell.states import CROSS_SIDE, DIAG, V, JonesVector, product_input_state

h = 1 / math.sqrt(2)


def test_mirror_identity():
    ja, jb = JonesVector(0.6, 0.8j), DIAG
    assert oracle_propagate(ja, jb, MIRROR).allclose(product_input_state(ja, jb), atol=0)


def test_bunching_both_v():
    out = oracle_propagate(V, V, SYMMETRIC)
    assert out[Mode.aV, Mode.aV] == pytest.approx(1j * h, abs=1e-15)
    assert out[Mode.bV, Mode.bV] == pytest.approx(1j * h, abs=1e-15)
    assert max(abs(out[p]) for p in CROSS_SIDE) < 1e-15


def test_case1_cross_side():
    out = oracle_propagate(DIAG, DIAG, from_reflectance(0.6))
    for p in CROSS_SIDE:
        assert out[p] == pytest.approx(0.1, abs=1e-15)


def test_polynomial_degree_capped():
    x = CreationPolynomial({(Mode.aH,): 1})
    with pytest.raises(ValueError, match="degree"):
        (x * x) * x
    with pytest.raises(ValueError, match="finite"):
        CreationPolynomial({(Mode.aH,): np.inf})


def test_polynomial_commutes():
    x = CreationPolynomial({(Mode.bV,): 2})
    y = CreationPolynomial({(Mode.aH,): 3j})
    assert (x * y).terms == (y * x).terms == {(Mode.aH, Mode.bV): 6j}


def test_suite_with_mirror_is_exact():
    rep = oracle_equivalence_suite(1, seed=7, mirror=True)
    assert rep.max_deviation == 0
    assert rep.passed


def test_suite_rejects_zero_draws():
    with pytest.raises(ValueError):
        oracle_equivalence_suite(0, seed=1)


def test_suite_deterministic_and_formatted():
    a, b = oracle_equivalence_suite(20, seed=5), oracle_equivalence_suite(20, seed=5)
    assert a == b
    text = a.format()
    assert "draws: 20" in text and "seed: 5" in text and "PASS" in text


def test_draw_distributions():
    ds = draws(300, seed=11)
    r2 = np.array([[d.bs.r_v**2, d.bs.r_h**2] for d in ds])
    assert r2.min() >= 0.05 and r2.max() <= 0.95
    assert {d.bs.sign for d in ds} == {1, -1}
    for d in ds[:20]:
        np.testing.assert_allclose(d.rot_a.conj().T @ d.rot_a, np.eye(2), atol=1e-12)


def test_oracle_norm_and_closed_form():
    for d in draws(200, seed=3):
        out = oracle_propagate(d.ja, d.jb, d.bs)
        assert abs(np.linalg.norm(out.amplitudes) - 1) < 1e-12
        recon = bell_coefficients_closed_form(d.ja, d.jb, d.bs).reconstruct()
        assert max(abs(out[p] - recon[p]) for p in CROSS_SIDE) < 1e-12
