import math

import numpy as np
import pytest

from nsbell import config as cfgio
from nsbell.config import ConfigError
from nsbell.report import (
    COLUMNS,
    GridAxis,
    SweepSpec,
    csv_text,
    fmt,
    optimize,
    run_sweep,
    scenario_row,
)


def test_defaults_are_case1_r06():
    c = cfgio.loads("")
    assert c.case == 1
    assert c.bs.r_v**2 == pytest.approx(0.6)


def test_comments_and_spacing():
    c = cfgio.loads("# header\ncase = 2   # second arrangement\n\nr_sq=0.7\ngamma = 0.5\n")
    assert c.case == 2 and c.gamma == 0.5


@pytest.mark.parametrize(
    "text,match",
    [
        ("gamma=1.5", "gamma"),
        ("bogus = 1", "line 1: unknown key 'bogus'"),
        ("case = 1\ncase = 2", "line 2: duplicate"),
        ("r_sq = x", "r_sq: not a number"),
        ("r_sq = 0.5\nr_v = 0.5", "either r_sq"),
        ("sign = 3", "sign"),
        ("case = 1\nalpha_re = 1", "fixes the Jones"),
        ("case = 0\nalpha_re = 1\nbeta_re = 1", "not normalized"),
        ("case = 4", "case"),
        ("just words", "line 1"),
    ],
)
def test_errors_name_the_problem(text, match):
    with pytest.raises(ConfigError, match=match):
        cfgio.loads(text)


def test_custom_preparation_round_trip():
    text = "case = 0\nr_v = 0.9\nr_h = 0.3\nsign = -1\nalpha_re = 0.6\nbeta_im = 0.8\nrot_b = 0.3\ngamma = 0.25\n"
    c = cfgio.loads(text)
    assert c.case is None and c.bs.sign == -1 and c.ja.beta == 0.8j
    c2 = cfgio.loads(cfgio.dumps(c))
    assert c2.ja == c.ja and c2.jb == c.jb and c2.bs == c.bs and c2.gamma == c.gamma
    np.testing.assert_allclose(c2.rot_b.matrix, c.rot_b.matrix, atol=1e-15)


def test_degenerate_warning_is_reported():
    c, notes = cfgio.quiet_loads("case = 1\nr_sq = 0.5\n")
    assert c.bs.is_symmetric
    assert notes and "symmetric" in notes[0]


def test_row_representative_numbers():
    row = scenario_row(cfgio.loads(""))
    assert row["abs_c_phi_plus"] == pytest.approx(0.141421, abs=1e-6)
    assert row["abs_c_psi_plus"] == pytest.approx(0.141421, abs=1e-6)
    for k in ("p_AhBh", "p_AhBv", "p_AvBh", "p_AvBv"):
        assert row[k] == pytest.approx(0.01, abs=1e-15)


def test_degenerate_row_has_no_cross_side():
    c, _ = cfgio.quiet_loads("r_sq = 0.5")
    row = scenario_row(c)
    assert max(row[k] for k in ("p_AhBh", "p_AhBv", "p_AvBh", "p_AvBv")) < 1e-30


def test_csv_row_probabilities_sum_to_one():
    for text in ("", "case=2\ngamma=0.3", "case=0\nr_v=0.2\nr_h=0.9\ngamma=0"):
        row = scenario_row(cfgio.loads(text))
        total = sum(row[k] for k in ("p_AhBh", "p_AhBv", "p_AvBh", "p_AvBv", "p_same_side_total"))
        assert abs(total - 1) < 1e-12


def test_csv_format():
    text = csv_text([scenario_row(cfgio.loads(""))])
    header, line = text.splitlines()
    assert header.split(",") == list(COLUMNS)
    assert "\r" not in text and text.endswith("\n")
    assert line.split(",")[6] == "0.141421356237"
    assert fmt(-0.0) == "0" and fmt(math.nan) == "nan" and fmt(2) == "2"


def test_sweep_spec_validation():
    assert SweepSpec.parse("eps:-0.3:0.3:13").steps == 13
    for bad in ("eps:0:1", "eps:1:0:3", "gamma:0:2:3", "r_sq:0:1:1", "foo:0:1:3", "eps:a:1:3"):
        with pytest.raises(ValueError):
            SweepSpec.parse(bad)


def test_fidelity_sweep():
    rows = run_sweep(cfgio.loads("eps_prime = 0.05"), SweepSpec("eps", -0.3, 0.3, 13))
    assert len(rows) == 13
    for r in rows:
        want = math.cos(r["eps"] - 0.05) ** 2
        assert r["fidelity_phi"] == pytest.approx(want, abs=1e-12)
        assert r["fidelity_phi_direct"] == pytest.approx(want, abs=1e-10)


def test_hom_dip_sweep():
    rows = run_sweep(cfgio.loads("case = 0\nr_sq = 0.5"), SweepSpec("gamma", 0, 1, 11))
    for r in rows:
        cross = r["p_AhBh"] + r["p_AhBv"] + r["p_AvBh"] + r["p_AvBv"]
        assert cross == pytest.approx((1 - r["gamma"] ** 2) / 2, abs=1e-12)


def test_reflectance_sweep():
    rows = run_sweep(cfgio.loads(""), SweepSpec("r_sq", 0.5, 0.95, 10))
    for r in rows:
        assert r["abs_c_phi_plus"] == pytest.approx((2 * r["r_v"] ** 2 - 1) / math.sqrt(2), abs=1e-12)


def test_optimize_cross_side_rate():
    c = cfgio.loads("")
    axis = GridAxis.parse("r_sq:0.5:0.95:10")
    res = optimize(c, "max_cross_side_rate", (axis,))
    # brute force: case-1 cross-side total is (2 r^2 - 1)^2 at every grid point
    rates = [(2 * x - 1) ** 2 for x in axis.values]
    assert res.params["r_sq"] == pytest.approx(axis.values[int(np.argmax(rates))])
    assert res.value == pytest.approx(max(rates), abs=1e-12)
    assert res.n_points == 10


def test_optimize_single_point():
    res = optimize(cfgio.loads(""), "max_min_bell_coefficient", (GridAxis.parse("r_sq:0.7:0.7:1"),))
    assert res.params == {"r_sq": 0.7} and res.n_points == 1


def test_optimize_balance_tie_break():
    res = optimize(cfgio.loads(""), "target_balance", (GridAxis.parse("r_sq:0.55:0.95:9"),))
    assert res.params["r_sq"] == pytest.approx(0.55)
    assert abs(res.value) < 1e-12


def test_optimize_two_axes():
    axes = (GridAxis.parse("eps:-0.2:0.2:5"), GridAxis.parse("r_sq:0.6:0.9:4"))
    res = optimize(cfgio.loads(""), "max_min_bell_coefficient", axes)
    assert res.n_points == 20
    assert res.params["eps"] == pytest.approx(0.0) and res.params["r_sq"] == pytest.approx(0.9)


def test_optimize_unknown_objective():
    with pytest.raises(ValueError, match="objective"):
        optimize(cfgio.loads(""), "maximize_fun")
    with pytest.raises(ValueError, match="case"):
        optimize(cfgio.loads("case=0"), "target_balance")
