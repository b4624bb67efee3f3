"""CSV rows, parameter sweeps and the grid-search optimizer."""

from __future__ import annotations

import io
import itertools
import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .beamsplitter import from_reflectance
from .bell import (
    CASE_TARGETS,
    DegenerateArrangementWarning,
    bell_decompose,
    coincidence_probabilities,
    fidelity_direct,
    fidelity_ratio,
)
from .circuit import ScenarioConfig, pure_output, simulate_scenario

COLUMNS = (
    "case", "r_v", "r_h", "gamma", "eps", "eps_prime",
    "abs_c_phi_plus", "abs_c_phi_minus", "abs_c_psi_plus", "abs_c_psi_minus",
    "p_AhBh", "p_AhBv", "p_AvBh", "p_AvBv", "p_same_side_total",
    "fidelity_phi", "fidelity_psi",
)
DIRECT_COLUMNS = ("fidelity_phi_direct", "fidelity_psi_direct")
SWEEP_PARAMS = ("r_sq", "gamma", "eps", "eps_prime")
DOMAINS = {"r_sq": (0.0, 1.0), "gamma": (0.0, 1.0), "eps": (-math.pi, math.pi), "eps_prime": (-math.pi, math.pi)}
OBJECTIVES = ("max_cross_side_rate", "max_min_bell_coefficient", "target_balance")
TIE_TOL = 1e-12


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(x)
    x = float(x)
    if math.isnan(x):
        return "nan"
    return f"{x + 0.0:.12g}"  # + 0.0 folds -0.0 into 0.0


def scenario_row(c: ScenarioConfig, direct: bool = False) -> dict[str, float]:
    out = simulate_scenario(c)
    coeffs = bell_decompose(pure_output(c))
    stats = coincidence_probabilities(out)
    if c.case is not None:
        rep = fidelity_ratio(c.case, c.eps, c.eps_prime)
        f_phi, f_psi = rep.fidelity_phi, rep.fidelity_psi
    else:
        f_phi = f_psi = math.nan
    row = {
        "case": c.case or 0,
        "r_v": c.bs.r_v,
        "r_h": c.bs.r_h,
        "gamma": c.gamma,
        "eps": c.eps,
        "eps_prime": c.eps_prime,
        "abs_c_phi_plus": abs(coeffs.c_phi_plus),
        "abs_c_phi_minus": abs(coeffs.c_phi_minus),
        "abs_c_psi_plus": abs(coeffs.c_psi_plus),
        "abs_c_psi_minus": abs(coeffs.c_psi_minus),
        "p_AhBh": stats.p_AhBh,
        "p_AhBv": stats.p_AhBv,
        "p_AvBh": stats.p_AvBh,
        "p_AvBv": stats.p_AvBv,
        "p_same_side_total": stats.same_side_total,
        "fidelity_phi": f_phi,
        "fidelity_psi": f_psi,
    }
    if direct:
        for fam, col in zip(("phi", "psi"), DIRECT_COLUMNS):
            row[col] = _direct_or_nan(c, fam)
    return row


def _direct_or_nan(c: ScenarioConfig, fam: str) -> float:
    if c.case is None:
        return math.nan
    try:
        return fidelity_direct(c.case, fam, c.eps, c.eps_prime, c.bs) ** 2
    except ValueError:
        return math.nan


def write_csv(rows: list[dict], columns, stream) -> None:
    stream.write(",".join(columns) + "\n")
    for row in rows:
        stream.write(",".join(fmt(row[k]) for k in columns) + "\n")


def csv_text(rows: list[dict], columns=COLUMNS) -> str:
    buf = io.StringIO()
    write_csv(rows, columns, buf)
    return buf.getvalue()


@dataclass(frozen=True)
class SweepSpec:
    name: str
    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if self.name not in SWEEP_PARAMS:
            raise ValueError(f"sweep parameter must be one of {', '.join(SWEEP_PARAMS)}, got {self.name!r}")
        if self.steps < 2:
            raise ValueError(f"sweep {self.name}: steps must be >= 2, got {self.steps}")
        if not self.start < self.stop:
            raise ValueError(f"sweep {self.name}: start must be < stop")
        lo, hi = DOMAINS[self.name]
        if self.start < lo or self.stop > hi:
            raise ValueError(f"sweep {self.name}: range must lie within [{lo:g}, {hi:g}]")

    @classmethod
    def parse(cls, text: str) -> "SweepSpec":
        try:
            name, start, stop, steps = text.split(":")
            return cls(name.strip(), float(start), float(stop), int(steps))
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ValueError) and str(exc).startswith("sweep"):
                raise
            raise ValueError(f"bad sweep spec {text!r}; expected name:start:stop:steps") from None

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


def with_param(c: ScenarioConfig, name: str, value: float) -> ScenarioConfig:
    value = float(value)
    if name == "r_sq":
        return replace(c, bs=from_reflectance(value, c.bs.sign))
    return replace(c, **{name: value})


def run_sweep(c: ScenarioConfig, spec: SweepSpec) -> list[dict]:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateArrangementWarning)
        return [scenario_row(with_param(c, spec.name, v), direct=True) for v in spec.values()]


@dataclass(frozen=True)
class GridAxis:
    """One optimizer axis; unlike ``SweepSpec`` a single point is allowed."""

    name: str
    values: tuple[float, ...]

    @classmethod
    def parse(cls, text: str) -> "GridAxis":
        try:
            name, start, stop, steps = text.split(":")
            name, start, stop, steps = name.strip(), float(start), float(stop), int(steps)
        except ValueError:
            raise ValueError(f"bad grid spec {text!r}; expected name:start:stop:steps") from None
        if name not in ("r_sq", "eps", "eps_prime"):
            raise ValueError(f"optimizer axes are r_sq, eps, eps_prime; got {name!r}")
        if steps == 1 and start == stop:
            return cls(name, (start,))
        return cls(name, tuple(SweepSpec(name, start, stop, steps).values()))


DEFAULT_GRID = (GridAxis("r_sq", tuple(np.linspace(0.5, 1.0, 51))),)


def objective_value(objective: str, c: ScenarioConfig) -> float:
    if objective == "max_cross_side_rate":
        return coincidence_probabilities(simulate_scenario(c)).cross_side_total
    if c.case is None:
        raise ValueError(f"objective {objective} needs case 1 or 2")
    coeffs = bell_decompose(pure_output(c))
    m1, m2 = (abs(coeffs[k]) for k in CASE_TARGETS[c.case])
    if objective == "max_min_bell_coefficient":
        return min(m1, m2)
    if objective == "target_balance":
        return -abs(m1 - m2)
    raise ValueError(f"unknown objective {objective!r}; choose from {', '.join(OBJECTIVES)}")


@dataclass(frozen=True)
class OptimizeResult:
    objective: str
    value: float
    params: dict[str, float]
    n_points: int


def optimize(c: ScenarioConfig, objective: str, axes=DEFAULT_GRID) -> OptimizeResult:
    """Exhaustive grid search; ties go to the earliest point (smallest r_sq first)."""
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}; choose from {', '.join(OBJECTIVES)}")
    order = {"r_sq": 0, "eps": 1, "eps_prime": 2}
    axes = sorted(axes, key=lambda a: order[a.name])
    names = [a.name for a in axes]
    if len(set(names)) != len(names):
        raise ValueError("each optimizer axis may be given once")
    best_val, best_params, n = -math.inf, {}, 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateArrangementWarning)
        for point in itertools.product(*(sorted(a.values) for a in axes)):
            cfg = c
            for name, v in zip(names, point):
                cfg = with_param(cfg, name, v)
            val = objective_value(objective, cfg)
            n += 1
            if val > best_val + TIE_TOL:
                best_val, best_params = val, dict(zip(names, map(float, point)))
    return OptimizeResult(objective, best_val, best_params, n)
