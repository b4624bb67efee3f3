"""Invariant suites run by ``nsbell verify`` and by the acceptance tests.

Each suite takes an ``engine`` (a function from an oracle ``Draw`` to an
output state) so deliberately broken engines can be pushed through the same
checks; see ``MUTANTS``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .beamsplitter import (
    SYMMETRIC,
    BeamSplitterParams,
    from_reflectance,
    make_beam_splitter,
    mode_transform,
    verify_unitarity,
    MODES,
)
from .bell import (
    CASE_TARGETS,
    DegenerateArrangementWarning,
    bell_coefficients_closed_form,
    bell_decompose,
    case_jones,
    coincidence_probabilities,
    fidelity_direct,
    fidelity_ratio,
)
from .circuit import (
    BOSONIC_FACTOR,
    PartialDistinguishabilityOutput,
    distinguishable_propagate,
    rotation_mode_matrix,
    PolarizationRotation,
    transform_state,
)
from .oracle import DEFAULT_DRAWS, ORACLE_TOL, Draw, draws, oracle_equivalence_suite, random_jones
from .states import CROSS_SIDE, JonesVector, TwoPhotonState, norm, product_input_state

EXACT_TOL = 1e-12
GAMMAS = (0.0, 0.25, 0.5, 0.75, 1.0)
FIDELITY_GRID = np.linspace(-0.3, 0.3, 13)
CASE_R_SQ = (0.05, 0.2, 0.35, 0.6, 0.75, 0.9, 0.99)

Engine = Callable[[Draw], TwoPhotonState]


def _engine(matrix_of: Callable[[BeamSplitterParams], np.ndarray], bosonic_factor: float) -> Engine:
    def run(d: Draw):
        s = product_input_state(d.ja, d.jb)
        for path, rot in (("a", d.rot_a), ("b", d.rot_b)):
            u = rotation_mode_matrix(path, PolarizationRotation(rot))
            s = transform_state(s, u, bosonic_factor=bosonic_factor)
        return transform_state(s, matrix_of(d.bs), bosonic_factor=bosonic_factor)

    return run


def _flip_all_signs(bs: BeamSplitterParams) -> np.ndarray:
    return BeamSplitterParams(bs.r_v, bs.r_h, bs.t_v, bs.t_h, -bs.sign).mode_matrix()


def _flip_b_port(bs: BeamSplitterParams) -> np.ndarray:
    u = bs.mode_matrix()
    for col in (2, 3):  # b-port inputs
        u[col - 2, col] *= -1
    return u


circuit_engine: Engine = _engine(lambda bs: bs.mode_matrix(), BOSONIC_FACTOR)

MUTANTS: dict[str, tuple[Engine, str]] = {
    "no-bunching-factor": (_engine(lambda bs: bs.mode_matrix(), 1.0), "norm"),
    "b-port-sign-flipped": (_engine(_flip_b_port, BOSONIC_FACTOR), "oracle"),
    "engine-phase-sign-flipped": (_engine(_flip_all_signs, BOSONIC_FACTOR), "oracle"),
}


@dataclass(frozen=True)
class SuiteResult:
    name: str
    max_deviation: float
    tol: float
    detail: str = ""
    ok: bool | None = None

    @property
    def passed(self) -> bool:
        if self.ok is not None:
            return self.ok
        return self.max_deviation <= self.tol

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{verdict} {self.name}: max deviation {self.max_deviation:.3e} (tol {self.tol:g}){extra}"


def unitarity_suite() -> SuiteResult:
    worst = 0.0
    grid = np.linspace(0.0, 1.0, 11)
    for rv in grid:
        for rh in grid:
            for sign in (1, -1):
                bs = make_beam_splitter(math.sqrt(rv), math.sqrt(rh), sign)
                rep = verify_unitarity(bs)
                worst = max(
                    worst,
                    rep.max_unitarity_dev,
                    rep.max_det_dev,
                    rep.max_lossless_dev,
                    rep.phase_sum_residual,
                )
                for m in MODES:
                    img = mode_transform(bs, m)
                    worst = max(worst, abs(sum(abs(w) ** 2 for w in img.values()) - 1.0))
    return SuiteResult("unitarity", worst, EXACT_TOL, f"{len(grid) ** 2 * 2} splitters")


def norm_suite(engine: Engine = circuit_engine, n_draws: int = 200, seed: int = 1) -> SuiteResult:
    """Output norm and detection-probability totals, for every gamma in ``GAMMAS``."""
    worst = 0.0
    for d in draws(n_draws, seed):
        out = engine(d)
        worst = max(worst, abs(norm(out) - 1.0))
        da = PolarizationRotation(d.rot_a).apply(d.ja)
        db = PolarizationRotation(d.rot_b).apply(d.jb)
        dist = distinguishable_propagate(da, db, d.bs)
        for g in GAMMAS:
            stats = coincidence_probabilities(PartialDistinguishabilityOutput(g, out, dist))
            worst = max(worst, abs(stats.total - 1.0))
    return SuiteResult("norm", worst, EXACT_TOL, f"{n_draws} draws x {len(GAMMAS)} gammas")


def hom_suite(engine: Engine = circuit_engine, n_draws: int = 200, seed: int = 2) -> SuiteResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    ident = np.eye(2)
    for sign in (1, -1):
        bs = make_beam_splitter(SYMMETRIC.r_v, SYMMETRIC.r_h, sign)
        for j in [JonesVector(1, 0), JonesVector(0, 1)] + [random_jones(rng) for _ in range(n_draws)]:
            out = engine(Draw(j, j, bs, ident, ident))
            worst = max(worst, max(abs(out[p]) for p in CROSS_SIDE))
    return SuiteResult("hom", worst, EXACT_TOL, "symmetric splitter, identical polarizations")


def case_zero_suite(engine: Engine = circuit_engine) -> SuiteResult:
    """Case 1 kills phi-/psi-, case 2 kills phi+/psi+, and the targets survive."""
    worst = 0.0
    smallest_target = math.inf
    ident = np.eye(2)
    for r_sq in CASE_R_SQ:
        for sign in (1, -1):
            bs = from_reflectance(r_sq, sign)
            for case, targets in CASE_TARGETS.items():
                ja, jb = case_jones(case)
                c = bell_decompose(engine(Draw(ja, jb, bs, ident, ident)))
                others = {"phi+", "phi-", "psi+", "psi-"} - set(targets)
                worst = max(worst, *(abs(c[k]) for k in others))
                smallest_target = min(smallest_target, *(abs(c[k]) for k in targets))
    ok = worst <= EXACT_TOL and smallest_target > 1e-6
    return SuiteResult(
        "case-zeros", worst, EXACT_TOL, f"smallest target |c| {smallest_target:.3e}", ok=ok
    )


def closed_form_suite(
    engine: Engine = circuit_engine, n_draws: int = DEFAULT_DRAWS, seed: int = 3
) -> SuiteResult:
    worst = 0.0
    for d in draws(n_draws, seed):
        ja = PolarizationRotation(d.rot_a).apply(d.ja)
        jb = PolarizationRotation(d.rot_b).apply(d.jb)
        ref = bell_coefficients_closed_form(ja, jb, d.bs)
        worst = max(worst, ref.max_deviation(bell_decompose(engine(d))))
    return SuiteResult("closed-form", worst, EXACT_TOL, f"{n_draws} draws")


def fidelity_suite(r_sq: float = 0.6) -> SuiteResult:
    bs = from_reflectance(r_sq)
    worst = 0.0
    for case in (1, 2):
        for e in FIDELITY_GRID:
            for ep in FIDELITY_GRID:
                rep = fidelity_ratio(case, e, ep)
                for fam, want in (("phi", rep.fidelity_phi), ("psi", rep.fidelity_psi)):
                    got = fidelity_direct(case, fam, e, ep, bs) ** 2
                    worst = max(worst, abs(got - want))
    return SuiteResult("fidelity", worst, ORACLE_TOL, f"13x13 grid, r^2={r_sq}")


def oracle_suite(
    engine: Engine = circuit_engine, n_draws: int = DEFAULT_DRAWS, seed: int = 0
) -> SuiteResult:
    rep = oracle_equivalence_suite(n_draws, seed, engine=engine)
    return SuiteResult(
        "oracle", rep.max_deviation, ORACLE_TOL, f"{n_draws} draws, seed {seed}", ok=rep.passed
    )


def run_suites(
    engine: Engine = circuit_engine, n_draws: int = DEFAULT_DRAWS, seed: int = 0
) -> list[SuiteResult]:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateArrangementWarning)
        return [
            unitarity_suite(),
            norm_suite(engine),
            hom_suite(engine),
            case_zero_suite(engine),
            closed_form_suite(engine, n_draws),
            fidelity_suite(),
            oracle_suite(engine, n_draws, seed),
        ]


def mutation_checks(n_draws: int = 100, seed: int = 0) -> list[SuiteResult]:
    """Each mutant must fail the suite it targets; a PASS line means it was caught."""
    out = []
    for name, (engine, target) in MUTANTS.items():
        res = norm_suite(engine, n_draws) if target == "norm" else oracle_suite(engine, n_draws, seed)
        out.append(
            SuiteResult(
                f"mutant {name} caught by {target}",
                res.max_deviation,
                res.tol,
                "suite failed as required" if not res.passed else "suite still passes",
                ok=not res.passed,
            )
        )
    return out
