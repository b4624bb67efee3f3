"""Brute-force reference propagation by creation-operator substitution.

Each input photon is a degree-1 polynomial in creation operators.  Every input
operator is replaced by its image under the splitter (read straight from the
reflection/transmission magnitudes), the two polynomials are multiplied out
term by term, and like monomials are collected.  Nothing here goes through the
matrix engine in ``circuit``.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .beamsplitter import BeamSplitterParams, Mode, make_beam_splitter
from .states import JonesVector, TwoPhotonState

Monomial = tuple[Mode, ...]

DEFAULT_DRAWS = 1000
ORACLE_TOL = 1e-10
R_SQ_RANGE = (0.05, 0.95)


class CreationPolynomial:
    """Sparse polynomial in commuting creation operators, degree at most 2."""

    def __init__(self, terms: dict[Monomial, complex] | None = None):
        self.terms: dict[Monomial, complex] = {}
        for mono, c in (terms or {}).items():
            key = tuple(sorted(mono))
            if len(key) > 2:
                raise ValueError(f"monomial degree {len(key)} exceeds 2")
            if not np.isfinite(c):
                raise ValueError(f"non-finite coefficient on {key}")
            self.terms[key] = self.terms.get(key, 0) + complex(c)

    def __mul__(self, other: "CreationPolynomial") -> "CreationPolynomial":
        out: dict[Monomial, complex] = defaultdict(complex)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out[tuple(sorted(m1 + m2))] += c1 * c2
        return CreationPolynomial(out)

    def substitute(self, rule: Callable[[Mode], dict[Mode, complex]]) -> "CreationPolynomial":
        """Replace every operator in a degree-1 polynomial by ``rule(op)``."""
        out: dict[Monomial, complex] = defaultdict(complex)
        for mono, c in self.terms.items():
            if len(mono) != 1:
                raise ValueError("substitution is defined on linear polynomials only")
            for m, w in rule(mono[0]).items():
                out[(m,)] += c * w
        return CreationPolynomial(out)

    def to_state(self) -> TwoPhotonState:
        """Fock amplitudes of the degree-2 polynomial acting on vacuum."""
        amps = {}
        for (m1, m2), c in self.terms.items():
            # (a^dag)^2 |0> = sqrt(2) |2>
            amps[(m1, m2)] = c * math.sqrt(2) if m1 == m2 else c
        return TwoPhotonState.from_dict(amps)


def _photon(path: str, jones: JonesVector, rot: np.ndarray | None) -> CreationPolynomial:
    v, h = jones.alpha, jones.beta
    if rot is not None:
        v, h = rot[0][0] * v + rot[0][1] * h, rot[1][0] * v + rot[1][1] * h
    return CreationPolynomial({(Mode[f"{path}V"],): v, (Mode[f"{path}H"],): h})


def _splitter_rule(bs: BeamSplitterParams) -> Callable[[Mode], dict[Mode, complex]]:
    def rule(m: Mode) -> dict[Mode, complex]:
        pol = m.name[1]
        r = bs.r_v if pol == "V" else bs.r_h
        t = bs.t_v if pol == "V" else bs.t_h
        a, b = Mode[f"a{pol}"], Mode[f"b{pol}"]
        if m == a:
            return {a: r, b: bs.sign * 1j * t}
        return {a: bs.sign * 1j * t, b: r}

    return rule


def _as_matrix(rot) -> np.ndarray | None:
    if rot is None:
        return None
    return np.asarray(getattr(rot, "matrix", rot), dtype=complex)


def oracle_propagate(
    ja: JonesVector,
    jb: JonesVector,
    bs: BeamSplitterParams,
    rot_a=None,
    rot_b=None,
) -> TwoPhotonState:
    """Output state for photons ``ja`` (path a) and ``jb`` (path b).

    ``rot_a``/``rot_b`` are 2x2 polarization unitaries in (V, H) order, or
    anything with such a ``.matrix``.
    """
    ja.check("ja")
    jb.check("jb")
    rule = _splitter_rule(bs)
    pa = _photon("a", ja, _as_matrix(rot_a)).substitute(rule)
    pb = _photon("b", jb, _as_matrix(rot_b)).substitute(rule)
    return (pa * pb).to_state()


def random_jones(rng: np.random.Generator) -> JonesVector:
    z = rng.normal(size=2) + 1j * rng.normal(size=2)
    z /= np.linalg.norm(z)
    return JonesVector(z[0], z[1])


def random_unitary_2(rng: np.random.Generator) -> np.ndarray:
    z = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


@dataclass(frozen=True, eq=False)
class Draw:
    ja: JonesVector
    jb: JonesVector
    bs: BeamSplitterParams
    rot_a: np.ndarray
    rot_b: np.ndarray


def random_draw(rng: np.random.Generator, mirror: bool = False) -> Draw:
    """Jones vectors Haar-uniform, r_p^2 uniform on R_SQ_RANGE, random +/-i phase, Haar rotations.

    With ``mirror=True`` the splitter is a perfect mirror and both rotations are
    the identity, so the output must reproduce the input exactly.
    """
    ja, jb = random_jones(rng), random_jones(rng)
    r_sq = rng.uniform(*R_SQ_RANGE, size=2)
    sign = int(rng.choice([1, -1]))
    bs = make_beam_splitter(1.0, 1.0, sign) if mirror else make_beam_splitter(
        math.sqrt(r_sq[0]), math.sqrt(r_sq[1]), sign
    )
    if mirror:
        return Draw(ja, jb, bs, np.eye(2, dtype=complex), np.eye(2, dtype=complex))
    return Draw(ja, jb, bs, random_unitary_2(rng), random_unitary_2(rng))


def draws(n: int, seed: int, mirror: bool = False) -> list[Draw]:
    if n < 1:
        raise ValueError(f"number of draws must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    return [random_draw(rng, mirror) for _ in range(n)]


@dataclass(frozen=True)
class OracleReport:
    n_draws: int
    seed: int
    max_deviation: float
    max_norm_deviation: float
    tol: float = ORACLE_TOL

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.tol and self.max_norm_deviation <= 1e-12

    def format(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (
            f"draws: {self.n_draws}\n"
            f"seed: {self.seed}\n"
            f"max |delta amplitude|: {self.max_deviation:.3e}\n"
            f"result: {verdict}\n"
        )


Engine = Callable[[Draw], TwoPhotonState]


def oracle_equivalence_suite(
    n_draws: int = DEFAULT_DRAWS,
    seed: int = 0,
    *,
    engine: Engine | None = None,
    mirror: bool = False,
) -> OracleReport:
    """Compare the circuit engine (or ``engine``) against the oracle on seeded draws."""
    if engine is None:
        from .verify import circuit_engine

        engine = circuit_engine
    max_dev = max_norm = 0.0
    for d in draws(n_draws, seed, mirror):
        ref = oracle_propagate(d.ja, d.jb, d.bs, d.rot_a, d.rot_b)
        got = engine(d)
        max_dev = max(max_dev, ref.max_deviation(got))
        max_norm = max(max_norm, abs(float(np.linalg.norm(ref.amplitudes)) - 1.0))
    return OracleReport(n_draws, seed, max_dev, max_norm)


