"""Propagation of two photons through polarization rotators and a beam splitter.

The engine works in operator form.  A two-photon state is the symmetric
coefficient matrix ``M`` with ``psi = sum_ij M[i, j] a_i^dag a_j^dag |0>``,
and a linear-optical element with single-photon matrix ``U`` maps it to
``U M U^T``.  Converting to and from Fock amplitudes is where the bosonic
sqrt(2) for doubly occupied modes enters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .beamsplitter import BeamSplitterParams
from .states import (
    PAIRS,
    SQRT2,
    DistinguishableTwoPhotonState,
    JonesVector,
    TwoPhotonState,
    product_input_state,
)

BOSONIC_FACTOR = SQRT2


@dataclass(frozen=True, eq=False)
class PolarizationRotation:
    """2x2 unitary on one path's polarization, acting on (V, H) = (alpha, beta)."""

    matrix: np.ndarray = field(default_factory=lambda: np.eye(2, dtype=complex))

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"polarization rotation must be 2x2, got {m.shape}")
        dev = float(np.max(np.abs(m.conj().T @ m - np.eye(2))))
        if dev > 1e-12:
            raise ValueError(f"polarization rotation is not unitary (deviation {dev:.3g})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls) -> "PolarizationRotation":
        return cls(np.eye(2))

    @classmethod
    def rotation(cls, theta: float) -> "PolarizationRotation":
        """Real rotation taking linear angle ``phi`` to ``phi + theta``."""
        c, s = math.cos(theta), math.sin(theta)
        return cls(np.array([[c, -s], [s, c]]))

    @classmethod
    def swap(cls) -> "PolarizationRotation":
        return cls(np.array([[0, 1], [1, 0]]))

    def apply(self, j: JonesVector) -> JonesVector:
        alpha, beta = self.matrix @ np.array([j.alpha, j.beta])
        return JonesVector(alpha, beta)

    def hv_matrix(self) -> np.ndarray:
        """The same operator in (H, V) ordering."""
        return self.matrix[::-1, ::-1]

    @property
    def is_identity(self) -> bool:
        return bool(np.allclose(self.matrix, np.eye(2), rtol=0, atol=0))


def rotation_mode_matrix(path: str, rot: PolarizationRotation) -> np.ndarray:
    u = np.eye(4, dtype=complex)
    sl = slice(0, 2) if path == "a" else slice(2, 4)
    u[sl, sl] = rot.hv_matrix()
    return u


def to_operator_form(s: TwoPhotonState, bosonic_factor: float = BOSONIC_FACTOR) -> np.ndarray:
    m = np.zeros((4, 4), dtype=complex)
    for (i, j), a in zip(PAIRS, s.amplitudes):
        if i == j:
            m[i, i] = a / bosonic_factor
        else:
            m[i, j] = m[j, i] = a / 2
    return m


def from_operator_form(m: np.ndarray, bosonic_factor: float = BOSONIC_FACTOR) -> TwoPhotonState:
    amps = [bosonic_factor * m[i, i] if i == j else 2 * m[i, j] for i, j in PAIRS]
    return TwoPhotonState(np.array(amps))


def transform_state(
    s: TwoPhotonState, u: np.ndarray, *, bosonic_factor: float = BOSONIC_FACTOR
) -> TwoPhotonState:
    """Apply the single-photon mode matrix ``u`` (entries [out, in]) to both photons."""
    m = to_operator_form(s, bosonic_factor)
    return from_operator_form(u @ m @ u.T, bosonic_factor)


def apply_polarization_rotation(
    s: TwoPhotonState, path: str, rot: PolarizationRotation
) -> TwoPhotonState:
    if path not in ("a", "b"):
        raise ValueError(f"path must be 'a' or 'b', got {path!r}")
    if not isinstance(rot, PolarizationRotation):
        rot = PolarizationRotation(rot)
    return transform_state(s, rotation_mode_matrix(path, rot))


def apply_beam_splitter(s: TwoPhotonState, bs: BeamSplitterParams) -> TwoPhotonState:
    return transform_state(s, bs.mode_matrix())


def distinguishable_propagate(
    ja: JonesVector, jb: JonesVector, bs: BeamSplitterParams
) -> DistinguishableTwoPhotonState:
    """Both photons cross the splitter independently, with no exchange interference."""
    ja.check("ja")
    jb.check("jb")
    u = bs.mode_matrix()
    psi = DistinguishableTwoPhotonState.product(ja, jb).matrix()
    return DistinguishableTwoPhotonState(u @ psi @ u.T)


def symmetrize(d: DistinguishableTwoPhotonState) -> TwoPhotonState:
    """Fock-basis state of the same two photons once their labels are erased."""
    psi = d.matrix()
    return from_operator_form((psi + psi.T) / 2)


@dataclass(frozen=True)
class ScenarioConfig:
    ja: JonesVector
    jb: JonesVector
    bs: BeamSplitterParams
    rot_a: PolarizationRotation = field(default_factory=PolarizationRotation.identity)
    rot_b: PolarizationRotation = field(default_factory=PolarizationRotation.identity)
    gamma: float = 1.0
    eps: float = 0.0
    eps_prime: float = 0.0
    case: int | None = None

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and 0.0 <= self.gamma <= 1.0):
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma!r}")
        for name in ("eps", "eps_prime"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.case not in (None, 1, 2):
            raise ValueError(f"case must be 1, 2 or unset, got {self.case!r}")
        self.ja.check("ja")
        self.jb.check("jb")

    def prepared_jones(self) -> tuple[JonesVector, JonesVector]:
        """Jones vectors reaching the splitter: perturbation angle first, then D_a / D_b."""
        ja = PolarizationRotation.rotation(self.eps).apply(self.ja)
        jb = PolarizationRotation.rotation(self.eps_prime).apply(self.jb)
        return self.rot_a.apply(ja), self.rot_b.apply(jb)


@dataclass(frozen=True)
class PartialDistinguishabilityOutput:
    """Output of a run with imperfect temporal overlap.

    Detection statistics are the mixture ``gamma**2 * bosonic +
    (1 - gamma**2) * distinguishable``.
    """

    gamma: float
    bosonic: TwoPhotonState
    distinguishable: DistinguishableTwoPhotonState

    @property
    def interfering_weight(self) -> float:
        return self.gamma**2


def simulate_scenario(
    c: ScenarioConfig,
) -> TwoPhotonState | PartialDistinguishabilityOutput:
    ja = PolarizationRotation.rotation(c.eps).apply(c.ja)
    jb = PolarizationRotation.rotation(c.eps_prime).apply(c.jb)
    s = product_input_state(ja, jb)
    if not c.rot_a.is_identity:
        s = apply_polarization_rotation(s, "a", c.rot_a)
    if not c.rot_b.is_identity:
        s = apply_polarization_rotation(s, "b", c.rot_b)
    out = apply_beam_splitter(s, c.bs)
    if c.gamma == 1.0:
        return out
    da, db = c.prepared_jones()
    return PartialDistinguishabilityOutput(c.gamma, out, distinguishable_propagate(da, db, c.bs))


def pure_output(c: ScenarioConfig) -> TwoPhotonState:
    """The fully interfering output state, whatever ``c.gamma`` is."""
    out = simulate_scenario(c)
    return out.bosonic if isinstance(out, PartialDistinguishabilityOutput) else out

