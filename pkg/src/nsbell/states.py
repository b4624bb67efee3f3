"""Exact two-photon states over the four modes aH, aV, bH, bV.

``TwoPhotonState`` stores amplitudes in the bosonic Fock basis: ten unordered
mode pairs, with a doubly occupied mode normalized as a unit ket ``|2>``.  The
operator form ``(a_m^dag)^2 |0>`` of the same ket carries an extra sqrt(2),
which is why bunched amplitudes here are sqrt(2) times the plain
creation-operator coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement, product

import numpy as np

from .beamsplitter import MODES, Mode

NORM_TOL = 1e-12
SQRT2 = math.sqrt(2.0)

PAIRS: tuple[tuple[Mode, Mode], ...] = tuple(combinations_with_replacement(MODES, 2))
PAIR_INDEX = {p: i for i, p in enumerate(PAIRS)}
ORDERED_PAIRS: tuple[tuple[Mode, Mode], ...] = tuple(product(MODES, repeat=2))

CROSS_SIDE = tuple(p for p in PAIRS if p[0].path != p[1].path)
SAME_SIDE = tuple(p for p in PAIRS if p[0].path == p[1].path)


def pair_index(m1: Mode, m2: Mode) -> int:
    m1, m2 = Mode(m1), Mode(m2)
    return PAIR_INDEX[(m1, m2) if m1 <= m2 else (m2, m1)]


def pair_label(pair: tuple[Mode, Mode]) -> str:
    return f"{pair[0].name}:{pair[1].name}"


@dataclass(frozen=True)
class JonesVector:
    """Polarization amplitudes of one photon: ``alpha`` on V, ``beta`` on H."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))

    @property
    def norm_sq(self) -> float:
        return abs(self.alpha) ** 2 + abs(self.beta) ** 2

    @property
    def is_normalized(self) -> bool:
        return abs(self.norm_sq - 1.0) <= NORM_TOL

    def check(self, name: str = "jones") -> "JonesVector":
        if not self.is_normalized:
            raise ValueError(f"{name} is not normalized: |alpha|^2+|beta|^2 = {self.norm_sq!r}")
        return self

    def as_array(self) -> np.ndarray:
        """Amplitudes ordered (H, V), matching the mode order within a path."""
        return np.array([self.beta, self.alpha], dtype=complex)

    @classmethod
    def from_array(cls, hv) -> "JonesVector":
        return cls(alpha=hv[1], beta=hv[0])

    @classmethod
    def linear(cls, theta: float) -> "JonesVector":
        """Linear polarization ``cos(theta) V + sin(theta) H``."""
        return cls(math.cos(theta), math.sin(theta))


V = JonesVector(1.0, 0.0)
H = JonesVector(0.0, 1.0)
# built from 1/sqrt(2) directly: cos(pi/4) and sin(pi/4) differ in the last bit
DIAG = JonesVector(1 / SQRT2, 1 / SQRT2)
ANTIDIAG = JonesVector(1 / SQRT2, -1 / SQRT2)


@dataclass(frozen=True, eq=False)
class TwoPhotonState:
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amp.shape != (len(PAIRS),):
            raise ValueError(f"expected {len(PAIRS)} amplitudes, got {amp.shape}")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    def __getitem__(self, pair: tuple[Mode, Mode]) -> complex:
        return complex(self.amplitudes[pair_index(*pair)])

    def as_dict(self) -> dict[tuple[Mode, Mode], complex]:
        return {p: complex(a) for p, a in zip(PAIRS, self.amplitudes)}

    @classmethod
    def from_dict(cls, amps: dict[tuple[Mode, Mode], complex]) -> "TwoPhotonState":
        vec = np.zeros(len(PAIRS), dtype=complex)
        for (m1, m2), a in amps.items():
            vec[pair_index(m1, m2)] += a
        return cls(vec)

    @classmethod
    def basis(cls, m1: Mode, m2: Mode) -> "TwoPhotonState":
        return cls.from_dict({(m1, m2): 1.0})

    def __add__(self, other: "TwoPhotonState") -> "TwoPhotonState":
        return TwoPhotonState(self.amplitudes + other.amplitudes)

    def __sub__(self, other: "TwoPhotonState") -> "TwoPhotonState":
        return TwoPhotonState(self.amplitudes - other.amplitudes)

    def __mul__(self, c: complex) -> "TwoPhotonState":
        return TwoPhotonState(self.amplitudes * c)

    __rmul__ = __mul__

    def allclose(self, other: "TwoPhotonState", atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.amplitudes, other.amplitudes, rtol=0, atol=atol))

    def max_deviation(self, other: "TwoPhotonState") -> float:
        return float(np.max(np.abs(self.amplitudes - other.amplitudes)))

    def dumps(self) -> str:
        return serialize_state(self)


@dataclass(frozen=True, eq=False)
class DistinguishableTwoPhotonState:
    """Two labelled photons; entry ``4*m1 + m2`` is photon 1 in ``m1``, photon 2 in ``m2``."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amp.shape != (16,):
            raise ValueError(f"expected 16 amplitudes, got {amp.shape}")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    def __getitem__(self, pair: tuple[Mode, Mode]) -> complex:
        return complex(self.amplitudes[4 * Mode(pair[0]) + Mode(pair[1])])

    def matrix(self) -> np.ndarray:
        return self.amplitudes.reshape(4, 4)

    @classmethod
    def product(cls, ja: JonesVector, jb: JonesVector) -> "DistinguishableTwoPhotonState":
        """Photon 1 in path a with ``ja``, photon 2 in path b with ``jb``."""
        one = np.concatenate([ja.as_array(), np.zeros(2)])
        two = np.concatenate([np.zeros(2), jb.as_array()])
        return cls(np.kron(one, two))


def product_input_state(ja: JonesVector, jb: JonesVector) -> TwoPhotonState:
    """One photon in each input path with the given polarizations."""
    ja.check("ja")
    jb.check("jb")
    return TwoPhotonState.from_dict(
        {
            (Mode.aV, Mode.bV): ja.alpha * jb.alpha,
            (Mode.aH, Mode.bH): ja.beta * jb.beta,
            (Mode.aH, Mode.bV): ja.beta * jb.alpha,
            (Mode.aV, Mode.bH): ja.alpha * jb.beta,
        }
    )


def norm(s: TwoPhotonState | DistinguishableTwoPhotonState) -> float:
    return float(np.linalg.norm(s.amplitudes))


def overlap(s1: TwoPhotonState, s2: TwoPhotonState) -> complex:
    """<s1|s2>, conjugate-linear in ``s1``."""
    return complex(np.vdot(s1.amplitudes, s2.amplitudes))


# Bell kets between path a and path b (path is the qubit carrier on each side).
PHI_PLUS = TwoPhotonState.from_dict({(Mode.aH, Mode.bH): 1 / SQRT2, (Mode.aV, Mode.bV): 1 / SQRT2})
PHI_MINUS = TwoPhotonState.from_dict({(Mode.aH, Mode.bH): 1 / SQRT2, (Mode.aV, Mode.bV): -1 / SQRT2})
PSI_PLUS = TwoPhotonState.from_dict({(Mode.aV, Mode.bH): 1 / SQRT2, (Mode.aH, Mode.bV): 1 / SQRT2})
PSI_MINUS = TwoPhotonState.from_dict({(Mode.aV, Mode.bH): 1 / SQRT2, (Mode.aH, Mode.bV): -1 / SQRT2})

BELL_STATES: dict[str, TwoPhotonState] = {
    "phi+": PHI_PLUS,
    "phi-": PHI_MINUS,
    "psi+": PSI_PLUS,
    "psi-": PSI_MINUS,
}


def serialize_state(s: TwoPhotonState) -> str:
    """Ten lines ``<m1>:<m2> <re> <im>`` in canonical pair order."""
    lines = []
    for p, a in zip(PAIRS, s.amplitudes):
        lines.append(f"{pair_label(p)} {a.real:.17g} {a.imag:.17g}")
    return "\n".join(lines) + "\n"


def parse_state(text: str) -> TwoPhotonState:
    amps: dict[tuple[Mode, Mode], complex] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            label, re_, im_ = line.split()
            m1, m2 = (Mode[x] for x in label.split(":"))
            amps[(m1, m2)] = complex(float(re_), float(im_))
        except (ValueError, KeyError) as exc:
            raise ValueError(f"line {lineno}: cannot parse state entry {line!r}") from exc
    if len(amps) != len(PAIRS):
        raise ValueError(f"expected {len(PAIRS)} entries, got {len(amps)}")
    return TwoPhotonState.from_dict(amps)
