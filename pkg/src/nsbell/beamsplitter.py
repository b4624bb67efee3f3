"""Lossless two-port beam splitters with polarization-dependent coefficients.

Reflection amplitudes are real and positive; transmission amplitudes carry a
pure imaginary phase ``sign * 1j``.  With ``sign=+1`` an input photon in path
``a`` leaves as ``r|a> + i t|b>`` and one in path ``b`` as ``i t|a> + r|b>``.
Observable probabilities and Bell-coefficient magnitudes do not depend on the
sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

UNITARITY_TOL = 1e-12


class Mode(IntEnum):
    """The four single-photon modes, in canonical order aH < aV < bH < bV."""

    aH = 0
    aV = 1
    bH = 2
    bV = 3

    @property
    def path(self) -> str:
        return self.name[0]

    @property
    def pol(self) -> str:
        return self.name[1]

    @classmethod
    def of(cls, path: str, pol: str) -> "Mode":
        return cls[f"{path}{pol.upper()}"]


MODES = tuple(Mode)


@dataclass(frozen=True)
class BeamSplitterParams:
    r_v: float
    r_h: float
    t_v: float
    t_h: float
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")

    def r(self, pol: str) -> float:
        return self.r_v if pol.upper() == "V" else self.r_h

    def t(self, pol: str) -> float:
        return self.t_v if pol.upper() == "V" else self.t_h

    @property
    def transmission_phase(self) -> complex:
        return self.sign * 1j

    def matrix(self, pol: str) -> np.ndarray:
        """2x2 path matrix for one polarization, columns are input paths (a, b)."""
        r, t = self.r(pol), self.t(pol)
        it = self.transmission_phase * t
        return np.array([[r, it], [it, r]], dtype=complex)

    def mode_matrix(self) -> np.ndarray:
        """4x4 single-photon matrix over ``MODES``; entry [out, in]."""
        u = np.zeros((4, 4), dtype=complex)
        for pol in "HV":
            b = self.matrix(pol)
            idx = [Mode.of("a", pol), Mode.of("b", pol)]
            for col, m_in in enumerate(idx):
                for row, m_out in enumerate(idx):
                    u[m_out, m_in] = b[row, col]
        return u

    @property
    def is_symmetric(self) -> bool:
        return math.isclose(self.r_v, self.t_v, abs_tol=1e-12) and math.isclose(
            self.r_h, self.t_h, abs_tol=1e-12
        )


def make_beam_splitter(r_v: float, r_h: float, sign: int = 1) -> BeamSplitterParams:
    """Build a lossless beam splitter from its two reflection magnitudes."""
    for name, val in (("r_v", r_v), ("r_h", r_h)):
        if not (math.isfinite(val) and 0.0 <= val <= 1.0):
            raise ValueError(f"{name} must lie in [0, 1], got {val!r}")
    return BeamSplitterParams(
        r_v=float(r_v),
        r_h=float(r_h),
        t_v=math.sqrt(1.0 - r_v * r_v),
        t_h=math.sqrt(1.0 - r_h * r_h),
        sign=sign,
    )


def from_reflectance(r_sq: float, sign: int = 1) -> BeamSplitterParams:
    """Nonpolarizing splitter with intensity reflectance ``r_sq`` for both H and V."""
    if not (math.isfinite(r_sq) and 0.0 <= r_sq <= 1.0):
        raise ValueError(f"r_sq must lie in [0, 1], got {r_sq!r}")
    r = math.sqrt(r_sq)
    return make_beam_splitter(r, r, sign)


SYMMETRIC = make_beam_splitter(1 / math.sqrt(2), 1 / math.sqrt(2))
MIRROR = make_beam_splitter(1.0, 1.0)


@dataclass(frozen=True)
class UnitarityReport:
    max_unitarity_dev: float
    max_det_dev: float
    max_lossless_dev: float
    phase_sum_residual: float
    tol: float = UNITARITY_TOL

    @property
    def checks(self) -> dict[str, bool]:
        return {
            "unitarity": self.max_unitarity_dev <= self.tol,
            "determinant": self.max_det_dev <= self.tol,
            "lossless": self.max_lossless_dev <= self.tol,
            "phase_sum": self.phase_sum_residual <= self.tol,
        }

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def _phase_sum_residual(m: np.ndarray) -> float:
    # columns are input faces: r^a = m[0,0], t^a = m[1,0], t^b = m[0,1], r^b = m[1,1]
    r_a, t_a, t_b, r_b = m[0, 0], m[1, 0], m[0, 1], m[1, 1]
    if min(abs(r_a), abs(t_a), abs(t_b), abs(r_b)) == 0.0:
        # a phase is undefined at zero amplitude, so the rule holds vacuously
        return 0.0
    total = np.angle(t_a) - np.angle(r_a) + np.angle(t_b) - np.angle(r_b)
    # the rule is modulo 2*pi
    return float(abs(math.remainder(total - math.pi, 2 * math.pi)))


def verify_unitarity(bs: BeamSplitterParams | dict[str, np.ndarray]) -> UnitarityReport:
    """Residuals of the lossless-splitter conditions for each polarization.

    Accepts either a ``BeamSplitterParams`` or a mapping ``{"H": m, "V": m}`` of
    raw 2x2 matrices, so hand-built (possibly invalid) matrices can be checked.
    The determinant check compares ``|det|`` with 1, and the lossless check
    compares each column's ``|r|^2 + |t|^2`` with 1.
    """
    mats = {p: bs.matrix(p) for p in "HV"} if isinstance(bs, BeamSplitterParams) else bs
    unit = det = loss = phase = 0.0
    for m in mats.values():
        m = np.asarray(m, dtype=complex)
        unit = max(unit, float(np.max(np.abs(m.conj().T @ m - np.eye(2)))))
        det = max(det, abs(abs(np.linalg.det(m)) - 1.0))
        loss = max(loss, float(np.max(np.abs(np.sum(np.abs(m) ** 2, axis=0) - 1.0))))
        phase = max(phase, _phase_sum_residual(m))
    return UnitarityReport(unit, det, loss, phase)


def mode_transform(bs: BeamSplitterParams, mode: Mode) -> dict[Mode, complex]:
    """Image of one input mode: a superposition of output modes of the same polarization."""
    mode = Mode(mode)
    r, t = bs.r(mode.pol), bs.t(mode.pol)
    it = bs.transmission_phase * t
    same, other = (("a", "b") if mode.path == "a" else ("b", "a"))
    return {Mode.of(same, mode.pol): complex(r), Mode.of(other, mode.pol): it}


def inverse_mode_transform(
    bs: BeamSplitterParams, weights: dict[Mode, complex]
) -> dict[Mode, complex]:
    """Apply the conjugate-transpose map to a superposition of output modes."""
    u_dag = bs.mode_matrix().conj().T
    vec = np.zeros(4, dtype=complex)
    for m, w in weights.items():
        vec[m] += w
    out = u_dag @ vec
    return {m: complex(out[m]) for m in MODES if out[m] != 0}
