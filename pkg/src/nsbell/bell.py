"""Bell-basis analysis, coincidence statistics and fidelity of the output state."""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import astuple, dataclass, fields

import numpy as np

from .beamsplitter import BeamSplitterParams, Mode
from .circuit import (
    PartialDistinguishabilityOutput,
    PolarizationRotation,
    ScenarioConfig,
    pure_output,
)
from .states import (
    BELL_STATES,
    DIAG,
    ANTIDIAG,
    SAME_SIDE,
    SQRT2,
    DistinguishableTwoPhotonState,
    JonesVector,
    TwoPhotonState,
    overlap,
)

BELL_LABELS = ("phi+", "phi-", "psi+", "psi-")
CASE_TARGETS = {1: ("phi+", "psi+"), 2: ("phi-", "psi-")}
RESIDUAL_PAIRS = SAME_SIDE
IGNORE = "ignore"

_DETECTOR = {Mode.aH: "Ah", Mode.aV: "Av", Mode.bH: "Bh", Mode.bV: "Bv"}


class DegenerateArrangementWarning(UserWarning):
    """The splitter cannot produce the target Bell pair for this arrangement."""


@dataclass(frozen=True, eq=False)
class BellCoefficients:
    c_phi_plus: complex
    c_phi_minus: complex
    c_psi_plus: complex
    c_psi_minus: complex
    bunched: np.ndarray  # amplitudes on RESIDUAL_PAIRS, bosonic normalization

    def __getitem__(self, label: str) -> complex:
        return {
            "phi+": self.c_phi_plus,
            "phi-": self.c_phi_minus,
            "psi+": self.c_psi_plus,
            "psi-": self.c_psi_minus,
        }[label]

    def bell_vector(self) -> np.ndarray:
        return np.array([self[k] for k in BELL_LABELS], dtype=complex)

    def magnitudes(self) -> np.ndarray:
        return np.abs(self.bell_vector())

    def norm_sq(self) -> float:
        return float(np.sum(self.magnitudes() ** 2) + np.sum(np.abs(self.bunched) ** 2))

    def reconstruct(self) -> TwoPhotonState:
        s = TwoPhotonState(np.zeros(10))
        for k in BELL_LABELS:
            s = s + BELL_STATES[k] * self[k]
        return s + TwoPhotonState.from_dict(dict(zip(RESIDUAL_PAIRS, self.bunched)))

    def max_deviation(self, other: "BellCoefficients") -> float:
        d = np.concatenate(
            [self.bell_vector() - other.bell_vector(), self.bunched - other.bunched]
        )
        return float(np.max(np.abs(d)))


def bell_coefficients_closed_form(
    ja: JonesVector, jb: JonesVector, bs: BeamSplitterParams
) -> BellCoefficients:
    """Bell and bunched amplitudes of the splitter output, written out term by term."""
    ja.check("ja")
    jb.check("jb")
    a, b, ap, bp = ja.alpha, ja.beta, jb.alpha, jb.beta
    rv, rh, tv, th = bs.r_v, bs.r_h, bs.t_v, bs.t_h
    i = bs.transmission_phase
    aa, bb, ab, ba = a * ap, b * bp, a * bp, b * ap

    bunched = {
        (Mode.aV, Mode.aV): SQRT2 * i * aa * rv * tv,
        (Mode.bV, Mode.bV): SQRT2 * i * aa * rv * tv,
        (Mode.aH, Mode.aH): SQRT2 * i * bb * rh * th,
        (Mode.bH, Mode.bH): SQRT2 * i * bb * rh * th,
        (Mode.aH, Mode.aV): i * (ab * rv * th + ba * rh * tv),
        (Mode.bH, Mode.bV): i * (ab * rh * tv + ba * rv * th),
    }
    return BellCoefficients(
        c_phi_plus=(aa * (rv**2 - tv**2) + bb * (rh**2 - th**2)) / SQRT2,
        c_phi_minus=(bb * (rh**2 - th**2) - aa * (rv**2 - tv**2)) / SQRT2,
        c_psi_plus=(ab + ba) / SQRT2 * (rv * rh - tv * th),
        c_psi_minus=(ab - ba) / SQRT2 * (rv * rh + tv * th),
        bunched=np.array([bunched[p] for p in RESIDUAL_PAIRS], dtype=complex),
    )


def bell_decompose(s: TwoPhotonState) -> BellCoefficients:
    """Project onto the four Bell kets; same-side amplitudes are kept as residuals."""
    c = {k: overlap(BELL_STATES[k], s) for k in BELL_LABELS}
    return BellCoefficients(
        c_phi_plus=c["phi+"],
        c_phi_minus=c["phi-"],
        c_psi_plus=c["psi+"],
        c_psi_minus=c["psi-"],
        bunched=np.array([s[p] for p in RESIDUAL_PAIRS], dtype=complex),
    )


@dataclass(frozen=True)
class DetectionStats:
    """Joint detection probabilities for the four detectors behind PBS_a and PBS_b.

    ``p_AvAh``/``p_BvBh`` are coincidences on one side; ``p_X2`` is both photons
    at detector X (a double count).
    """

    p_AhBh: float
    p_AhBv: float
    p_AvBh: float
    p_AvBv: float
    p_AvAh: float
    p_BvBh: float
    p_Ah2: float
    p_Av2: float
    p_Bh2: float
    p_Bv2: float

    @property
    def cross_side_total(self) -> float:
        return self.p_AhBh + self.p_AhBv + self.p_AvBh + self.p_AvBv

    p_coincidence_total = cross_side_total

    @property
    def same_side_total(self) -> float:
        return self.p_AvAh + self.p_BvBh + self.p_Ah2 + self.p_Av2 + self.p_Bh2 + self.p_Bv2

    @property
    def total(self) -> float:
        return self.cross_side_total + self.same_side_total

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def mix(self, other: "DetectionStats", weight: float) -> "DetectionStats":
        """``weight * self + (1 - weight) * other``."""
        vals = weight * np.array(astuple(self)) + (1 - weight) * np.array(astuple(other))
        return DetectionStats(*map(float, vals))


def _event_field(m1: Mode, m2: Mode) -> str:
    m1, m2 = sorted((Mode(m1), Mode(m2)))
    if m1 == m2:
        return f"p_{_DETECTOR[m1]}2"
    if m1.path == m2.path:
        return "p_AvAh" if m1.path == "a" else "p_BvBh"
    return f"p_{_DETECTOR[m1]}{_DETECTOR[m2]}"


def _stats_from_pairs(probs: dict[tuple[Mode, Mode], float]) -> DetectionStats:
    acc = {f.name: 0.0 for f in fields(DetectionStats)}
    for (m1, m2), p in probs.items():
        acc[_event_field(m1, m2)] += p
    return DetectionStats(**acc)


def coincidence_probabilities(
    s: TwoPhotonState | DistinguishableTwoPhotonState | PartialDistinguishabilityOutput,
) -> DetectionStats:
    if isinstance(s, PartialDistinguishabilityOutput):
        return coincidence_probabilities(s.bosonic).mix(
            coincidence_probabilities(s.distinguishable), s.interfering_weight
        )
    if isinstance(s, DistinguishableTwoPhotonState):
        psi = s.matrix()
        return _stats_from_pairs(
            {(Mode(i), Mode(j)): float(abs(psi[i, j]) ** 2) for i in range(4) for j in range(4)}
        )
    return _stats_from_pairs({p: float(abs(a) ** 2) for p, a in s.as_dict().items()})


def case_jones(case: int) -> tuple[JonesVector, JonesVector]:
    if case == 1:
        return DIAG, DIAG
    if case == 2:
        return DIAG, ANTIDIAG
    raise ValueError(f"case must be 1 or 2, got {case!r}")


def check_arrangement(case: int, bs: BeamSplitterParams) -> None:
    """Warn when the splitter cannot isolate the case's two Bell states."""
    dv = bs.r_v**2 - bs.t_v**2
    dh = bs.r_h**2 - bs.t_h**2
    if abs(dv) <= 1e-12 and abs(dh) <= 1e-12:
        warnings.warn(
            f"case {case}: symmetric beam splitter (r^2 = t^2), every cross-side signal vanishes",
            DegenerateArrangementWarning,
            stacklevel=3,
        )
    elif abs(dv - dh) > 1e-12:
        warnings.warn(
            f"case {case}: r_v^2 - t_v^2 = {dv:.6g} differs from r_h^2 - t_h^2 = {dh:.6g}; "
            "the other Bell pair leaks into the coincidences",
            DegenerateArrangementWarning,
            stacklevel=3,
        )


def case_config(
    case: int,
    bs: BeamSplitterParams,
    eps: float = 0.0,
    eps_prime: float = 0.0,
    gamma: float = 1.0,
) -> ScenarioConfig:
    """Case 1 sends diagonal light into both ports; case 2 flips path b to antidiagonal."""
    ja, jb = case_jones(case)
    check_arrangement(case, bs)
    return ScenarioConfig(
        ja=ja,
        jb=jb,
        bs=bs,
        rot_a=PolarizationRotation.identity(),
        rot_b=PolarizationRotation.identity(),
        gamma=gamma,
        eps=eps,
        eps_prime=eps_prime,
        case=case,
    )


_EVENT_RE = re.compile(r"^([AB][hv])([AB][hv]|2)$")


def classify_coincidence(case: int, event: str) -> str:
    """Bell label signalled by a detector pair, or ``"ignore"`` for same-side events."""
    if case not in CASE_TARGETS:
        raise ValueError(f"case must be 1 or 2, got {case!r}")
    m = _EVENT_RE.match(event)
    if not m:
        raise ValueError(f"unknown detector event {event!r}")
    d1, d2 = m.groups()
    if d2 == "2" or d1[0] == d2[0]:
        return IGNORE
    phi, psi = CASE_TARGETS[case]
    return phi if d1[1] == d2[1] else psi


@dataclass(frozen=True)
class FidelityReport:
    eps: float
    eps_prime: float
    ratio_phi: float
    ratio_psi: float

    @property
    def fidelity_phi(self) -> float:
        return self.ratio_phi**2

    @property
    def fidelity_psi(self) -> float:
        return self.ratio_psi**2


def fidelity_ratio(case: int, eps: float, eps_prime: float) -> FidelityReport:
    """Overlap ratios of the perturbed to the unperturbed state, in closed form."""
    diff, total = math.cos(eps - eps_prime), math.cos(eps + eps_prime)
    if case == 1:
        return FidelityReport(eps, eps_prime, ratio_phi=diff, ratio_psi=total)
    if case == 2:
        return FidelityReport(eps, eps_prime, ratio_phi=total, ratio_psi=diff)
    raise ValueError(f"case must be 1 or 2, got {case!r}")


def _target(case: int, bell: str) -> str:
    bell = bell.lower()
    if bell in ("phi", "psi"):
        return CASE_TARGETS[case][0 if bell == "phi" else 1]
    if bell not in BELL_LABELS:
        raise ValueError(f"unknown Bell label {bell!r}")
    return bell


def fidelity_direct(
    case: int, bell: str, eps: float, eps_prime: float, bs: BeamSplitterParams
) -> float:
    """<Bell|psi'> / <Bell|psi> by simulating the perturbed and ideal preparations.

    ``bell`` is ``"phi"``/``"psi"`` (the case's target of that family) or an
    explicit label such as ``"psi-"``.
    """
    if case not in CASE_TARGETS:
        raise ValueError(f"case must be 1 or 2, got {case!r}")
    if abs(bs.r_v - bs.r_h) > 1e-12:
        raise ValueError("fidelity_direct needs a nonpolarizing splitter (r_v == r_h)")
    ket = BELL_STATES[_target(case, bell)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateArrangementWarning)
        ideal = overlap(ket, pure_output(case_config(case, bs)))
        perturbed = overlap(ket, pure_output(case_config(case, bs, eps, eps_prime)))
    if abs(ideal) <= 1e-14:
        raise ValueError(f"{_target(case, bell)} is absent from the unperturbed output")
    ratio = perturbed / ideal
    return float(ratio.real)


def postselected_fidelity(s: TwoPhotonState, bell: str) -> float:
    """|<Bell|psi_ps>|^2 with psi_ps the renormalized cross-side part of ``s``."""
    cross = TwoPhotonState.from_dict(
        {p: a for p, a in s.as_dict().items() if p[0].path != p[1].path}
    )
    n = float(np.linalg.norm(cross.amplitudes))
    if n == 0.0:
        return float("nan")
    return abs(overlap(BELL_STATES[bell], cross)) ** 2 / n**2
