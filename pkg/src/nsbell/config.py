"""Flat ``key = value`` scenario files.

Recognised keys::

    case        1, 2, or 0 for a custom preparation (default 1)
    r_sq        nonpolarizing reflectance, sets r_v = r_h = sqrt(r_sq) (default 0.6)
    r_v, r_h    reflection magnitudes, an alternative to r_sq
    sign        +1 or -1, phase of transmission (default +1)
    gamma       temporal overlap in [0, 1] (default 1)
    eps, eps_prime          polarization perturbation angles in radians
    alpha_re, alpha_im, beta_re, beta_im              path-a Jones vector (case 0)
    alpha_p_re, alpha_p_im, beta_p_re, beta_p_im      path-b Jones vector (case 0)
    rot_a, rot_b            D_a / D_b as real rotation angles in radians

Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import math
import warnings
from pathlib import Path

import numpy as np

from .beamsplitter import make_beam_splitter
from .bell import DegenerateArrangementWarning, case_config
from .circuit import PolarizationRotation, ScenarioConfig
from .states import JonesVector

JONES_KEYS = (
    "alpha_re", "alpha_im", "beta_re", "beta_im",
    "alpha_p_re", "alpha_p_im", "beta_p_re", "beta_p_im",
)
KNOWN_KEYS = frozenset(
    {"case", "r_sq", "r_v", "r_h", "sign", "gamma", "eps", "eps_prime", "rot_a", "rot_b", *JONES_KEYS}
)
DEFAULTS = {"case": "1", "r_sq": "0.6"}


class ConfigError(ValueError):
    """Malformed or out-of-domain scenario file."""


def parse_pairs(text: str) -> dict[str, str]:
    pairs: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (x.strip() for x in line.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in pairs:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        if not value:
            raise ConfigError(f"line {lineno}: empty value for {key!r}")
        pairs[key] = value
    return pairs


def _num(pairs: dict[str, str], key: str, default: float | None = None) -> float:
    if key not in pairs:
        if default is None:
            raise ConfigError(f"missing key {key!r}")
        return default
    try:
        val = float(pairs[key])
    except ValueError:
        raise ConfigError(f"{key}: not a number: {pairs[key]!r}") from None
    if not math.isfinite(val):
        raise ConfigError(f"{key}: must be finite, got {pairs[key]!r}")
    return val


def _in_range(key: str, val: float, lo: float, hi: float) -> float:
    if not lo <= val <= hi:
        raise ConfigError(f"{key}={val:g} is outside its domain [{lo:g}, {hi:g}]")
    return val


def config_from_pairs(pairs: dict[str, str]) -> ScenarioConfig:
    given = dict(pairs)
    pairs = {**DEFAULTS, **pairs}
    case = int(_in_range("case", _num(pairs, "case"), 0, 2))
    if _num(pairs, "case") != case:
        raise ConfigError(f"case must be 0, 1 or 2, got {pairs['case']!r}")

    if "r_v" in given or "r_h" in given:
        if "r_sq" in given:
            raise ConfigError("give either r_sq or r_v/r_h, not both")
        r_v = _in_range("r_v", _num(pairs, "r_v"), 0, 1)
        r_h = _in_range("r_h", _num(pairs, "r_h"), 0, 1)
    else:
        r_v = r_h = math.sqrt(_in_range("r_sq", _num(pairs, "r_sq"), 0, 1))
    sign = _num(pairs, "sign", 1.0)
    if sign not in (1.0, -1.0):
        raise ConfigError(f"sign must be +1 or -1, got {pairs['sign']!r}")
    bs = make_beam_splitter(r_v, r_h, int(sign))

    gamma = _in_range("gamma", _num(pairs, "gamma", 1.0), 0, 1)
    eps = _num(pairs, "eps", 0.0)
    eps_prime = _num(pairs, "eps_prime", 0.0)
    rot_a = PolarizationRotation.rotation(_num(pairs, "rot_a", 0.0))
    rot_b = PolarizationRotation.rotation(_num(pairs, "rot_b", 0.0))

    jones_given = [k for k in JONES_KEYS if k in given]
    if case in (1, 2):
        if jones_given:
            raise ConfigError(f"case {case} fixes the Jones vectors; remove {jones_given[0]!r} or set case = 0")
        base = case_config(case, bs, eps, eps_prime, gamma)
        return ScenarioConfig(base.ja, base.jb, bs, rot_a, rot_b, gamma, eps, eps_prime, case)

    ja = JonesVector(
        complex(_num(pairs, "alpha_re", 1.0), _num(pairs, "alpha_im", 0.0)),
        complex(_num(pairs, "beta_re", 0.0), _num(pairs, "beta_im", 0.0)),
    )
    jb = JonesVector(
        complex(_num(pairs, "alpha_p_re", 1.0), _num(pairs, "alpha_p_im", 0.0)),
        complex(_num(pairs, "beta_p_re", 0.0), _num(pairs, "beta_p_im", 0.0)),
    )
    for name, j in (("path-a Jones vector (alpha, beta)", ja), ("path-b Jones vector (alpha_p, beta_p)", jb)):
        if not j.is_normalized:
            raise ConfigError(f"{name} is not normalized: |alpha|^2+|beta|^2 = {j.norm_sq:.12g}")
    return ScenarioConfig(ja, jb, bs, rot_a, rot_b, gamma, eps, eps_prime, None)


def loads(text: str) -> ScenarioConfig:
    return config_from_pairs(parse_pairs(text))


def load(path: str | Path) -> ScenarioConfig:
    return loads(Path(path).read_text())


def _rotation_angle(rot: PolarizationRotation, key: str) -> float:
    m = rot.matrix
    theta = math.atan2(m[1, 0].real, m[0, 0].real)
    if not np.allclose(PolarizationRotation.rotation(theta).matrix, m, rtol=0, atol=1e-14):
        raise ConfigError(f"{key} is not a real rotation and cannot be written to a config file")
    return theta


def dumps(c: ScenarioConfig) -> str:
    """Inverse of ``loads``; values are written with full round-trip precision."""
    lines = [f"case = {c.case or 0}"]
    lines += [f"r_v = {c.bs.r_v!r}", f"r_h = {c.bs.r_h!r}", f"sign = {c.bs.sign}"]
    lines += [f"gamma = {c.gamma!r}", f"eps = {c.eps!r}", f"eps_prime = {c.eps_prime!r}"]
    lines += [
        f"rot_a = {_rotation_angle(c.rot_a, 'rot_a')!r}",
        f"rot_b = {_rotation_angle(c.rot_b, 'rot_b')!r}",
    ]
    if not c.case:
        vals = (c.ja.alpha, c.ja.beta, c.jb.alpha, c.jb.beta)
        for (kre, kim), v in zip(zip(JONES_KEYS[::2], JONES_KEYS[1::2]), vals):
            lines += [f"{kre} = {v.real!r}", f"{kim} = {v.imag!r}"]
    return "\n".join(lines) + "\n"


def quiet_loads(text: str) -> tuple[ScenarioConfig, list[str]]:
    """``loads`` that returns degenerate-arrangement warnings instead of emitting them."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DegenerateArrangementWarning)
        cfg = loads(text)
    return cfg, [str(w.message) for w in caught if issubclass(w.category, DegenerateArrangementWarning)]
