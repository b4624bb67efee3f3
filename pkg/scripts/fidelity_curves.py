#!/usr/bin/env python3
"""Fidelity of both target Bell states over an (eps, eps') grid, per case.

Prints the closed-form cos^2 laws next to the simulated overlap ratios and
the post-selected fidelity of the renormalized coincidence state.
"""

import argparse
import itertools

import numpy as np

from nsbell.beamsplitter import from_reflectance
from nsbell.bell import CASE_TARGETS, case_config, fidelity_direct, fidelity_ratio, postselected_fidelity
from nsbell.circuit import pure_output
from nsbell.report import fmt

COLS = ("case", "eps", "eps_prime", "fid_phi", "fid_psi", "fid_phi_direct", "fid_psi_direct",
        "ps_fid_phi", "ps_fid_psi")


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--r-sq", type=float, default=0.6)
    p.add_argument("--limit", type=float, default=0.3)
    p.add_argument("--steps", type=int, default=13)
    args = p.parse_args()

    bs = from_reflectance(args.r_sq)
    grid = np.linspace(-args.limit, args.limit, args.steps)
    print(",".join(COLS))
    for case, e, ep in itertools.product((1, 2), grid, grid):
        rep = fidelity_ratio(case, e, ep)
        out = pure_output(case_config(case, bs, e, ep))
        phi, psi = CASE_TARGETS[case]
        row = (
            case, e, ep, rep.fidelity_phi, rep.fidelity_psi,
            fidelity_direct(case, "phi", e, ep, bs) ** 2,
            fidelity_direct(case, "psi", e, ep, bs) ** 2,
            postselected_fidelity(out, phi), postselected_fidelity(out, psi),
        )
        print(",".join(fmt(x) for x in row))


if __name__ == "__main__":
    main()
