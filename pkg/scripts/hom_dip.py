#!/usr/bin/env python3
"""Cross-side coincidence rate vs temporal overlap gamma (a HOM dip table).

Both photons V-polarized on a splitter of reflectance --r-sq.  The symmetric
splitter (default) dips to zero at gamma = 1; a non-symmetric one does not.
"""

import argparse
import sys

import numpy as np

from nsbell.beamsplitter import from_reflectance
from nsbell.bell import coincidence_probabilities
from nsbell.circuit import ScenarioConfig, simulate_scenario
from nsbell.report import fmt
from nsbell.states import V


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--r-sq", type=float, default=0.5)
    p.add_argument("--steps", type=int, default=21)
    args = p.parse_args()

    bs = from_reflectance(args.r_sq)
    out = sys.stdout
    out.write("gamma,cross_side,classical_limit,visibility\n")
    classical = coincidence_probabilities(simulate_scenario(ScenarioConfig(V, V, bs, gamma=0.0))).cross_side_total
    for g in np.linspace(0, 1, args.steps):
        cross = coincidence_probabilities(simulate_scenario(ScenarioConfig(V, V, bs, gamma=g))).cross_side_total
        vis = 1 - cross / classical if classical > 0 else float("nan")
        out.write(",".join(fmt(x) for x in (g, cross, classical, vis)) + "\n")


if __name__ == "__main__":
    main()
