#!/usr/bin/env python3
"""Bell coefficients and coincidence rate across splitter reflectance, both cases."""

import argparse
import warnings

import numpy as np

from nsbell.beamsplitter import from_reflectance
from nsbell.bell import DegenerateArrangementWarning, case_config
from nsbell.report import COLUMNS, csv_text, scenario_row


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--steps", type=int, default=21)
    args = p.parse_args()

    rows = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateArrangementWarning)
        for case in (1, 2):
            for r_sq in np.linspace(0.0, 1.0, args.steps):
                rows.append(scenario_row(case_config(case, from_reflectance(r_sq))))
    print(csv_text(rows, COLUMNS), end="")


if __name__ == "__main__":
    main()
