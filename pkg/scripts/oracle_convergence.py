#!/usr/bin/env python3
"""Convergence of the truncated-mode oracle toward the closed-form spectrum.

Runs the simulator at fixed pump velocity and modulation time while the
resonator size kappa0 doubles, and prints the median relative deviation
from the closed form on omega in (0.2, 0.8).  Runs whose modulation time
exceeds the mode-recurrence time 2*pi*kappa0 sit in the discrete-resonator
regime and show the expected coherent-pair inflation; once kappa0 clears
t0 / 2*pi the deviation collapses to the percent level.

Usage: python scripts/oracle_convergence.py [v] [t0]
"""

import math
import sys
import time
import warnings

from pairflux import modesim, spectrum

LADDER = (32, 64, 128, 256)


def main() -> None:
    v = float(sys.argv[1]) if len(sys.argv) > 1 else 0.2
    t0 = float(sys.argv[2]) if len(sys.argv) > 2 else 400.0 * math.pi
    pump = spectrum.PumpConfig(v)
    print(f"v = {v}, t0 = {t0:.4g}  (recurrence-safe above kappa0 = {t0 / (2 * math.pi):.0f})")
    for kappa0 in LADDER:
        config = modesim.SimConfig(kappa0=kappa0, v=v, t0=t0)
        start = time.time()
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", modesim.ModeRecurrenceWarning)
            matrix = modesim.evolve(modesim.build_sim(config), config)
        report = modesim.compare_to_analytic(modesim.extract_rates(matrix, config), pump)
        regime = "recurrence" if t0 > config.recurrence_time else "continuum "
        print(
            f"  kappa0 = {kappa0:4d} [{regime}]  median dev = {report.median_deviation:8.2%}  "
            f"max dev = {report.max_deviation:8.2%}  symplectic defect = "
            f"{matrix.symplectic_defect():.2e}  ({time.time() - start:.0f}s)"
        )


if __name__ == "__main__":
    main()
