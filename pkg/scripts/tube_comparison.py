"""Compare the two forms of the rank-one tube curvature formula.

For every rank-one catalog entry this prints the tube curvatures at a few
radii in both forms, the substitution check against the alpha-type spectrum
and the r -> infinity limit next to the horosphere values.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from hyperfol.catalog import load_catalog
from hyperfol.geometry import (expand, horosphere_spectrum, rank_one_tube_curvatures, tube_curvatures_limit,
                               tube_discrepancy_report)


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--radii", type=float, nargs="*", default=[0.0, 0.25, 0.5, 1.0, 2.0, 4.0])
    args = p.parse_args(argv)
    ok = True
    for name, entry in load_catalog().items():
        rs = entry.root_system()
        if rs.rank != 1:
            continue
        print(f"== {name} (m_alpha = {rs.mult((1,))}, m_2alpha = {rs.mult((2,))}, |alpha|^2 = {rs.gram[0][0]})")
        for r in args.radii:
            d = expand(rank_one_tube_curvatures(rs, r))
            pr = expand(rank_one_tube_curvatures(rs, r, variant=True))
            print(f"  r = {r:<5g} derived {np.round(d, 6).tolist()}")
            print(f"  {'':9} variant {np.round(pr, 6).tolist()}")
        for line in tube_discrepancy_report(rs).lines():
            print("  " + line)
        lim = np.sort(np.abs(expand(tube_curvatures_limit(rs))))
        horo = np.sort(np.abs(horosphere_spectrum(rs).eigenvalues()))
        match = lim.shape == horo.shape and np.allclose(lim, horo, atol=1e-12)
        ok &= match
        print(f"  limit |kappa| {np.round(lim, 6).tolist()} vs horosphere {np.round(horo, 6).tolist()}: "
              f"{'match' if match else 'MISMATCH'}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
