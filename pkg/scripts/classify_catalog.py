"""Classification listing for every catalog entry, with diagram-automorphism orbits."""
from __future__ import annotations

import argparse
import sys

from hyperfol.catalog import load_catalog
from hyperfol.foliation import enumerate_families
from hyperfol.parabolic import automorphism_orbits, boundary_component, phi_label


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--catalog", help="catalog path (default: bundled or $HYPERFOL_CATALOG)")
    args = p.parse_args(argv)
    for name, entry in load_catalog(args.catalog).items():
        rs = entry.root_system()
        fams = enumerate_families(rs)
        n_types = sum(len(f.dim_V_range) for f in fams)
        orbits = automorphism_orbits(rs)
        print(f"{name:<6} {rs.type_label}{'' if rs.type_label[-1].isdigit() else rs.rank:<3} "
              f"dim M = {rs.dim_symmetric_space:<3} families {len(fams):<3} (Phi, dim V) types {n_types:<4} "
              f"up to diagram automorphisms {len(orbits)}")
        for f in fams:
            bc = boundary_component(rs, f.phi)
            print(f"    {phi_label(rs, f.phi):<14} F_Phi^s = {bc.label():<18} E^{bc.euclidean_rank}  "
                  f"dim N_Phi = {bc.dim_n_phi}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
