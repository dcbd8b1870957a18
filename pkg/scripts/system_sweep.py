"""Sweep every Bochvar system up to a number of atoms.

For each system: build the algebra, check the BCA basis, run both round
trips, confirm the unit map is an isomorphism and that J2 is the only
admissible table on the reduct.  Prints one row per system and a summary.
"""
import argparse
import time

from bochvar_lab.axioms import check_axiom_set
from bochvar_lab.equivalence import (
    enumerate_systems, roundtrip_algebra, roundtrip_system, system_to_algebra, unit_map,
)
from bochvar_lab.search import j2_search


def sweep(max_atoms: int, uniqueness_atoms: int):
    rows = []
    for s in enumerate_systems(max_atoms):
        a, _ = system_to_algebra(s)
        u = unit_map(a)
        row = {
            "system": str(s),
            "size": len(a),
            "bca": check_axiom_set(a, "BCA", stop_early=True).ok,
            "alg_rt": roundtrip_algebra(a) is not None,
            "sys_rt": roundtrip_system(s) is not None,
            "unit_iso": u.is_valid() and u.is_injective() and u.is_surjective(),
            "unique_j2": None,
        }
        if len(s.boolean.atoms) <= uniqueness_atoms:
            row["unique_j2"] = j2_search(a.reduct(), "BCA").tables == (a.j2_table,)
        rows.append(row)
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--atoms", type=int, default=3)
    p.add_argument("--uniqueness-atoms", type=int, default=2,
                   help="run the J2 uniqueness search only up to this many atoms")
    args = p.parse_args()

    t0 = time.perf_counter()
    rows = sweep(args.atoms, args.uniqueness_atoms)
    checks = ("bca", "alg_rt", "sys_rt", "unit_iso", "unique_j2")
    print(f"{'system':<42} {'|A|':>4}  " + " ".join(f"{c:>9}" for c in checks))
    for r in rows:
        marks = " ".join(f"{'-' if r[c] is None else ('ok' if r[c] else 'FAIL'):>9}" for c in checks)
        print(f"{r['system']:<42} {r['size']:>4}  {marks}")
    bad = [r["system"] for r in rows if any(r[c] is False for c in checks)]
    print(f"\n{len(rows)} systems, {len(bad)} with a failing check, {time.perf_counter() - t0:.2f} s")
    for name in bad:
        print("  failing:", name)


if __name__ == "__main__":
    main()
