"""J2 search on every two-valued Plonka sum over small index semilattices.

Each sum has a {0,1} bottom fibre and fibres that are either two-element or
trivial.  For each one, report how many J2 tables make it a member of K and
whether the forced table (1 on units of non-trivial fibres, 0 elsewhere) is
the only one.  The sum over the four-element diamond whose top fibre alone
is trivial admits none.
"""
import argparse

from bochvar_lab.fixtures import two_valued_sums
from bochvar_lab.varieties import forbidden_search, jdef_extension, jdef_table, nontrivial_join_violations


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--index-size", type=int, default=4)
    args = p.parse_args()

    print(f"{'sum':<14} {'|A|':>4} {'space':>7} {'nodes':>6} {'tables':>7}  forced  first K failure")
    for a in two_valued_sums(args.index_size):
        r = forbidden_search(a)
        forced = jdef_table(a)
        ext = jdef_extension(a)
        only = "yes" if set(r.tables) == {forced} else ("none" if not r.tables else "NO")
        failure = "-" if ext.ok else f"{ext.failing} {ext.report.first_failure()[1].describe()}"
        print(f"{a.name:<14} {len(a):>4} {r.space:>7} {r.nodes:>6} {len(r.tables):>7}  {only:<6}  {failure}")
        bad = nontrivial_join_violations(a)
        if bad:
            print(f"{'':<14} non-trivial fibres with a trivial join: {bad}")


if __name__ == "__main__":
    main()
