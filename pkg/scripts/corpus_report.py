"""Build the corpus and report the statements checked over it.

Prints the membership counts per axiom set, the subdirectly irreducible
members, ISP agreement, the Theta audit and the open/dense embedding counts.
"""
import argparse
import time
from collections import Counter

from bochvar_lab.algebra import is_compatible, is_subdirectly_irreducible
from bochvar_lab.axioms import SET_NAMES, check_axiom_set, satisfies
from bochvar_lab.corpus import CorpusConfig, corpus
from bochvar_lab.plonka import decompose
from bochvar_lab.varieties import hs_wke_classify, isp_wke_check, od_embedding, theta_a


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--atoms", type=int, default=3)
    p.add_argument("--product-size", type=int, default=16)
    p.add_argument("--closure-size", type=int, default=12)
    p.add_argument("--isp-bound", type=int, default=8)
    args = p.parse_args()
    cfg = CorpusConfig(max_atoms=args.atoms, product_size=args.product_size,
                       closure_size=args.closure_size)

    t0 = time.perf_counter()
    members = corpus(cfg)
    print(f"corpus: {len(members)} algebras up to isomorphism ({time.perf_counter() - t0:.1f} s)")
    print("sizes:", dict(sorted(Counter(len(a) for a in members).items())))
    for name in SET_NAMES:
        print(f"  {name:<7} {sum(satisfies(a, name) for a in members):>4}")

    si = [a for a in members if len(a) > 1 and is_subdirectly_irreducible(a).irreducible]
    print("subdirectly irreducible:", ", ".join(f"{a.name} -> {hs_wke_classify(a)}" for a in si))

    small = [a for a in members if len(a) <= args.isp_bound]
    disagree = [a.name for a in small if not isp_wke_check(a, bound=args.isp_bound).agree]
    print(f"ISP(WKe) vs BCA on {len(small)} members: {len(disagree)} disagreements {disagree or ''}")

    theta_bad = 0
    pairs = 0
    for a in members:
        for g in decompose(a).bottom_fibre:
            t = theta_a(a, g)
            pairs += 1
            ok = (is_compatible(a, t.labels) and t.is_identity() == (g == a.zero)
                  and (t & theta_a(a, a.neg(g))).is_identity())
            theta_bad += not ok
    print(f"Theta audit: {pairs} (algebra, a) pairs, {theta_bad} failures")

    derived_bad = [a.name for a in members if not check_axiom_set(a, "KD").ok]
    print(f"derived K identities: {len(derived_bad)} failures")

    vs = [a for a in members if satisfies(a, "V")]
    iso = sum(od_embedding(a).is_isomorphism for a in vs)
    print(f"open/dense embedding: {len(vs)} V-members, {iso} onto O(A) x D(A)")
    print(f"total {time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main()
