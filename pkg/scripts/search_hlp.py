"""Search for graphs matching what is known about HLP graphs #15, #16 and #20.

Observed A, D, E, F; latent B, C. A is exogenous, latents have no parents
(any parent of a latent can be absorbed into the latent itself).

  --target 15   graphs with the four eq1 premises whose observed CI set
                is respected by tilde_p
  --target 16   as 15, with a third latent U over two or more of D, E, F
  --target 20   graphs whose observed CI set contains (A _||_ F | E), is
                respected by tilde_p_prime but not tilde_p; every premise
                except (D _||_ F | B,A) is kept, and that one is reported

Run: python scripts/search_hlp.py --target 15
"""

import argparse
from itertools import combinations, product

from causalgap.ci import CiRelation, candidate_relations, ci_consistent
from causalgap.finegrained import tilde_p, tilde_p_prime
from causalgap.graph import Gdag, d_separated
from causalgap.interesting import esep_search

OBSERVED = ("A", "D", "E", "F")
PREMISES = (("D", "E", "C,A"), ("D", "F", "B,A"), ("B,C,D", "A", ""), ("B", "C", ""))


def _set(s):
    return {t for t in s.split(",") if t}


def candidate_graphs(extra_latent: bool):
    inner = list(combinations("DEF", 2))
    tails = [("A", v) for v in "DEF"] + [(u, v) for u in "BC" for v in "DEF"]
    latent_kids = [()]
    if extra_latent:
        latent_kids = [k for n in (2, 3) for k in combinations("DEF", n)]
    for orient in product(range(3), repeat=len(inner)):
        edges = [(a, b) if s == 1 else (b, a) for (a, b), s in zip(inner, orient) if s]
        for keep in product((0, 1), repeat=len(tails)):
            base = edges + [e for e, k in zip(tails, keep) if k]
            for kids in latent_kids:
                latent = ["B", "C"] + (["U"] if kids else [])
                try:
                    yield Gdag.from_edges(base + [("U", k) for k in kids], latent=latent, isolated=OBSERVED)
                except ValueError:
                    continue  # cyclic


def premise_holds(g, i):
    x, y, z = PREMISES[i]
    return d_separated(g, _set(x), _set(y), _set(z))


def observed_ci(g):
    return frozenset(r for r in candidate_relations(g.observed) if d_separated(g, r.x, r.y, r.z))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--target", choices=["15", "16", "20"], required=True)
    args = ap.parse_args()
    p, q = tilde_p(), tilde_p_prime()
    afe = CiRelation({"A"}, {"F"}, {"E"})
    groups = {}
    for g in candidate_graphs(args.target == "16"):
        if args.target == "20":
            if not all(premise_holds(g, i) for i in (0, 2, 3)):
                continue
            ci = observed_ci(g)
            if afe not in ci or not ci_consistent(q, g)[0]:
                continue
        else:
            if not all(premise_holds(g, i) for i in range(4)):
                continue
            ci = observed_ci(g)
            if not ci_consistent(p, g)[0]:
                continue
        groups.setdefault(ci, []).append(g)
    print(f"{len(groups)} observed CI sets")
    for ci, gs in sorted(groups.items(), key=lambda kv: (len(kv[0]), sorted(map(str, kv[0])))):
        print(f"\nCI = {{{'; '.join(map(str, sorted(ci)))}}}: {len(gs)} graph(s)")
        for g in sorted(gs, key=lambda h: (len(h.edges), sorted(h.edges))):
            cert = esep_search(g)
            extra = f", (D _||_ F | B,A) {'holds' if premise_holds(g, 1) else 'fails'}" if args.target == "20" else ""
            print(f"  {' '.join(f'{a}->{b}' for a, b in sorted(g.edges))}  e-sep: {cert or 'none'}{extra}")


if __name__ == "__main__":
    main()
