"""Search the canonical graphs on the appendix skeleton for the chord-analysis example.

For every observed CI set realised on the skeleton
X-Z Y-Z W-Z A-Y A-W W-Y, report the stated properties that fail, whether an
e-separation certificate exists, and how many chord deletions and the four
chord additions (A-X W-X X-Y A-Z) remain viable. Takes about 25 minutes on
one core; --limit N stops after N CI sets with a certificate.

Run: python scripts/search_appendix.py > appendix.txt
"""

import argparse

from causalgap.ci import observed_ci_relations
from causalgap.graph import Skeleton, d_separated, descendants, e_separated
from causalgap.interesting import esep_search
from causalgap.viability import candidate_graph, canonical_candidates, chord_addition_report, chord_deletion_report

OBSERVED = "AWXYZ"
CHORDS = [("X", "Z"), ("Z", "Y"), ("Z", "W"), ("A", "Y"), ("A", "W"), ("Y", "W")]
ADDITIONS = [("A", "X"), ("W", "X"), ("X", "Y"), ("A", "Z")]


def stated_properties(g) -> dict:
    return {
        "(X _||_ W)": d_separated(g, {"X"}, {"W"}),
        "(X _||_ Y | Z,A)": d_separated(g, {"X"}, {"Y"}, {"Z", "A"}),
        "not (X _||_ Y | Z)": not d_separated(g, {"X"}, {"Y"}, {"Z"}),
        "not (Y _||_ W | A,Z)": not d_separated(g, {"Y"}, {"W"}, {"A", "Z"}),
        "X, Y e-separated by Z after deleting W": e_separated(g, {"X"}, {"Y"}, {"Z"}, {"W"}),
        "Z not descended from W": "Z" not in descendants(g, {"W"}),
        "arrow Z->Y": ("Z", "Y") in g.edges,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", type=int, default=None)
    args = ap.parse_args()
    sk = Skeleton(frozenset(OBSERVED), CHORDS)
    groups = {}
    for facets, arrows in canonical_candidates(sk):
        g = candidate_graph(facets, arrows, OBSERVED)
        groups.setdefault(observed_ci_relations(g).relations, []).append(g)
    print(f"{sum(map(len, groups.values()))} canonical graphs, {len(groups)} observed CI sets")
    all_props = [ci for ci, gs in groups.items() if any(all(stated_properties(g).values()) for g in gs)]
    print(f"CI sets with a graph meeting every stated property: {len(all_props)}")
    shown = 0
    for ci, gs in sorted(groups.items(), key=lambda kv: (-len(kv[0]), sorted(map(str, kv[0])))):
        g = min(gs, key=lambda h: (len(h.latent), len(h.edges), sorted(h.edges)))
        cert = esep_search(g)
        if cert is None:
            continue
        shown += 1
        dele = chord_deletion_report(g)
        line = f"\nCI = {{{'; '.join(map(str, sorted(ci)))}}}\n  e-sep: {cert}\n"
        line += f"  deletions not viable: {sum(not r.viable for r in dele)}/6"
        if all(not r.viable for r in dele):
            add = chord_addition_report(g, ADDITIONS)
            viable = [f"{a}-{b}" for (a, b), r in zip((r.chord for r in add), add) if r.viable]
            line += f"; additions not viable: {4 - len(viable)}/4 {viable or ''}"
        fails = [k for k, ok in stated_properties(g).items() if not ok]
        line += f"\n  stated properties failing: {fails or 'none'}"
        line += f"\n  graph: {' '.join(f'{a}->{b}' for a, b in sorted(g.edges))}"
        print(line, flush=True)
        if args.limit and shown >= args.limit:
            break


if __name__ == "__main__":
    main()
