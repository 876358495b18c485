"""Check the fine-grained inequality on classical models of a catalog graph.

Random mode draws seeded models with bounded-denominator tables; the
deterministic mode (hlp-20 only) enumerates every deterministic model
D = f(B, C), E = g(A, C), F = h(B, E) with uniform A, B, C, which is where
the four-term combination is largest.

Run: python scripts/eq1_soundness.py --graph hlp-20 --samples 2000
     python scripts/eq1_soundness.py --deterministic --card-e 3
"""

import argparse
import math
from collections import Counter
from itertools import product

from causalgap import catalog
from causalgap.dist import observed_marginal, random_model
from causalgap.finegrained import fine_grained_lhs_eq1


def random_run(name, samples, card, denominator, seed):
    g = catalog.get(name).graph
    worst = -math.inf
    for s in range(seed, seed + samples):
        cards = {n: (2 if n == "A" else card) for n in g.nodes}
        lhs, rhs = fine_grained_lhs_eq1(observed_marginal(random_model(g, cards, s, denominator)), g)
        worst = max(worst, lhs - rhs)
    print(f"{name}: {samples} models, cardinality {card}, max lhs-rhs = {worst:.6f}")
    return worst


def _h(counts):
    n = sum(counts.values())
    return -sum(c / n * math.log2(c / n) for c in counts.values() if c)


def _mi(pairs):
    return _h(Counter(a for a, _ in pairs)) + _h(Counter(b for _, b in pairs)) - _h(Counter(pairs))


def deterministic_run(cb, cc, ce):
    worst = -math.inf
    for f in product(range(2), repeat=cb * cc):
        for g in product(range(ce), repeat=2 * cc):
            for h in product(range(2), repeat=ce * cb):
                rows = {0: [], 1: []}
                for a, b, c in product(range(2), range(cb), range(cc)):
                    d = f[b * cc + c]
                    e = g[a * cc + c]
                    rows[a].append((d, e, h[e * cb + b]))
                lhs = (_mi([(e, d) for d, e, _ in rows[0]]) - _mi([(x, d) for d, _, x in rows[0]])
                       + _mi([(x, d) for d, _, x in rows[1]]) - _mi([(e, d) for d, e, _ in rows[1]]))
                rhs = _h(Counter(d for r in rows.values() for d, _, _ in r))
                worst = max(worst, lhs - rhs)
    print(f"deterministic hlp-20 models, |B|={cb} |C|={cc} |E|={ce}: max lhs-rhs = {worst:.6f}")
    return worst


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--graph", default="hlp-20")
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--card", type=int, default=2, help="cardinality of every node except A")
    ap.add_argument("--denominator", type=int, default=16)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--deterministic", action="store_true")
    ap.add_argument("--card-b", type=int, default=2)
    ap.add_argument("--card-c", type=int, default=2)
    ap.add_argument("--card-e", type=int, default=2)
    args = ap.parse_args()
    if args.deterministic:
        worst = deterministic_run(args.card_b, args.card_c, args.card_e)
    else:
        worst = random_run(args.graph, args.samples, args.card, args.denominator, args.seed)
    print("inequality holds" if worst <= 1e-9 else "INEQUALITY VIOLATED")


if __name__ == "__main__":
    main()
