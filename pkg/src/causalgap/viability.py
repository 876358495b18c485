"""Which CI sets can a given skeleton support?

Canonical GDAGs with a fixed skeleton are enumerated exhaustively: a family of
pairwise incomparable skeleton cliques becomes the latent facets, and every
skeleton edge is given an orientation, or left to a facet that covers it.
Exponential, so observed node counts are capped.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Optional

from . import _bits
from .ci import CiRelation, CiSet, candidate_relations, observed_ci_relations
from .errors import TooLarge
from .graph import Gdag, Skeleton, latent_name, skeleton

MAX_VIABILITY_NODES = 5


@dataclass(frozen=True)
class ViabilityResult:
    viable: bool
    witness: Optional[Gdag]
    conflict: Optional[CiRelation]
    candidates: int
    exhausted: bool = True

    def __str__(self):
        if self.viable:
            return f"viable ({self.candidates} candidates tried)"
        tail = f"; conflict {self.conflict}" if self.conflict else ""
        if not self.exhausted:
            return f"undecided, candidate cap hit after {self.candidates}{tail}"
        return f"not viable ({self.candidates} candidates){tail}"


@dataclass(frozen=True)
class ChordReport:
    chord: tuple
    result: ViabilityResult

    @property
    def viable(self) -> bool:
        return self.result.viable

    def __str__(self):
        a, b = self.chord
        return f"{a}-{b}: {self.result}"


def _cliques(sk: Skeleton, order: list) -> list:
    out = []
    for k in range(2, len(order) + 1):
        for c in combinations(order, k):
            if all(sk.adjacent(a, b) for a, b in combinations(c, 2)):
                out.append(frozenset(c))
    return out


def _antichains(cliques: list) -> Iterator[tuple]:
    """Every family of pairwise incomparable sets, smallest families first."""

    def grow(start, chosen):
        yield tuple(chosen)
        for i in range(start, len(cliques)):
            c = cliques[i]
            if all(not (c <= d or d <= c) for d in chosen):
                chosen.append(c)
                yield from grow(i + 1, chosen)
                chosen.pop()

    yield from grow(0, [])


def canonical_candidates(sk: Skeleton) -> Iterator[tuple]:
    """Yield ``(facets, arrows)`` for every canonical GDAG whose skeleton is ``sk``."""
    order = sorted(sk.nodes)
    pos = {n: i for i, n in enumerate(order)}
    edges = sk.sorted_edges()
    for facets in _antichains(_cliques(sk, order)):
        covered = {frozenset(p) for f in facets for p in combinations(sorted(f), 2)}
        options = []
        for a, b in edges:
            opts = [(a, b), (b, a)]
            if frozenset((a, b)) in covered:
                opts.append(None)
            options.append(opts)
        for choice in product(*options):
            arrows = [e for e in choice if e is not None]
            parents = [0] * len(order)
            for a, b in arrows:
                parents[pos[b]] |= 1 << pos[a]
            if _bits.is_acyclic(tuple(parents)):
                yield facets, tuple(arrows)


def _to_bits(order, facets, arrows) -> tuple:
    pos = {n: i for i, n in enumerate(order)}
    n = len(order)
    parents = [0] * (n + len(facets))
    for a, b in arrows:
        parents[pos[b]] |= 1 << pos[a]
    for k, f in enumerate(facets):
        for m in f:
            parents[pos[m]] |= 1 << (n + k)
    return tuple(parents)


def candidate_graph(facets, arrows, observed) -> Gdag:
    edges = set(arrows)
    latent = set()
    for f in sorted(facets, key=sorted):
        u = latent_name(f, set(observed) | latent)
        latent.add(u)
        edges.update((u, m) for m in f)
    return Gdag(observed=frozenset(observed), latent=frozenset(latent), edges=frozenset(edges))


def skeleton_viability(
    sk: Skeleton,
    target_ci: CiSet | Iterable[CiRelation],
    max_candidates: Optional[int] = None,
    priority: Iterable[CiRelation] = (),
) -> ViabilityResult:
    """Is there a canonical GDAG with skeleton ``sk`` whose observed CI set is exactly ``target_ci``?

    When none exists, ``conflict`` is a relation on which *every* candidate
    disagrees with the target, if there is one; relations in ``priority`` are
    preferred, then canonical order.
    """
    order = sorted(sk.nodes)
    if len(order) > MAX_VIABILITY_NODES:
        raise TooLarge(f"{len(order)} observed nodes; viability search is capped at {MAX_VIABILITY_NODES}")
    target = frozenset(target_ci)
    pos = {n: i for i, n in enumerate(order)}

    def mask(s):
        return sum(1 << pos[v] for v in s)

    rels = candidate_relations(order)
    first = [r for r in priority if r in set(rels)]
    rels = first + [r for r in rels if r not in set(first)]
    encoded = [(r, mask(r.x), mask(r.y), mask(r.z), r in target) for r in rels]
    # relations the target needs to hold are the cheapest filter
    checks = [e for e in encoded if e[4]] + [e for e in encoded if not e[4]]

    universal = list(encoded)  # relations every candidate so far gets wrong
    count = 0
    for facets, arrows in canonical_candidates(sk):
        if max_candidates is not None and count >= max_candidates:
            return ViabilityResult(False, None, universal[0][0] if universal else None, count, exhausted=False)
        count += 1
        parents = _to_bits(order, facets, arrows)
        children = _bits.children_of(parents)
        ok = True
        for r, x, y, z, want in checks:
            if _bits.d_separated(parents, children, x, y, z) != want:
                ok = False
                break
        if ok:
            return ViabilityResult(True, candidate_graph(facets, arrows, order), None, count)
        if universal:
            universal = [
                e for e in universal
                if _bits.d_separated(parents, children, e[1], e[2], e[3]) != e[4]
            ]
    return ViabilityResult(False, None, universal[0][0] if universal else None, count)


def _pair_relations(a: str, b: str, nodes) -> list:
    rest = sorted(set(nodes) - {a, b})
    return [
        CiRelation({a}, {b}, frozenset(z)) for k in range(len(rest) + 1) for z in combinations(rest, k)
    ]


def chord_deletion_report(g: Gdag, max_candidates: Optional[int] = None) -> list:
    """Try deleting each skeleton chord of ``g`` in turn against ``g``'s observed CI set."""
    sk = skeleton(g)
    if len(sk.nodes) > MAX_VIABILITY_NODES:
        raise TooLarge(f"{len(sk.nodes)} observed nodes; viability search is capped at {MAX_VIABILITY_NODES}")
    target = observed_ci_relations(g)
    out = []
    for a, b in sk.sorted_edges():
        res = skeleton_viability(
            sk.without_edge(a, b), target, max_candidates, priority=_pair_relations(a, b, sk.nodes)
        )
        out.append(ChordReport((a, b), res))
    return out


def chord_addition_report(g: Gdag, pairs=None, max_candidates: Optional[int] = None) -> list:
    """Try adding each missing chord; ``pairs`` defaults to every non-adjacent observed pair."""
    sk = skeleton(g)
    if len(sk.nodes) > MAX_VIABILITY_NODES:
        raise TooLarge(f"{len(sk.nodes)} observed nodes; viability search is capped at {MAX_VIABILITY_NODES}")
    target = observed_ci_relations(g)
    if pairs is None:
        pairs = [p for p in combinations(sorted(sk.nodes), 2) if not sk.adjacent(*p)]
    out = []
    for a, b in (tuple(sorted(p)) for p in pairs):
        res = skeleton_viability(
            sk.with_edge(a, b), target, max_candidates, priority=_pair_relations(a, b, sk.nodes)
        )
        out.append(ChordReport((a, b), res))
    return out
