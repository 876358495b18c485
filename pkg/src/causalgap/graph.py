"""Generalized DAGs (observed + latent nodes) and the graphical algorithms on them.

Node sets are passed around as plain iterables of labels and normalised to
``frozenset``. Every function here is pure; a :class:`Gdag` never changes
after construction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

from .errors import (
    CycleDetected,
    DanglingEdge,
    DuplicateLabel,
    GraphError,
    OverlappingSets,
    UnknownNode,
)

NodeSet = frozenset

LATENT_PREFIX = "U_"


def _as_set(s) -> frozenset:
    if s is None:
        return frozenset()
    if isinstance(s, str):
        return frozenset([s])
    return frozenset(s)


@dataclass(frozen=True)
class Gdag:
    """A DAG whose nodes are flagged observed or latent.

    >>> g = Gdag.from_edges([("A", "X"), ("U", "X")], latent=["U"])
    >>> sorted(g.observed), sorted(g.latent)
    (['A', 'X'], ['U'])
    """

    observed: frozenset
    latent: frozenset = frozenset()
    edges: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "observed", _as_set(self.observed))
        object.__setattr__(self, "latent", _as_set(self.latent))
        object.__setattr__(self, "edges", frozenset(tuple(e) for e in self.edges))
        validate(self)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[str, str]],
        latent: Iterable[str] = (),
        isolated: Iterable[str] = (),
    ) -> "Gdag":
        """Build a graph from an edge list; every endpoint not in ``latent`` is observed."""
        edges = [tuple(e) for e in edges]
        latent = _as_set(latent)
        labels = {n for e in edges for n in e} | set(isolated) | latent
        return cls(observed=frozenset(labels - latent), latent=latent, edges=frozenset(edges))

    @classmethod
    def from_nodes(cls, nodes: Mapping[str, bool], edges: Iterable[tuple[str, str]] = ()) -> "Gdag":
        """Build a graph from ``{label: is_observed}``."""
        return cls(
            observed=frozenset(n for n, obs in nodes.items() if obs),
            latent=frozenset(n for n, obs in nodes.items() if not obs),
            edges=frozenset(tuple(e) for e in edges),
        )

    @property
    def nodes(self) -> tuple:
        return tuple(sorted(self.observed | self.latent))

    def is_observed(self, node: str) -> bool:
        if node in self.observed:
            return True
        if node in self.latent:
            return False
        raise UnknownNode(f"unknown node {node!r}")

    @cached_property
    def parents(self) -> dict:
        out = {n: set() for n in self.observed | self.latent}
        for a, b in self.edges:
            out[b].add(a)
        return {n: frozenset(p) for n, p in out.items()}

    @cached_property
    def children(self) -> dict:
        out = {n: set() for n in self.observed | self.latent}
        for a, b in self.edges:
            out[a].add(b)
        return {n: frozenset(c) for n, c in out.items()}

    @cached_property
    def topological_order(self) -> tuple:
        return _topological_order(self.observed | self.latent, self.edges)

    def __repr__(self):
        edges = ", ".join(f"{a}->{b}" for a, b in sorted(self.edges))
        lat = ",".join(sorted(self.latent))
        return f"Gdag(edges=[{edges}], latent={{{lat}}}, observed={{{','.join(sorted(self.observed))}}})"


def _topological_order(nodes, edges) -> tuple:
    indeg = {n: 0 for n in nodes}
    succ = {n: [] for n in nodes}
    for a, b in edges:
        indeg[b] += 1
        succ[a].append(b)
    ready = sorted(n for n, d in indeg.items() if d == 0)
    order = []
    while ready:
        n = ready.pop(0)
        order.append(n)
        for m in sorted(succ[n]):
            indeg[m] -= 1
            if indeg[m] == 0:
                ready.append(m)
        ready.sort()
    if len(order) != len(indeg):
        raise CycleDetected(_find_cycle(nodes, edges))
    return tuple(order)


def _find_cycle(nodes, edges) -> list:
    succ = {n: sorted(b for a, b in edges if a == n) for n in nodes}
    color = dict.fromkeys(nodes, 0)
    stack: list = []

    def visit(n):
        color[n] = 1
        stack.append(n)
        for m in succ[n]:
            if color[m] == 1:
                return stack[stack.index(m):] + [m]
            if color[m] == 0:
                found = visit(m)
                if found:
                    return found
        stack.pop()
        color[n] = 2
        return None

    for n in sorted(nodes):
        if color[n] == 0:
            found = visit(n)
            if found:
                return found
    return []


def validate(g: Gdag) -> None:
    """Raise if ``g`` violates a DAG axiom; return ``None`` otherwise."""
    for label in g.observed | g.latent:
        if not isinstance(label, str) or not label or any(ch.isspace() for ch in label):
            raise GraphError(f"invalid node label {label!r}")
    both = g.observed & g.latent
    if both:
        raise DuplicateLabel(f"labels both observed and latent: {sorted(both)}")
    nodes = g.observed | g.latent
    for a, b in g.edges:
        if a not in nodes or b not in nodes:
            raise DanglingEdge(f"edge {a}->{b} has an endpoint that is not a node")
        if a == b:
            raise CycleDetected([a, a])
    _topological_order(nodes, g.edges)


def _check_nodes(g: Gdag, *sets) -> None:
    nodes = g.observed | g.latent
    for s in sets:
        missing = s - nodes
        if missing:
            raise UnknownNode(f"unknown node(s) {sorted(missing)}")


def _check_disjoint(*sets) -> None:
    for a, b in combinations(sets, 2):
        if a & b:
            raise OverlappingSets(f"node sets overlap on {sorted(a & b)}")


def _closure(start, step) -> frozenset:
    seen = set()
    todo = deque(start)
    while todo:
        n = todo.popleft()
        for m in step[n]:
            if m not in seen:
                seen.add(m)
                todo.append(m)
    return frozenset(seen)


def ancestors(g: Gdag, s) -> frozenset:
    """Nodes with a nontrivial directed path into ``s``.

    A member of ``s`` is only included when it is itself an ancestor of some
    other member.
    """
    s = _as_set(s)
    _check_nodes(g, s)
    return _closure(s, g.parents)


def descendants(g: Gdag, s) -> frozenset:
    s = _as_set(s)
    _check_nodes(g, s)
    return _closure(s, g.children)


def d_separated(g: Gdag, x, y, z=()) -> bool:
    """True iff every path between ``x`` and ``y`` is blocked given ``z``.

    Reachability ("Bayes ball") formulation; agrees with explicit path
    enumeration, which the test suite checks.
    """
    x, y, z = _as_set(x), _as_set(y), _as_set(z)
    _check_nodes(g, x, y, z)
    _check_disjoint(x, y, z)
    if not x or not y:
        raise GraphError("x and y must be non-empty")
    return not (_reachable(g, x, z) & y)


def _reachable(g: Gdag, x: frozenset, z: frozenset) -> set:
    # colliders are passable iff they are in z or have a descendant in z
    opens = z | _closure(z, g.parents)
    reached = set()
    visited = set()
    todo = [(n, True) for n in x]  # (node, arrived from a child)
    while todo:
        n, up = todo.pop()
        if (n, up) in visited:
            continue
        visited.add((n, up))
        if n not in z:
            reached.add(n)
        if up:
            if n in z:
                continue
            todo.extend((p, True) for p in g.parents[n])
            todo.extend((c, False) for c in g.children[n])
        else:
            if n not in z:
                todo.extend((c, False) for c in g.children[n])
            if n in opens:
                todo.extend((p, True) for p in g.parents[n])
    return reached


def delete_nodes(g: Gdag, w) -> Gdag:
    """Induced subgraph on the complement of ``w``."""
    w = _as_set(w)
    _check_nodes(g, w)
    if not w:
        return g
    return Gdag(
        observed=g.observed - w,
        latent=g.latent - w,
        edges=frozenset(e for e in g.edges if e[0] not in w and e[1] not in w),
    )


def e_separated(g: Gdag, x, y, z=(), w=()) -> bool:
    """d-separation of ``x`` and ``y`` by ``z`` after deleting ``w``."""
    x, y, z, w = map(_as_set, (x, y, z, w))
    _check_nodes(g, x, y, z, w)
    _check_disjoint(x, y, z, w)
    return d_separated(delete_nodes(g, w), x, y, z)


def _latent_reach(g: Gdag, start) -> frozenset:
    """Nodes reachable from ``start`` by a directed path whose inner nodes are latent."""
    seen = set()
    out = set()
    todo = list(start)
    while todo:
        n = todo.pop()
        for m in g.children[n]:
            out.add(m)
            if m in g.latent and m not in seen:
                seen.add(m)
                todo.append(m)
    return frozenset(out)


def hidden_path_exists(g: Gdag, x: str, y: str) -> bool:
    """Directed path x -> ... -> y of at least two arrows through latent nodes only."""
    _check_nodes(g, frozenset([x, y]))
    if x == y:
        raise GraphError("hidden paths need two distinct endpoints")
    latent_children = [c for c in g.children[x] if c in g.latent]
    return y in _latent_reach(g, latent_children)


def hidden_common_causes(g: Gdag) -> dict:
    """Map each latent node to the observed nodes it causes directly or via hidden paths."""
    return {u: _latent_reach(g, [u]) & g.observed for u in sorted(g.latent)}


def maximal_connected_subsets(g: Gdag) -> frozenset:
    """Inclusion-maximal observed sets (size >= 2) sharing one hidden common cause."""
    groups = {s for s in hidden_common_causes(g).values() if len(s) >= 2}
    return frozenset(s for s in groups if not any(s < t for t in groups))


def latent_name(members, taken=()) -> str:
    name = LATENT_PREFIX + "_".join(sorted(members))
    while name in taken:
        name += "'"
    return name


def canonical_projection(g: Gdag) -> Gdag:
    edges = set()
    for a in g.observed:
        for b in _latent_reach(g, [a]) & g.observed:
            edges.add((a, b))
    taken = set(g.observed)
    latent = set()
    for facet in sorted(maximal_connected_subsets(g), key=sorted):
        u = latent_name(facet, taken)
        taken.add(u)
        latent.add(u)
        edges.update((u, m) for m in facet)
    return Gdag(observed=g.observed, latent=frozenset(latent), edges=frozenset(edges))


def _signature(g: Gdag):
    observed_edges = frozenset(e for e in g.edges if e[0] in g.observed and e[1] in g.observed)
    latents = sorted(
        (tuple(sorted(g.parents[u])), tuple(sorted(g.children[u]))) for u in g.latent
    )
    return g.observed, observed_edges, tuple(latents)


def isomorphic_fixing_observed(g: Gdag, h: Gdag) -> bool:
    """Equality up to renaming of latent nodes.

    Only meaningful when latent nodes have no latent neighbours, which is the
    case for canonical graphs.
    """
    if any(p in g.latent for u in g.latent for p in g.parents[u] | g.children[u]):
        raise GraphError("isomorphism check needs latent nodes without latent neighbours")
    if any(p in h.latent for u in h.latent for p in h.parents[u] | h.children[u]):
        raise GraphError("isomorphism check needs latent nodes without latent neighbours")
    return _signature(g) == _signature(h)


def is_canonical(g: Gdag) -> bool:
    if any(g.parents[u] or (g.children[u] & g.latent) for u in g.latent):
        return False
    return _signature(canonical_projection(g)) == _signature(g)


@dataclass(frozen=True)
class Skeleton:
    """Undirected graph on the observed nodes."""

    nodes: frozenset
    edges: frozenset = field(default=frozenset())

    def __post_init__(self):
        object.__setattr__(self, "nodes", _as_set(self.nodes))
        edges = frozenset(frozenset(e) for e in self.edges)
        for e in edges:
            if len(e) != 2:
                raise GraphError(f"skeleton edge {sorted(e)} is a self-loop")
            if not e <= self.nodes:
                raise DanglingEdge(f"skeleton edge {sorted(e)} has an unknown endpoint")
        object.__setattr__(self, "edges", edges)

    def adjacent(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.edges

    def neighbours(self, a: str) -> frozenset:
        return frozenset(n for e in self.edges if a in e for n in e if n != a)

    def sorted_edges(self) -> list:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def with_edge(self, a: str, b: str) -> "Skeleton":
        return Skeleton(self.nodes, self.edges | {frozenset((a, b))})

    def without_edge(self, a: str, b: str) -> "Skeleton":
        return Skeleton(self.nodes, self.edges - {frozenset((a, b))})

    def __str__(self):
        return " ".join(f"{a}-{b}" for a, b in self.sorted_edges()) or "(no edges)"


def skeleton(g: Gdag) -> Skeleton:
    cg = g if is_canonical(g) else canonical_projection(g)
    edges = {frozenset(e) for e in cg.edges if e[0] in cg.observed and e[1] in cg.observed}
    for facet in maximal_connected_subsets(cg):
        edges.update(frozenset(p) for p in combinations(sorted(facet), 2))
    return Skeleton(cg.observed, frozenset(edges))


def complete_dag(nodes: Iterable[str]) -> Gdag:
    """Fully connected DAG respecting the sorted label order."""
    order = sorted(nodes)
    return Gdag(
        observed=frozenset(order),
        edges=frozenset(combinations(order, 2)),
    )
