"""Slow, independent reference implementations used as test oracles.

None of these import the code under test beyond the graph container.
"""

from __future__ import annotations

import math
from collections import defaultdict
from fractions import Fraction
from itertools import combinations


def _desc_incl(children, v):
    out = {v}
    todo = [v]
    while todo:
        for c in children[todo.pop()]:
            if c not in out:
                out.add(c)
                todo.append(c)
    return out


def _adjacency(nodes, edges):
    parents = {v: set() for v in nodes}
    children = {v: set() for v in nodes}
    for a, b in edges:
        parents[b].add(a)
        children[a].add(b)
    return parents, children


def simple_paths(nodes, edges, x, y):
    parents, children = _adjacency(nodes, edges)
    out = []

    def walk(path):
        v = path[-1]
        if v == y:
            out.append(tuple(path))
            return
        for u in sorted(parents[v] | children[v]):
            if u not in path:
                path.append(u)
                walk(path)
                path.pop()

    walk([x])
    return out


def path_blocked(edges, children, path, z) -> bool:
    """The literal blocking rule: a non-collider in z, or a collider with no descendant in z."""
    for a, m, b in zip(path, path[1:], path[2:]):
        if (a, m) in edges and (b, m) in edges:
            if not (_desc_incl(children, m) & z):
                return True
        elif m in z:
            return True
    return False


def dsep_paths(nodes, edges, xs, ys, zs) -> bool:
    """d-separation of sets by enumerating every simple path between members."""
    edges = set(edges)
    _, children = _adjacency(nodes, edges)
    z = set(zs)
    for x in xs:
        for y in ys:
            for p in simple_paths(nodes, edges, x, y):
                if not path_blocked(edges, children, p, z):
                    return False
    return True


def dsep_moral(nodes, edges, xs, ys, zs) -> bool:
    """d-separation via the moralised ancestral graph (Lauritzen's criterion)."""
    parents, _ = _adjacency(nodes, edges)
    keep = set(xs) | set(ys) | set(zs)
    todo = list(keep)
    while todo:
        for p in parents[todo.pop()]:
            if p not in keep:
                keep.add(p)
                todo.append(p)
    nbr = defaultdict(set)
    for v in keep:
        ps = [p for p in parents[v] if p in keep]
        for p in ps:
            nbr[p].add(v)
            nbr[v].add(p)
        for a, b in combinations(ps, 2):
            nbr[a].add(b)
            nbr[b].add(a)
    seen = set(xs)
    todo = list(xs)
    while todo:
        v = todo.pop()
        for u in nbr[v]:
            if u in zs or u in seen:
                continue
            if u in ys:
                return False
            seen.add(u)
            todo.append(u)
    return True


def marginal(table: dict, names: tuple, keep) -> dict:
    idx = [names.index(k) for k in sorted(keep)]
    out = defaultdict(Fraction)
    for a, p in table.items():
        out[tuple(a[i] for i in idx)] += p
    return dict(out)


def cmi_direct(table: dict, names: tuple, x, y, z=()) -> float:
    """I(X:Y|Z) from the defining sum over the support, in bits."""
    x, y, z = sorted(x), sorted(y), sorted(z)
    pxyz = marginal(table, names, x + y + z)
    pxz = marginal(table, names, x + z)
    pyz = marginal(table, names, y + z)
    pz = marginal(table, names, z)
    order = sorted(x + y + z)
    total = 0.0
    for a, p in pxyz.items():
        if not p:
            continue
        val = dict(zip(order, a))
        kxz = tuple(val[v] for v in sorted(x + z))
        kyz = tuple(val[v] for v in sorted(y + z))
        kz = tuple(val[v] for v in sorted(z))
        total += float(p) * math.log2(float(p * pz[kz] / (pxz[kxz] * pyz[kyz])))
    return total


def independent_exact(table: dict, names: tuple, x, y, z=()) -> bool:
    """P(x,y|z) = P(x|z) P(y|z) on every assignment of the full domain."""
    x, y, z = sorted(x), sorted(y), sorted(z)
    pxyz = marginal(table, names, x + y + z)
    pxz = marginal(table, names, x + z)
    pyz = marginal(table, names, y + z)
    pz = marginal(table, names, z)
    order = sorted(x + y + z)
    # every combination of observed xz and yz values sharing z
    for kxz, a in pxz.items():
        for kyz, b in pyz.items():
            vx = dict(zip(sorted(x + z), kxz))
            vy = dict(zip(sorted(y + z), kyz))
            if any(vx[v] != vy[v] for v in z):
                continue
            val = {**vx, **vy}
            joint = pxyz.get(tuple(val[v] for v in order), Fraction(0))
            if joint * pz[tuple(val[v] for v in z)] != a * b:
                return False
    return True
