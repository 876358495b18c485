"""Conditional-independence relations: graph-implied sets and exact tests on tables."""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Optional

from .errors import GraphError, OverlappingSets, ParseError, VariableMismatch
from .graph import Gdag, _as_set, d_separated

# enumeration is 4^n; beyond this the caller has to bound set sizes
UNBOUNDED_LIMIT = 6


def _key(s: frozenset) -> tuple:
    return tuple(sorted(s))


@dataclass(frozen=True)
class CiRelation:
    """``(x _||_ y | z)``, stored with ``x`` the lexicographically smaller side."""

    x: frozenset
    y: frozenset
    z: frozenset = frozenset()

    def __post_init__(self):
        x, y, z = _as_set(self.x), _as_set(self.y), _as_set(self.z)
        if not x or not y:
            raise GraphError("both sides of a CI relation must be non-empty")
        if x & y or x & z or y & z:
            raise OverlappingSets("CI relation sets must be disjoint")
        if _key(y) < _key(x):
            x, y = y, x
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "z", z)

    @property
    def variables(self) -> frozenset:
        return self.x | self.y | self.z

    def sort_key(self) -> tuple:
        return (
            len(self.x) + len(self.y) + len(self.z),
            len(self.z),
            _key(self.x),
            _key(self.y),
            _key(self.z),
        )

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        s = f"{','.join(_key(self.x))} _||_ {','.join(_key(self.y))}"
        if self.z:
            s += f" | {','.join(_key(self.z))}"
        return s

    @classmethod
    def parse(cls, text: str) -> "CiRelation":
        """Parse ``"X,Y _||_ U,V | Z"``; the conditioning part is optional."""
        m = re.fullmatch(r"\s*([^|]+?)\s*_\|\|_\s*([^|]+?)\s*(?:\|\s*(.*?)\s*)?", text)
        if not m:
            raise ParseError(f"not a CI relation: {text!r}")
        parts = [_split(m.group(i)) for i in (1, 2, 3)]
        return cls(*parts)


def _split(text) -> frozenset:
    if text is None or text.strip() in ("", "-"):
        return frozenset()
    return frozenset(t.strip() for t in text.split(",") if t.strip())


@dataclass(frozen=True)
class CiSet:
    relations: frozenset
    scope: frozenset

    def __post_init__(self):
        rel = frozenset(self.relations)
        scope = _as_set(self.scope)
        for r in rel:
            if not r.variables <= scope:
                raise GraphError(f"relation {r} mentions variables outside the scope")
        object.__setattr__(self, "relations", rel)
        object.__setattr__(self, "scope", scope)

    def __iter__(self) -> Iterator[CiRelation]:
        return iter(sorted(self.relations))

    def __len__(self):
        return len(self.relations)

    def __contains__(self, r):
        return r in self.relations

    def __bool__(self):
        return bool(self.relations)

    def to_text(self) -> str:
        return "".join(f"{r}\n" for r in self)


def _subsets(items, max_size) -> list:
    items = sorted(items)
    top = len(items) if max_size is None else min(max_size, len(items))
    return [frozenset(c) for k in range(top + 1) for c in combinations(items, k)]


def candidate_relations(variables: Iterable[str], max_set_size: Optional[int] = None) -> list:
    """Every CI relation over disjoint subsets of ``variables``, in canonical order."""
    variables = sorted(variables)
    out = set()
    # assign each variable to x, y, z or nothing
    for labels in product(range(4), repeat=len(variables)):
        x = frozenset(v for v, l in zip(variables, labels) if l == 1)
        y = frozenset(v for v, l in zip(variables, labels) if l == 2)
        z = frozenset(v for v, l in zip(variables, labels) if l == 3)
        if not x or not y:
            continue
        if max_set_size is not None and max(len(x), len(y), len(z)) > max_set_size:
            continue
        out.add(CiRelation(x, y, z))
    return sorted(out)


def _resolve_max(g_observed, max_set_size):
    if max_set_size is None and len(g_observed) > UNBOUNDED_LIMIT:
        raise ValueError(
            f"{len(g_observed)} observed nodes: pass max_set_size explicitly "
            f"(unbounded enumeration is only the default up to {UNBOUNDED_LIMIT})"
        )
    return max_set_size


def observed_ci_relations(g: Gdag, max_set_size: Optional[int] = None) -> CiSet:
    """All d-separation statements among observed nodes of ``g``."""
    max_set_size = _resolve_max(g.observed, max_set_size)
    rels = [
        r for r in candidate_relations(g.observed, max_set_size) if d_separated(g, r.x, r.y, r.z)
    ]
    return CiSet(frozenset(rels), g.observed)


def ci_excluded_for_all_subsets(g: Gdag, x, y, z, w) -> bool:
    """True iff ``(x _||_ y | z s)`` fails in ``g`` for every ``s`` subset of ``w``."""
    x, y, z, w = map(_as_set, (x, y, z, w))
    for a, b in combinations((x, y, z, w), 2):
        if a & b:
            raise OverlappingSets(f"sets overlap on {sorted(a & b)}")
    return not any(d_separated(g, x, y, z | s) for s in _subsets(w, None))


def ci_holds_in_distribution(p, r: CiRelation) -> bool:
    """Exact test of ``P(xyz) P(z) == P(xz) P(yz)`` over all assignments."""
    return p.conditionally_independent(r.x, r.y, r.z)


def ci_consistent(p, g: Gdag, max_set_size: Optional[int] = None):
    """Check every graph-implied observed CI relation against ``p``.

    Returns ``(True, None)`` or ``(False, first_violated_relation)``.
    """
    if set(p.names) != set(g.observed):
        raise VariableMismatch(
            f"distribution variables {sorted(p.names)} != observed nodes {sorted(g.observed)}"
        )
    for r in observed_ci_relations(g, max_set_size):
        if not ci_holds_in_distribution(p, r):
            return False, r
    return True, None


def parse_ci_file(text: str) -> list:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(CiRelation.parse(line))
        except (ParseError, GraphError) as exc:
            raise ParseError(str(exc), lineno) from None
    return out
