"""Exact discrete distributions, Shannon entropies and classical causal models.

Probabilities are ``fractions.Fraction`` throughout. Only entropies are floats.
Variable values are 0-based integers ``0 .. cardinality-1``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Union

from .errors import (
    DistributionError,
    DomainMismatch,
    IncompleteVector,
    InvalidTable,
    NotExogenous,
    OverlappingSets,
    TooManyVariables,
    UnknownVariable,
    ZeroProbabilityEvent,
)
from .graph import Gdag, _as_set

IDENTITY_TOL = 1e-12
INEQUALITY_TOL = 1e-9
MAX_VECTOR_VARIABLES = 20


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    """Joint table over named finite variables.

    ``mass`` is sparse: assignments that are absent have probability zero.
    """

    variables: tuple
    mass: Mapping
    interventions: tuple = field(default=(), compare=False)

    def __post_init__(self):
        variables = tuple((str(n), int(c)) for n, c in self.variables)
        names = [n for n, _ in variables]
        if len(set(names)) != len(names):
            raise DistributionError(f"duplicate variable names in {names}")
        for n, c in variables:
            if c < 1:
                raise DistributionError(f"variable {n} has cardinality {c} < 1")
        cards = [c for _, c in variables]
        table = {}
        for a, m in dict(self.mass).items():
            a = tuple(int(v) for v in a)
            m = Fraction(m)
            if len(a) != len(cards) or any(not 0 <= v < c for v, c in zip(a, cards)):
                raise DistributionError(f"assignment {a} outside the domain {variables}")
            if m < 0:
                raise DistributionError(f"negative mass {m} at {a}")
            if m:
                table[a] = table.get(a, 0) + m
        total = sum(table.values(), Fraction(0))
        if total != 1:
            raise DistributionError(f"masses sum to {total}, not 1")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "mass", MappingProxyType(table))

    def __eq__(self, other):
        if not isinstance(other, DiscreteDistribution):
            return NotImplemented
        return self.variables == other.variables and dict(self.mass) == dict(other.mass)

    __hash__ = None

    @property
    def names(self) -> tuple:
        return tuple(n for n, _ in self.variables)

    @property
    def cardinalities(self) -> dict:
        return dict(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    def _require(self, names) -> None:
        missing = set(names) - set(self.names)
        if missing:
            raise UnknownVariable(f"unknown variable(s) {sorted(missing)}")

    def prob(self, assignment: Mapping[str, int]) -> Fraction:
        """Probability of a partial assignment."""
        self._require(assignment)
        keep = tuple(n for n in self.names if n in assignment)
        key = tuple(assignment[n] for n in keep)
        return self.marginal(keep).mass.get(key, Fraction(0))

    @cached_property
    def _marginals(self) -> dict:
        return {}

    def marginal(self, keep: Iterable[str]) -> "DiscreteDistribution":
        keep = set(keep)
        self._require(keep)
        order = tuple(n for n in self.names if n in keep)
        if order == self.names:
            return self
        cached = self._marginals.get(order)
        if cached is not None:
            return cached
        idx = [self.names.index(n) for n in order]
        table: dict = {}
        for a, m in self.mass.items():
            k = tuple(a[i] for i in idx)
            table[k] = table.get(k, 0) + m
        out = DiscreteDistribution(tuple(self.variables[i] for i in idx), table)
        self._marginals[order] = out
        return out

    def support(self) -> list:
        return sorted(self.mass)

    def items(self):
        """All assignments of the full domain with their mass, zeros included."""
        for a in product(*(range(c) for _, c in self.variables)):
            yield a, self.mass.get(a, Fraction(0))

    def conditionally_independent(self, x, y, z=()) -> bool:
        x, y, z = _as_set(x), _as_set(y), _as_set(z)
        if x & y or x & z or y & z:
            raise OverlappingSets("CI sets must be disjoint")
        self._require(x | y | z)
        pxyz = self.marginal(x | y | z)
        pxz = self.marginal(x | z)
        pyz = self.marginal(y | z)
        pz = self.marginal(z)
        names = pxyz.names

        def proj(dist, a):
            return tuple(a[names.index(n)] for n in dist.names)

        zero = Fraction(0)
        for a, m in pxyz.items():
            lhs = m * pz.mass.get(proj(pz, a), zero)
            rhs = pxz.mass.get(proj(pxz, a), zero) * pyz.mass.get(proj(pyz, a), zero)
            if lhs != rhs:
                return False
        return True

    def entropy(self, s: Iterable[str] = ()) -> float:
        """Shannon entropy in bits of the marginal on ``s``."""
        s = set(s)
        if not s:
            self._require(s)
            return 0.0
        m = self.marginal(s)
        # log2(n/d) via integer logs keeps tiny masses accurate
        terms = [
            -float(p) * (math.log2(p.numerator) - math.log2(p.denominator))
            for p in m.mass.values()
            if p
        ]
        return max(math.fsum(terms), 0.0)

    def to_text(self) -> str:
        from .formats import format_distribution

        return format_distribution(self)

    def __repr__(self):
        rows = ", ".join(f"{a}: {m}" for a, m in sorted(self.mass.items()))
        return f"DiscreteDistribution({list(self.variables)}, {{{rows}}})"


def uniform_over(variables, outcomes) -> DiscreteDistribution:
    """Uniform distribution on the listed outcomes (each a tuple of values)."""
    outcomes = list(outcomes)
    w = Fraction(1, len(outcomes))
    table: dict = {}
    for o in outcomes:
        table[tuple(o)] = table.get(tuple(o), 0) + w
    return DiscreteDistribution(tuple(variables), table)


def point_mass(variables, outcome) -> DiscreteDistribution:
    return DiscreteDistribution(tuple(variables), {tuple(outcome): Fraction(1)})


def product_distribution(*parts: DiscreteDistribution) -> DiscreteDistribution:
    variables = tuple(v for p in parts for v in p.variables)
    table = {}
    for combo in product(*(p.mass.items() for p in parts)):
        a = tuple(v for assignment, _ in combo for v in assignment)
        table[a] = math.prod((m for _, m in combo), start=Fraction(1))
    return DiscreteDistribution(variables, table)


def marginalize(p: DiscreteDistribution, keep) -> DiscreteDistribution:
    return p.marginal(_as_set(keep))


def condition(p: DiscreteDistribution, given: Mapping[str, int]) -> DiscreteDistribution:
    """``P(rest | given)``; the conditioned variables leave the domain."""
    p._require(given)
    norm = p.prob(given)
    if norm == 0:
        raise ZeroProbabilityEvent(f"P({dict(given)}) = 0")
    keep_idx = [i for i, n in enumerate(p.names) if n not in given]
    fixed = [(p.names.index(n), v) for n, v in given.items()]
    table = {}
    for a, m in p.mass.items():
        if all(a[i] == v for i, v in fixed):
            table[tuple(a[i] for i in keep_idx)] = m / norm
    return DiscreteDistribution(
        tuple(p.variables[i] for i in keep_idx), table, p.interventions
    )


def intervene_exogenous(p: DiscreteDistribution, g: Gdag, z: str, value: int) -> DiscreteDistribution:
    """Post-intervention distribution ``P(rest | do(z=value))`` for a parentless observed ``z``.

    For an exogenous node this coincides with post-selecting on ``z=value``;
    for anything else the identification does not hold and we refuse.
    """
    if z not in g.observed:
        raise NotExogenous(f"{z!r} is not an observed node of the graph")
    if g.parents[z]:
        raise NotExogenous(f"{z!r} has parents {sorted(g.parents[z])}")
    p._require([z])
    out = condition(p, {z: value})
    return DiscreteDistribution(out.variables, out.mass, p.interventions + ((z, value),))


def section_compatible(p: DiscreteDistribution, q: DiscreteDistribution, w, value) -> bool:
    """True iff ``p`` and ``q`` agree on every assignment with ``W = value``."""
    if p.variables != q.variables:
        raise DomainMismatch(f"{p.variables} vs {q.variables}")
    if not isinstance(value, Mapping):
        value = dict(zip(sorted(_as_set(w)), value))
    w = _as_set(w)
    if set(value) != set(w):
        raise DistributionError("section value must assign exactly the variables in w")
    p._require(w)
    fixed = [(p.names.index(n), value[n]) for n in w]
    zero = Fraction(0)
    for a in set(p.mass) | set(q.mass):
        if all(a[i] == v for i, v in fixed) and p.mass.get(a, zero) != q.mass.get(a, zero):
            return False
    return True


def shannon_entropy(p: DiscreteDistribution, s=()) -> float:
    return p.entropy(_as_set(s))


def conditional_mutual_information(p: DiscreteDistribution, x, y, z=()) -> float:
    """``H(xz) + H(yz) - H(xyz) - H(z)`` in bits."""
    x, y, z = _as_set(x), _as_set(y), _as_set(z)
    if x & y or x & z or y & z:
        raise OverlappingSets("CMI sets must be disjoint")
    val = p.entropy(x | z) + p.entropy(y | z) - p.entropy(x | y | z) - p.entropy(z)
    if val < -IDENTITY_TOL:
        raise ArithmeticError(f"negative conditional mutual information {val}")
    return val


@dataclass(frozen=True)
class EntropyVector:
    ground: frozenset
    entries: Mapping

    def __post_init__(self):
        object.__setattr__(self, "ground", _as_set(self.ground))
        object.__setattr__(
            self, "entries", MappingProxyType({frozenset(k): float(v) for k, v in self.entries.items()})
        )

    def __getitem__(self, s) -> float:
        return self.entries[_as_set(s)]


def entropy_vector(p: DiscreteDistribution) -> EntropyVector:
    n = len(p.names)
    if n > MAX_VECTOR_VARIABLES:
        raise TooManyVariables(f"{n} variables; entropy vectors are limited to {MAX_VECTOR_VARIABLES}")
    entries = {
        frozenset(s): p.entropy(s) for k in range(n + 1) for s in combinations(p.names, k)
    }
    return EntropyVector(frozenset(p.names), entries)


@dataclass(frozen=True)
class Violation:
    kind: str  # "empty", "monotonicity" or "submodularity"
    sets: tuple
    slack: float

    def __str__(self):
        sets = ", ".join("{" + ",".join(sorted(s)) + "}" for s in self.sets)
        return f"{self.kind} violated by {self.slack:.3g} on {sets}"


def check_polymatroid(v: EntropyVector, tol: float = INEQUALITY_TOL) -> list:
    """Elementary Shannon inequalities violated by ``v`` (empty list if none)."""
    ground = sorted(v.ground)
    needed = [frozenset(s) for k in range(len(ground) + 1) for s in combinations(ground, k)]
    missing = [s for s in needed if s not in v.entries]
    if missing:
        raise IncompleteVector(f"{len(missing)} subsets missing, e.g. {sorted(missing[0])}")
    h = v.entries
    out = []
    if abs(h[frozenset()]) > tol:
        out.append(Violation("empty", (frozenset(),), abs(h[frozenset()])))
    full = frozenset(ground)
    for a in ground:
        rest = full - {a}
        slack = h[rest] - h[full]
        if slack > tol:
            out.append(Violation("monotonicity", (rest, full), slack))
    for a, b in combinations(ground, 2):
        others = [n for n in ground if n not in (a, b)]
        for k in range(len(others) + 1):
            for xs in combinations(others, k):
                x = frozenset(xs)
                slack = h[x] + h[x | {a, b}] - h[x | {a}] - h[x | {b}]
                if slack > tol:
                    out.append(Violation("submodularity", (x, x | {a}, x | {b}), slack))
    return out


@dataclass(frozen=True)
class CausalModel:
    """A graph with a conditional probability table for every node.

    ``tables[node]`` maps each assignment of ``sorted(parents)`` to a tuple of
    probabilities over the node's values.
    """

    graph: Gdag
    cardinalities: Mapping
    tables: Mapping

    def __post_init__(self):
        g = self.graph
        cards = {n: int(self.cardinalities[n]) for n in g.nodes} if set(self.cardinalities) >= set(g.nodes) else None
        if cards is None:
            raise InvalidTable("every node needs a cardinality")
        tables = {}
        for n in g.nodes:
            if n not in self.tables:
                raise InvalidTable(f"no table for node {n}")
            pars = sorted(g.parents[n])
            rows = {}
            for key in product(*(range(cards[q]) for q in pars)):
                try:
                    row = tuple(Fraction(v) for v in self.tables[n][key])
                except KeyError:
                    raise InvalidTable(f"table for {n} lacks parent assignment {key}") from None
                if len(row) != cards[n]:
                    raise InvalidTable(f"row {key} of {n} has {len(row)} entries, expected {cards[n]}")
                if any(v < 0 for v in row) or sum(row) != 1:
                    raise InvalidTable(f"row {key} of {n} is not a probability vector")
                rows[key] = row
            if len(self.tables[n]) != len(rows):
                raise InvalidTable(f"table for {n} has rows for unknown parent assignments")
            tables[n] = MappingProxyType(rows)
        object.__setattr__(self, "cardinalities", MappingProxyType(cards))
        object.__setattr__(self, "tables", MappingProxyType(tables))


def simulate_model(m: CausalModel) -> DiscreteDistribution:
    """Exact joint distribution: product of the tables in topological order."""
    g = m.graph
    order = g.topological_order
    pos = {n: i for i, n in enumerate(order)}
    pars = {n: [pos[q] for q in sorted(g.parents[n])] for n in order}
    # depth-first expansion, pruning zero-probability prefixes
    table = {}

    def expand(i, prefix, weight):
        if i == len(order):
            table[tuple(prefix)] = weight
            return
        n = order[i]
        row = m.tables[n][tuple(prefix[j] for j in pars[n])]
        for v, pv in enumerate(row):
            if pv:
                prefix.append(v)
                expand(i + 1, prefix, weight * pv)
                prefix.pop()

    expand(0, [], Fraction(1))
    return DiscreteDistribution(tuple((n, m.cardinalities[n]) for n in order), table)


def observed_marginal(m: CausalModel) -> DiscreteDistribution:
    return simulate_model(m).marginal(m.graph.observed)


def _random_row(rng: random.Random, card: int, denominator: int) -> tuple:
    if card == 1:
        return (Fraction(1),)
    if denominator < card:
        raise ValueError("denominator must be at least the cardinality")
    cuts = sorted(rng.sample(range(1, denominator), card - 1))
    bounds = [0] + cuts + [denominator]
    return tuple(Fraction(b - a, denominator) for a, b in zip(bounds, bounds[1:]))


def random_model(
    g: Gdag,
    cardinalities: Union[int, Mapping[str, int]] = 2,
    seed: Optional[int] = 0,
    denominator: int = 64,
) -> CausalModel:
    """Reproducible random model with strictly positive rational table entries."""
    if isinstance(cardinalities, int):
        cards = dict.fromkeys(g.nodes, cardinalities)
    else:
        cards = {n: cardinalities.get(n, 2) for n in g.nodes}
    rng = random.Random(seed)
    tables = {}
    for n in g.nodes:
        pars = sorted(g.parents[n])
        tables[n] = {
            key: _random_row(rng, cards[n], denominator)
            for key in product(*(range(cards[q]) for q in pars))
        }
    return CausalModel(g, cards, tables)
