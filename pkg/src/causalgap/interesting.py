"""Sufficient criteria for a GDAG to separate classical from post-classical models.

Three routes, tried in order by :func:`classify`:

* the skeleton method: a comparator graph with the same observed CI relations,
  no gap of its own, and a different skeleton;
* e-separation: a deletion that creates a CI relation the graph itself never
  implies, certified by an explicit perfectly-correlated witness;
* a registered fine-grained inequality together with a witness distribution
  that satisfies the graph's CI relations but violates the inequality.

Nothing here ever concludes that a graph is *un*interesting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from . import _bits
from .ci import ci_consistent, ci_excluded_for_all_subsets, observed_ci_relations
from .dist import INEQUALITY_TOL, DiscreteDistribution, conditional_mutual_information, uniform_over
from .errors import InvalidCertificate, NodeMismatch
from .finegrained import INEQUALITIES, WITNESSES
from .formats import distribution_to_dict
from .graph import Gdag, _as_set, complete_dag, d_separated, descendants, e_separated, skeleton

INTERESTING = "Interesting"
INCONCLUSIVE = "Inconclusive"
SKELETON_METHOD = "SkeletonMethod"
E_SEPARATION = "ESeparation"
FINE_GRAINED = "FineGrainedInequality"

ESEP_CONSTRAINT = "e-separation constraint"


def _fmt(s) -> str:
    return "{" + ",".join(sorted(s)) + "}"


@dataclass(frozen=True)
class Witness:
    distribution: DiscreteDistribution
    violated_constraint: str
    lhs: float
    rhs: float

    def to_dict(self) -> dict:
        return {
            "violated_constraint": self.violated_constraint,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "distribution": distribution_to_dict(self.distribution),
        }


@dataclass(frozen=True)
class EsepCertificate:
    x: frozenset
    y: frozenset
    z: frozenset
    w: frozenset

    def __post_init__(self):
        for name in "xyzw":
            object.__setattr__(self, name, _as_set(getattr(self, name)))

    def __str__(self):
        return f"X={_fmt(self.x)} Y={_fmt(self.y)} Z={_fmt(self.z)} W={_fmt(self.w)}"

    def to_dict(self) -> dict:
        return {k: sorted(getattr(self, k)) for k in "xyzw"}


def certificate_problems(g: Gdag, cert: EsepCertificate) -> list:
    """Premises of the e-separation method that ``cert`` fails on ``g``; empty if valid."""
    problems = []
    sets = (cert.x, cert.y, cert.z, cert.w)
    if not cert.x or not cert.y or not cert.w:
        problems.append("x, y and w must be non-empty")
    if any(a & b for a, b in combinations(sets, 2)):
        return problems + ["sets are not pairwise disjoint"]
    if not frozenset().union(*sets) <= g.observed:
        return problems + ["all sets must consist of observed nodes"]
    if problems:
        return problems
    clash = cert.z & descendants(g, cert.w)
    if clash:
        problems.append(f"{_fmt(clash)} descended from W")
    if not e_separated(g, cert.x, cert.y, cert.z, cert.w):
        problems.append("X and Y are not e-separated by Z after deleting W")
    if not ci_excluded_for_all_subsets(g, cert.x, cert.y, cert.z, cert.w):
        problems.append("the graph implies (X _||_ Y | Z S) for some S within W")
    if not witness_admissible(g, cert.x | cert.y):
        problems.append("the graph separates two nodes of X Y given fixed others, so no correlated witness exists")
    return problems


def witness_admissible(g: Gdag, xy) -> bool:
    """Can ``xy`` be perfectly correlated with every other observed node fixed?

    That distribution breaks exactly the CI relations whose two sides both
    meet ``xy`` while the conditioning set avoids it, so it respects the
    graph iff no pair inside ``xy`` is d-separated by a set of other observed
    nodes.
    """
    xy = sorted(_as_set(xy))
    rest = sorted(g.observed - set(xy))
    return not any(
        d_separated(g, u, v, z) for u, v in combinations(xy, 2) for z in _subsets_desc(rest)
    )


@dataclass(frozen=True)
class Verdict:
    status: str
    method: Optional[str]
    witness: Optional[Witness] = None
    detail: tuple = ()
    certificate: Optional[EsepCertificate] = None
    comparator: Optional[Gdag] = None

    def summary(self) -> str:
        if self.status != INTERESTING:
            return self.status
        if self.method == E_SEPARATION:
            return f"{INTERESTING} (e-separation: {self.certificate})"
        if self.method == SKELETON_METHOD:
            return f"{INTERESTING} (skeleton method)"
        return f"{INTERESTING} (fine-grained inequality: {self.detail[-1]})"

    def to_dict(self) -> dict:
        from .formats import graph_to_dict

        return {
            "status": self.status,
            "method": self.method,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "comparator": graph_to_dict(self.comparator) if self.comparator else None,
            "witness": self.witness.to_dict() if self.witness else None,
            "trace": list(self.detail),
        }


@dataclass(frozen=True)
class MethodOutcome:
    success: bool
    reason: str

    def __bool__(self):
        return self.success


def skeleton_method(g: Gdag, k: Gdag, k_is_saturated: bool = True, max_set_size=None) -> MethodOutcome:
    """Compare ``g`` with a comparator ``k`` that the caller asserts has no classical gap.

    Only the checkable premises are verified: equal observed CI sets and
    different skeletons.
    """
    if g.observed != k.observed:
        raise NodeMismatch(f"observed nodes differ: {sorted(g.observed)} vs {sorted(k.observed)}")
    if not k_is_saturated:
        return MethodOutcome(False, "comparator not asserted to have classical = independence-respecting sets")
    ci_g = observed_ci_relations(g, max_set_size)
    ci_k = observed_ci_relations(k, max_set_size)
    if ci_g != ci_k:
        extra = sorted(ci_g.relations ^ ci_k.relations)
        return MethodOutcome(False, f"observed CI relations differ (e.g. {extra[0]})")
    sg, sk = skeleton(g), skeleton(k)
    if sg == sk:
        return MethodOutcome(False, f"skeletons are equal ({sg})")
    return MethodOutcome(True, f"same observed CI relations, skeletons differ ({sg} vs {sk})")


def complete_dag_comparator(g: Gdag, max_set_size=None) -> Optional[Gdag]:
    if observed_ci_relations(g, max_set_size):
        return None
    return complete_dag(g.observed)


def _subsets_desc(items: list) -> list:
    return [frozenset(c) for k in range(len(items), -1, -1) for c in combinations(items, k)]


def _esep_candidates(observed: list, max_xy: Optional[int], max_w: Optional[int]):
    """(x, y, w) triples, y < x, ordered by total size then lexicographically."""
    n = len(observed)
    out = []
    for labels in _assignments(n):
        x = tuple(v for v, l in zip(observed, labels) if l == 1)
        y = tuple(v for v, l in zip(observed, labels) if l == 2)
        w = tuple(v for v, l in zip(observed, labels) if l == 3)
        if not x or not y or not w or not y < x:
            continue
        if max_xy is not None and max(len(x), len(y)) > max_xy:
            continue
        if max_w is not None and len(w) > max_w:
            continue
        out.append((len(x) + len(y) + len(w), x, y, w))
    out.sort()
    return out


def _assignments(n):
    from itertools import product

    return product(range(4), repeat=n)


def iter_esep_certificates(g: Gdag, max_xy: Optional[int] = None, max_w: Optional[int] = None):
    """Every valid certificate in search order.

    Triples (x, y, w) go by |x|+|y|+|w| and then lexicographically; for each,
    conditioning sets z are tried from largest to smallest.
    """
    observed = sorted(g.observed)
    order = sorted(g.nodes)
    pos = {v: i for i, v in enumerate(order)}
    parents = tuple(sum(1 << pos[p] for p in g.parents[v]) for v in order)

    def mask(s):
        return sum(1 << pos[v] for v in s)

    cache = {}

    def deleted(wm):
        if wm not in cache:
            keep = ~wm
            par = tuple(p & keep if not (1 << i) & wm else 0 for i, p in enumerate(parents))
            cache[wm] = (par, _bits.children_of(par))
        return cache[wm]

    full = (parents, _bits.children_of(parents))
    admissible = {}

    def correlatable(xy):
        # see witness_admissible; cached per x|y since many (x, y, w) share it
        if xy not in admissible:
            rest = [v for v in observed if v not in xy]
            admissible[xy] = not any(
                _bits.d_separated(*full, 1 << pos[u], 1 << pos[v], mask(z))
                for u, v in combinations(xy, 2)
                for z in _subsets_desc(rest)
            )
        return admissible[xy]

    for _, x, y, w in _esep_candidates(observed, max_xy, max_w):
        if not correlatable(tuple(sorted(x + y))):
            continue
        xm, ym, wm = mask(x), mask(y), mask(w)
        desc = descendants(g, w)
        free = [v for v in observed if v not in x and v not in y and v not in w and v not in desc]
        dpar, dch = deleted(wm)
        w_subsets = [mask(s) for s in _subsets_desc(list(w))]
        for z in _subsets_desc(free):
            zm = mask(z)
            if not _bits.d_separated(dpar, dch, xm, ym, zm):
                continue
            if any(_bits.d_separated(*full, xm, ym, zm | sm) for sm in w_subsets):
                continue
            yield EsepCertificate(x, y, z, w)


def esep_search(g: Gdag, max_xy: Optional[int] = None, max_w: Optional[int] = None) -> Optional[EsepCertificate]:
    """First e-separation certificate in canonical order, or ``None``."""
    return next(iter_esep_certificates(g, max_xy, max_w), None)


def esep_witness(g: Gdag, cert: EsepCertificate, cardinality: int = 2) -> Witness:
    """X and Y perfectly correlated and uniform, every other observed node fixed at 0."""
    if cardinality < 2:
        raise ValueError("the correlated variables need at least two values")
    names = sorted(g.observed)
    xy = cert.x | cert.y
    if not xy <= g.observed:
        raise InvalidCertificate("certificate mentions nodes that are not observed")
    outcomes = [tuple(v if n in xy else 0 for n in names) for v in range(cardinality)]
    p = uniform_over(tuple((n, cardinality) for n in names), outcomes)
    ok, bad = ci_consistent(p, g, _max_set_size(g))
    if not ok:
        raise InvalidCertificate(f"witness violates the graph's CI relation ({bad})")
    lhs = conditional_mutual_information(p, cert.x, cert.y, cert.z)
    if not lhs > INEQUALITY_TOL:
        raise InvalidCertificate("witness does not correlate X and Y")
    return Witness(p, ESEP_CONSTRAINT, lhs, 0.0)


def _max_set_size(g: Gdag):
    from .ci import UNBOUNDED_LIMIT

    return None if len(g.observed) <= UNBOUNDED_LIMIT else len(g.observed)


def fine_grained_witness(g: Gdag, inequality: str, witness: str) -> Optional[Witness]:
    """Check a registered witness against ``g``; ``None`` if it is not a valid one."""
    ineq = INEQUALITIES[inequality]
    p = WITNESSES[witness]()
    if set(p.names) != set(g.observed):
        return None
    ok, _ = ci_consistent(p, g, _max_set_size(g))
    if not ok:
        return None
    lhs, rhs = ineq.evaluate(p, g)
    if not lhs > rhs + INEQUALITY_TOL:
        return None
    return Witness(p, f"fine-grained inequality {ineq.name}: {ineq}", lhs, rhs)


@dataclass(frozen=True)
class ClassifyOptions:
    comparator: Optional[Gdag] = None
    comparator_saturated: bool = True
    max_xy: Optional[int] = None
    max_w: Optional[int] = None
    witness_cardinality: int = 2
    use_catalog: bool = True
    fine_grained: tuple = field(default=())  # extra (inequality, witness) pairs to try


def classify(g: Gdag, options: ClassifyOptions = ClassifyOptions()) -> Verdict:
    from . import catalog

    trace = []
    mss = _max_set_size(g)

    k = options.comparator
    if k is None:
        k = complete_dag_comparator(g, mss)
        if k is None:
            trace.append("skeleton method: no comparator (observed CI set is non-empty)")
        else:
            trace.append("skeleton method: observed CI set is empty, comparator = complete DAG")
    if k is not None:
        outcome = skeleton_method(g, k, options.comparator_saturated, mss)
        trace.append(f"skeleton method: {outcome.reason}")
        if outcome:
            return Verdict(INTERESTING, SKELETON_METHOD, None, tuple(trace), comparator=k)

    cert = esep_search(g, options.max_xy, options.max_w)
    if cert is None:
        trace.append("e-separation: no deletion of observed nodes yields a CI relation the graph does not already imply")
    else:
        witness = esep_witness(g, cert, options.witness_cardinality)
        trace.append(f"e-separation: {cert}")
        return Verdict(INTERESTING, E_SEPARATION, witness, tuple(trace), certificate=cert)

    pairs = list(options.fine_grained)
    if options.use_catalog:
        entry = catalog.find(g)
        if entry is not None and entry.fine_grained:
            pairs.append(entry.fine_grained)
    for ineq, wit in pairs:
        witness = fine_grained_witness(g, ineq, wit)
        if witness is None:
            trace.append(f"fine-grained: {wit} is not a violating member of the CI-respecting set for {ineq}")
            continue
        trace.append(f"fine-grained: {wit} gives lhs={witness.lhs:.6f} > rhs={witness.rhs:.6f} for {ineq}")
        return Verdict(INTERESTING, FINE_GRAINED, witness, tuple(trace))
    if not pairs:
        trace.append("fine-grained: no registered inequality for this graph")
    return Verdict(INCONCLUSIVE, None, None, tuple(trace))


def perfectly_correlated_cmi(cardinality: int) -> float:
    return math.log2(cardinality)
