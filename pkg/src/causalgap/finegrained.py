"""Fine-grained entropic inequalities and the two witness distributions.

A fine-grained inequality is a signed sum of conditional mutual informations,
each evaluated on the post-intervention distribution at one value of a
parentless binary variable, bounded by an ordinary entropy.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dist import (
    DiscreteDistribution,
    INEQUALITY_TOL,
    conditional_mutual_information,
    intervene_exogenous,
    shannon_entropy,
    uniform_over,
)
from .errors import UnknownVariable
from .graph import Gdag, _as_set


@dataclass(frozen=True)
class Term:
    sign: int
    x: frozenset
    y: frozenset
    z: frozenset
    section: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("term sign must be +1 or -1")
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, _as_set(getattr(self, name)))

    def __str__(self):
        z = f"|{','.join(sorted(self.z))}" if self.z else ""
        return f"{'+' if self.sign > 0 else '-'}I({','.join(sorted(self.x))}:{','.join(sorted(self.y))}{z}|^{self.section})"


@dataclass(frozen=True)
class FineGrainedInequality:
    """``sum_i sign_i * I(x_i : y_i | z_i ; do(exogenous = section_i)) <= H(rhs)``."""

    name: str
    exogenous: str
    sections: tuple
    terms: tuple
    rhs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "rhs", _as_set(self.rhs))
        object.__setattr__(self, "sections", tuple(self.sections))
        object.__setattr__(self, "terms", tuple(self.terms))
        for t in self.terms:
            if t.section not in self.sections:
                raise ValueError(f"term {t} uses a section outside {self.sections}")
            if self.exogenous in t.x | t.y | t.z:
                raise ValueError("terms cannot mention the fine-grained variable")

    @property
    def variables(self) -> frozenset:
        out = {self.exogenous} | self.rhs
        for t in self.terms:
            out |= t.x | t.y | t.z
        return frozenset(out)

    def evaluate(self, p: DiscreteDistribution, graph: Gdag | None = None) -> tuple:
        """Return ``(lhs, rhs)`` in bits.

        ``graph`` supplies the causal context in which the fine-grained
        variable must be parentless; without one, an edgeless graph over the
        distribution's variables is assumed.
        """
        missing = self.variables - set(p.names)
        if missing:
            raise UnknownVariable(f"distribution lacks {sorted(missing)}")
        if graph is None:
            graph = Gdag(observed=frozenset(p.names))
        post = {s: intervene_exogenous(p, graph, self.exogenous, s) for s in self.sections}
        lhs = sum(
            t.sign * conditional_mutual_information(post[t.section], t.x, t.y, t.z) for t in self.terms
        )
        return lhs, shannon_entropy(p, self.rhs)

    def violated_by(self, p: DiscreteDistribution, graph: Gdag | None = None) -> bool:
        lhs, rhs = self.evaluate(p, graph)
        return lhs > rhs + INEQUALITY_TOL

    def __str__(self):
        return f"{' '.join(map(str, self.terms))} <= H({','.join(sorted(self.rhs))})"


EQ1 = FineGrainedInequality(
    name="eq1",
    exogenous="A",
    sections=(0, 1),
    terms=(
        Term(+1, {"E"}, {"D"}, set(), 0),
        Term(-1, {"F"}, {"D"}, set(), 0),
        Term(+1, {"F"}, {"D"}, set(), 1),
        Term(-1, {"E"}, {"D"}, set(), 1),
    ),
    rhs={"D"},
)

INEQUALITIES = {"eq1": EQ1}


def fine_grained_lhs_eq1(p: DiscreteDistribution, graph: Gdag | None = None) -> tuple:
    """``(lhs, rhs)`` of the four-term inequality over A, D, E, F."""
    return EQ1.evaluate(p, graph)


_ADEF = (("A", 2), ("D", 2), ("E", 2), ("F", 2))


def tilde_p() -> DiscreteDistribution:
    """A, D uniform bits; F = A*D; E = (A xor 1)*D."""
    outcomes = [(a, d, (a ^ 1) * d, a * d) for a in (0, 1) for d in (0, 1)]
    return uniform_over(_ADEF, outcomes)


def tilde_p_prime() -> DiscreteDistribution:
    """As :func:`tilde_p` but E = (A xor 1)*D + 2A takes three values, so E reveals A."""
    outcomes = [(a, d, (a ^ 1) * d + 2 * a, a * d) for a in (0, 1) for d in (0, 1)]
    return uniform_over((("A", 2), ("D", 2), ("E", 3), ("F", 2)), outcomes)


WITNESSES = {"tilde_p": tilde_p, "tilde_p_prime": tilde_p_prime}
