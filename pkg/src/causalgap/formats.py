"""Text and structured serialisations for graphs, distributions, models and inequalities.

Graph text, one directive per line, ``#`` starts a comment::

    node A observed
    node U latent
    edge A X

Distribution text (omitted rows are zero, values are 0-based)::

    var A 2
    var D 2
    p 0 0 1/4

Model text is a graph section followed by one ``cpt`` row per parent
assignment, parents taken in sorted label order::

    cpt X | 0 1 : 1/3 2/3
    cpt A | : 1/2 1/2

Inequality files hold ``inequality ... end`` records; see
:func:`parse_inequalities`.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import product

from .errors import CausalGapError, ParseError
from .graph import Gdag


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _rational(tok: str, lineno: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {tok!r}", lineno) from None


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None


# graphs


class _GraphBuilder:
    def __init__(self):
        self.nodes: dict = {}
        self.edges: list = []
        self.edge_lines: dict = {}

    def directive(self, lineno, toks) -> bool:
        kind = toks[0]
        if kind == "node":
            if len(toks) != 3 or toks[2] not in ("observed", "latent"):
                raise ParseError("expected 'node <label> observed|latent'", lineno)
            if toks[1] in self.nodes:
                raise ParseError(f"duplicate node label {toks[1]!r}", lineno)
            self.nodes[toks[1]] = toks[2] == "observed"
            return True
        if kind == "edge":
            if len(toks) != 3:
                raise ParseError("expected 'edge <tail> <head>'", lineno)
            edge = (toks[1], toks[2])
            if edge in self.edge_lines:
                raise ParseError(f"duplicate edge {toks[1]} -> {toks[2]}", lineno)
            self.edge_lines[edge] = lineno
            self.edges.append(edge)
            return True
        return False

    def build(self) -> Gdag:
        for edge, lineno in self.edge_lines.items():
            for n in edge:
                if n not in self.nodes:
                    raise ParseError(f"edge mentions undeclared node {n!r}", lineno)
        try:
            return Gdag.from_nodes(self.nodes, self.edges)
        except CausalGapError as exc:
            raise ParseError(str(exc)) from None


def parse_graph(text: str) -> Gdag:
    """Parse the line-oriented graph format, or the JSON object format."""
    if text.lstrip().startswith("{"):
        try:
            return graph_from_dict(json.loads(text))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ParseError(f"bad JSON graph: {exc}") from None
    b = _GraphBuilder()
    for lineno, toks in _lines(text):
        if not b.directive(lineno, toks):
            raise ParseError(f"unknown directive {toks[0]!r}", lineno)
    return b.build()


def format_graph(g: Gdag) -> str:
    out = [f"node {n} {'observed' if n in g.observed else 'latent'}" for n in g.nodes]
    out += [f"edge {a} {b}" for a, b in sorted(g.edges)]
    return "\n".join(out) + "\n"


def graph_to_dict(g: Gdag) -> dict:
    return {
        "nodes": [{"label": n, "observed": n in g.observed} for n in g.nodes],
        "edges": [list(e) for e in sorted(g.edges)],
    }


def graph_from_dict(d: dict) -> Gdag:
    return Gdag.from_nodes(
        {n["label"]: bool(n["observed"]) for n in d["nodes"]},
        [tuple(e) for e in d.get("edges", [])],
    )


# distributions


def parse_distribution(text: str):
    from .dist import DiscreteDistribution

    variables = []
    table = {}
    for lineno, toks in _lines(text):
        if toks[0] == "var":
            if table:
                raise ParseError("'var' lines must precede 'p' rows", lineno)
            if len(toks) != 3:
                raise ParseError("expected 'var <name> <cardinality>'", lineno)
            variables.append((toks[1], _int(toks[2], lineno)))
        elif toks[0] == "p":
            if len(toks) != len(variables) + 2:
                raise ParseError(f"expected {len(variables)} values and a mass", lineno)
            key = tuple(_int(t, lineno) for t in toks[1:-1])
            for (name, card), v in zip(variables, key):
                if not 0 <= v < card:
                    raise ParseError(f"value {v} out of range for {name}", lineno)
            if key in table:
                raise ParseError(f"duplicate row {key}", lineno)
            table[key] = _rational(toks[-1], lineno)
        else:
            raise ParseError(f"unknown directive {toks[0]!r}", lineno)
    try:
        return DiscreteDistribution(tuple(variables), table)
    except CausalGapError as exc:
        raise ParseError(str(exc)) from None


def format_distribution(p) -> str:
    out = [f"var {n} {c}" for n, c in p.variables]
    out += [
        "p " + " ".join(map(str, a)) + f" {m.numerator}/{m.denominator}"
        for a, m in sorted(p.mass.items())
    ]
    return "\n".join(out) + "\n"


def distribution_to_dict(p) -> dict:
    return {
        "variables": [{"name": n, "cardinality": c} for n, c in p.variables],
        "mass": [[list(a), str(m)] for a, m in sorted(p.mass.items())],
    }


# causal models


def parse_model(text: str):
    from .dist import CausalModel

    b = _GraphBuilder()
    rows: dict = {}
    for lineno, toks in _lines(text):
        if b.directive(lineno, toks):
            continue
        if toks[0] != "cpt":
            raise ParseError(f"unknown directive {toks[0]!r}", lineno)
        if "|" not in toks or ":" not in toks or toks.index("|") != 2 or toks.index(":") < 3:
            raise ParseError("expected 'cpt <node> | <parent values> : <rationals>'", lineno)
        colon = toks.index(":")
        key = tuple(_int(t, lineno) for t in toks[3:colon])
        probs = tuple(_rational(t, lineno) for t in toks[colon + 1:])
        if not probs:
            raise ParseError("empty probability list", lineno)
        node_rows = rows.setdefault(toks[1], {})
        if key in node_rows:
            raise ParseError(f"duplicate cpt row for {toks[1]} at {key}", lineno)
        node_rows[key] = (probs, lineno)
    g = b.build()
    cards = {}
    for n in g.nodes:
        if n not in rows:
            raise ParseError(f"no cpt rows for node {n!r}")
        lengths = {len(p) for p, _ in rows[n].values()}
        if len(lengths) != 1:
            raise ParseError(f"cpt rows of {n!r} have differing lengths")
        cards[n] = lengths.pop()
    for n in rows:
        if n not in cards:
            _, lineno = next(iter(rows[n].values()))
            raise ParseError(f"cpt for undeclared node {n!r}", lineno)
    tables = {n: {k: p for k, (p, _) in rows[n].items()} for n in g.nodes}
    try:
        return CausalModel(g, cards, tables)
    except CausalGapError as exc:
        raise ParseError(str(exc)) from None


def format_model(m) -> str:
    out = [format_graph(m.graph).rstrip("\n")]
    for n in m.graph.nodes:
        pars = sorted(m.graph.parents[n])
        for key in product(*(range(m.cardinalities[q]) for q in pars)):
            row = " ".join(f"{v.numerator}/{v.denominator}" for v in m.tables[n][key])
            head = " ".join(["cpt", n, "|", *map(str, key), ":"])
            out.append(f"{head} {row}")
    return "\n".join(out) + "\n"


# fine-grained inequalities


def _set(tok: str) -> frozenset:
    return frozenset() if tok == "-" else frozenset(tok.split(","))


def _fmt_set(s) -> str:
    return ",".join(sorted(s)) or "-"


def parse_inequalities(text: str) -> list:
    """Parse inequality records.

    ::

        inequality eq1
        exogenous A 0 1
        term + E D - 0      # sign, X-set, Y-set, Z-set, section value
        rhs D
        end
    """
    from .finegrained import FineGrainedInequality, Term

    out = []
    cur = None
    for lineno, toks in _lines(text):
        kind = toks[0]
        if kind == "inequality":
            if cur is not None:
                raise ParseError("nested 'inequality' record", lineno)
            if len(toks) != 2:
                raise ParseError("expected 'inequality <name>'", lineno)
            cur = {"name": toks[1], "terms": [], "line": lineno}
        elif cur is None:
            raise ParseError(f"{kind!r} outside an inequality record", lineno)
        elif kind == "exogenous":
            if len(toks) != 4:
                raise ParseError("expected 'exogenous <var> <value0> <value1>'", lineno)
            cur["exogenous"] = toks[1]
            cur["sections"] = (_int(toks[2], lineno), _int(toks[3], lineno))
        elif kind == "term":
            if len(toks) != 6 or toks[1] not in "+-":
                raise ParseError("expected 'term +|- <X> <Y> <Z|-> <section>'", lineno)
            cur["terms"].append(
                Term(1 if toks[1] == "+" else -1, _set(toks[2]), _set(toks[3]), _set(toks[4]),
                     _int(toks[5], lineno))
            )
        elif kind == "rhs":
            if len(toks) != 2:
                raise ParseError("expected 'rhs <set>'", lineno)
            cur["rhs"] = _set(toks[1])
        elif kind == "end":
            missing = {"exogenous", "rhs"} - set(cur)
            if missing or not cur["terms"]:
                raise ParseError(f"incomplete inequality {cur['name']!r}", lineno)
            try:
                out.append(
                    FineGrainedInequality(
                        cur["name"], cur["exogenous"], cur["sections"], tuple(cur["terms"]), cur["rhs"]
                    )
                )
            except (CausalGapError, ValueError) as exc:
                raise ParseError(str(exc), lineno) from None
            cur = None
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)
    if cur is not None:
        raise ParseError(f"inequality {cur['name']!r} is missing 'end'", cur["line"])
    return out


def format_inequality(ineq) -> str:
    out = [f"inequality {ineq.name}", f"exogenous {ineq.exogenous} {ineq.sections[0]} {ineq.sections[1]}"]
    for t in ineq.terms:
        sign = "+" if t.sign > 0 else "-"
        out.append(f"term {sign} {_fmt_set(t.x)} {_fmt_set(t.y)} {_fmt_set(t.z)} {t.section}")
    out += [f"rhs {_fmt_set(ineq.rhs)}", "end"]
    return "\n".join(out) + "\n"
