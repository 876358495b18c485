"""Command-line front end.

Exit codes: 0 when the query was answered (whatever the answer), 1 for
usage errors, 2 for invalid input files or arguments.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import catalog, reproduce
from .ci import observed_ci_relations
from .dist import (
    check_polymatroid,
    conditional_mutual_information,
    entropy_vector,
    shannon_entropy,
    simulate_model,
)
from .errors import CausalGapError
from .finegrained import INEQUALITIES
from .formats import format_distribution, format_graph, parse_distribution, parse_graph, parse_inequalities, parse_model
from .graph import canonical_projection, d_separated, e_separated, skeleton
from .interesting import ClassifyOptions, classify

CATALOG_PREFIX = "@catalog:"


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_graph(ref: str):
    if ref.startswith(CATALOG_PREFIX):
        return catalog.get(ref[len(CATALOG_PREFIX):]).graph
    return parse_graph(_read(ref))


def parse_set(text: str) -> frozenset:
    if text is None or text.strip() == "-":
        return frozenset()
    return frozenset(t.strip() for t in text.split(",") if t.strip())


def _fmt_set(s) -> str:
    return ",".join(sorted(s)) or "-"


def _bool(b: bool) -> str:
    return "true" if b else "false"


def cmd_dsep(args, out):
    g = load_graph(args.graph)
    out.write(_bool(d_separated(g, parse_set(args.x), parse_set(args.y), parse_set(args.z))) + "\n")


def cmd_esep(args, out):
    g = load_graph(args.graph)
    sets = [parse_set(v) for v in (args.x, args.y, args.z, args.w)]
    out.write(_bool(e_separated(g, *sets)) + "\n")


def cmd_skeleton(args, out):
    g = load_graph(args.graph)
    if args.canonical:
        out.write(format_graph(canonical_projection(g)))
    else:
        for a, b in skeleton(g).sorted_edges():
            out.write(f"{a}-{b}\n")


def cmd_ci(args, out):
    g = load_graph(args.graph)
    try:
        rels = observed_ci_relations(g, args.max_set_size)
    except ValueError as exc:
        if isinstance(exc, CausalGapError):
            raise
        raise InputError(str(exc)) from None
    out.write(rels.to_text())


def cmd_classify(args, out):
    g = load_graph(args.graph)
    opts = ClassifyOptions(comparator=load_graph(args.comparator) if args.comparator else None)
    verdict = classify(g, opts)
    if args.json:
        out.write(json.dumps(verdict.to_dict(), indent=2, sort_keys=True) + "\n")
        return
    out.write(verdict.summary() + "\n")
    if args.trace:
        for line in verdict.detail:
            out.write(f"  {line}\n")


def _entropy_query(p, query: str) -> str:
    """``A,B`` gives H(A,B); ``X:Y`` or ``X:Y|Z`` gives the (conditional) mutual information."""
    query = query.strip()
    if ":" in query:
        xy, _, z = query.partition("|")
        x, _, y = xy.partition(":")
        val = conditional_mutual_information(p, parse_set(x), parse_set(y), parse_set(z))
        cond = f"|{_fmt_set(parse_set(z))}" if z.strip() else ""
        return f"I({_fmt_set(parse_set(x))}:{_fmt_set(parse_set(y))}{cond}) = {val:.6f}"
    s = parse_set(query)
    return f"H({_fmt_set(s)}) = {shannon_entropy(p, s):.6f}"


def cmd_entropy(args, out):
    p = parse_distribution(_read(args.dist))
    for q in (q for q in args.sets.split(";") if q.strip()):
        out.write(_entropy_query(p, q) + "\n")


def cmd_check_ineq(args, out):
    p = parse_distribution(_read(args.dist))
    if args.inequality in INEQUALITIES:
        ineqs = [INEQUALITIES[args.inequality]]
    else:
        ineqs = parse_inequalities(_read(args.inequality))
    g = load_graph(args.graph) if args.graph else None
    for ineq in ineqs:
        lhs, rhs = ineq.evaluate(p, g)
        status = "VIOLATED" if ineq.violated_by(p, g) else "satisfied"
        prefix = f"{ineq.name}: " if len(ineqs) > 1 else ""
        out.write(f"{prefix}lhs={lhs:.6f} rhs={rhs:.6f} {status}\n")


def cmd_simulate(args, out):
    m = parse_model(_read(args.model))
    joint = simulate_model(m)
    p = joint.marginal(m.graph.observed)
    out.write("# observed marginal\n")
    out.write(format_distribution(p))
    bad = [str(r) for r in observed_ci_relations(m.graph, _cap(m.graph)) if not p.conditionally_independent(r.x, r.y, r.z)]
    out.write(f"# graph CI relations: {'all hold' if not bad else 'violated: ' + '; '.join(bad)}\n")
    violations = check_polymatroid(entropy_vector(p))
    out.write(f"# polymatroid: {'ok' if not violations else f'{len(violations)} violations'}\n")
    if args.samples:
        rng = random.Random(args.seed)
        outcomes = sorted(p.mass)
        draws = rng.choices(outcomes, weights=[float(p.mass[o]) for o in outcomes], k=args.samples)
        counts = {}
        for d in draws:
            counts[d] = counts.get(d, 0) + 1
        out.write(f"# {args.samples} samples, seed {args.seed}\n")
        for o in outcomes:
            out.write("count " + " ".join(map(str, o)) + f" {counts.get(o, 0)}\n")


def _cap(g):
    return None if len(g.observed) <= 6 else 3


def cmd_reproduce(args, out):
    numbers = None
    if args.criteria:
        try:
            numbers = [int(t) for t in args.criteria.split(",")]
        except ValueError:
            raise UsageError("--criteria takes comma-separated numbers") from None
        unknown = [n for n in numbers if n not in reproduce.CHECKS]
        if unknown:
            raise UsageError(f"unknown criteria {unknown}")
    results = reproduce.run(numbers)
    lines = [r.line() for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} checks passed")
    text = "\n".join(lines) + "\n"
    out.write(text)
    if args.out:
        Path(args.out).write_text(text)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="causalgap", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def graph_cmd(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("graph", help="graph file, '-' for stdin, or @catalog:<name>")
        sp.set_defaults(fn=fn)
        return sp

    sp = graph_cmd("dsep", cmd_dsep, "d-separation query")
    for flag in ("--x", "--y"):
        sp.add_argument(flag, required=True)
    sp.add_argument("--z", default="-")

    sp = graph_cmd("esep", cmd_esep, "e-separation query")
    for flag in ("--x", "--y"):
        sp.add_argument(flag, required=True)
    sp.add_argument("--z", default="-")
    sp.add_argument("--w", default="-")

    sp = graph_cmd("skeleton", cmd_skeleton, "skeleton edges or canonical projection")
    sp.add_argument("--canonical", action="store_true")

    sp = graph_cmd("ci", cmd_ci, "observed CI relations")
    sp.add_argument("--max-set-size", type=int, default=None)

    sp = graph_cmd("classify", cmd_classify, "run the interestingness pipeline")
    sp.add_argument("--comparator", help="comparator graph asserted to have no classical gap")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--trace", action="store_true", help="print the reason from every stage")

    sp = sub.add_parser("entropy", help="entropies and mutual informations of a distribution")
    sp.add_argument("dist")
    sp.add_argument("--sets", required=True, help="';'-separated queries: 'A,B' or 'X:Y|Z'")
    sp.set_defaults(fn=cmd_entropy)

    sp = sub.add_parser("check-ineq", help="evaluate a fine-grained inequality")
    sp.add_argument("dist")
    sp.add_argument("--inequality", required=True, help="built-in name or inequality file")
    sp.add_argument("--graph", help="causal context for the exogenous variable")
    sp.set_defaults(fn=cmd_check_ineq)

    sp = sub.add_parser("simulate", help="exact marginal of a causal model, with CI and polymatroid report")
    sp.add_argument("model")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=0)
    sp.set_defaults(fn=cmd_simulate)

    sp = sub.add_parser("reproduce-paper", help="recompute every headline number")
    sp.add_argument("--out", help="also write the table to this file")
    sp.add_argument("--criteria", help="comma-separated subset of checks to run")
    sp.set_defaults(fn=cmd_reproduce)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return 1
    except SystemExit as exc:  # --help
        return 0 if not exc.code else 1
    try:
        args.fn(args, out)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return 1
    except (InputError, CausalGapError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
