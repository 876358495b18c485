import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causalgap import catalog
from causalgap.ci import CiRelation, ci_consistent, ci_holds_in_distribution, observed_ci_relations
from causalgap.dist import CausalModel, conditional_mutual_information, observed_marginal, random_model, section_compatible
from causalgap.errors import InvalidCertificate, NodeMismatch
from causalgap.graph import Gdag, complete_dag, d_separated, descendants
from causalgap.interesting import (
    E_SEPARATION,
    ESEP_CONSTRAINT,
    FINE_GRAINED,
    INCONCLUSIVE,
    INTERESTING,
    SKELETON_METHOD,
    ClassifyOptions,
    EsepCertificate,
    certificate_problems,
    classify,
    complete_dag_comparator,
    esep_search,
    esep_witness,
    iter_esep_certificates,
    skeleton_method,
    witness_admissible,
)

from .strategies import dags


def g_of(name):
    return catalog.get(name).graph


def test_skeleton_method_examples():
    g21 = g_of("hlp-21")
    assert skeleton_method(g21, complete_dag(g21.observed))
    tri = g_of("triangle")
    out = skeleton_method(tri, complete_dag(tri.observed))
    assert not out and "skeletons are equal" in out.reason
    assert not skeleton_method(g21, g21)
    with pytest.raises(NodeMismatch):
        skeleton_method(g21, complete_dag("AB"))


def test_skeleton_method_rejects_ci_mismatch():
    bell = g_of("bell")
    out = skeleton_method(bell, complete_dag(bell.observed))
    assert not out and "CI" in out.reason


def test_complete_dag_comparator():
    g21 = g_of("hlp-21")
    assert complete_dag_comparator(g21) == complete_dag(g21.observed)
    assert complete_dag_comparator(g_of("bell")) is None
    assert complete_dag_comparator(Gdag(observed=frozenset("A"))) == Gdag(observed=frozenset("A"))


def test_esep_search_examples():
    g17 = g_of("hlp-17")
    assert esep_search(g17) == EsepCertificate({"F"}, {"D"}, {"C"}, {"E"})
    assert certificate_problems(g17, EsepCertificate({"F"}, {"D"}, set(), {"E"})) == []
    rejected = certificate_problems(g17, EsepCertificate({"F"}, {"D"}, {"E"}, {"C"}))
    assert any("descended from W" in p for p in rejected)
    assert all(c.w != {"C"} or not c.z & {"E"} for c in iter_esep_certificates(g17))
    assert esep_search(g_of("bell")) is None


def test_esep_witness_for_hlp17():
    g17 = g_of("hlp-17")
    w = esep_witness(g17, esep_search(g17))
    p = w.distribution
    assert dict(p.mass) == {(0, 0, 0, 0): Fraction(1, 2), (0, 1, 0, 1): Fraction(1, 2)}  # C, D, E, F
    assert ci_consistent(p, g17) == (True, None)
    assert w.violated_constraint == ESEP_CONSTRAINT
    assert w.lhs == pytest.approx(1.0) and w.lhs > w.rhs + 1e-9
    ternary = esep_witness(g17, esep_search(g17), 3)
    assert ternary.lhs == pytest.approx(math.log2(3))


def test_esep_witness_on_two_nodes():
    g = Gdag(observed=frozenset("XYW"))
    cert = EsepCertificate({"X"}, {"Y"}, set(), {"W"})
    with pytest.raises(InvalidCertificate):
        esep_witness(g, cert)
    h = Gdag.from_edges([("X", "Y")])
    p = esep_witness(h, EsepCertificate({"X"}, {"Y"}, set(), set())).distribution
    assert dict(p.mass) == {(0, 0): Fraction(1, 2), (1, 1): Fraction(1, 2)}


def test_witness_admissibility():
    g17 = g_of("hlp-17")
    assert witness_admissible(g17, {"F", "D"})
    assert not witness_admissible(g17, {"C", "D"})


def test_classify_catalog_expectations():
    for e in catalog.entries():
        if e.expected is None:
            continue
        v = classify(e.graph)
        want = e.expected
        assert (v.status if want == INCONCLUSIVE else v.method) == want, e.name


def test_classify_examples():
    v = classify(g_of("hlp-17"))
    assert v.status == INTERESTING and v.method == E_SEPARATION
    assert v.summary() == "Interesting (e-separation: X={F} Y={D} Z={C} W={E})"
    bell = classify(g_of("bell"))
    assert bell.status == INCONCLUSIVE and bell.method is None and bell.witness is None
    for name in ("hlp-15", "hlp-16", "hlp-20"):
        v = classify(g_of(name))
        assert v.method == FINE_GRAINED and v.witness.lhs == pytest.approx(2.0)
    assert classify(g_of("hlp-21")).method == SKELETON_METHOD


def test_classify_without_catalog_lookup():
    v = classify(g_of("hlp-15"), ClassifyOptions(use_catalog=False))
    assert v.status == INCONCLUSIVE
    v = classify(g_of("hlp-15"), ClassifyOptions(use_catalog=False, fine_grained=(("eq1", "tilde_p"),)))
    assert v.method == FINE_GRAINED


def test_classify_with_user_comparator():
    g21 = g_of("hlp-21")
    v = classify(g21, ClassifyOptions(comparator=complete_dag(g21.observed)))
    assert v.method == SKELETON_METHOD


def test_classify_is_deterministic():
    for name in catalog.names():
        a, b = classify(g_of(name)), classify(g_of(name))
        assert a.detail == b.detail
        assert json.dumps(a.to_dict(), sort_keys=True) == json.dumps(b.to_dict(), sort_keys=True)


@pytest.mark.parametrize("name", catalog.names())
def test_every_witness_is_valid(name):
    g = g_of(name)
    v = classify(g)
    if v.witness is not None:
        mss = None if len(g.observed) <= 6 else 3
        assert ci_consistent(v.witness.distribution, g, mss) == (True, None)
        assert v.witness.lhs > v.witness.rhs + 1e-9


@pytest.mark.parametrize("name", [n for n in catalog.names() if len(catalog.get(n).graph.observed) <= 6])
def test_certificates_never_cover_implied_relations(name):
    g = g_of(name)
    for cert in iter_esep_certificates(g):
        assert certificate_problems(g, cert) == []
        w = sorted(cert.w)
        for k in range(1 << len(w)):
            s = {v for i, v in enumerate(w) if k >> i & 1}
            assert not d_separated(g, cert.x, cert.y, cert.z | s)
        esep_witness(g, cert)


@settings(max_examples=60, deadline=None)
@given(dags(min_nodes=2, max_nodes=5, latent=True))
def test_search_results_yield_valid_witnesses(g):
    cert = esep_search(g)
    if cert is not None:
        assert not cert.z & descendants(g, cert.w)
        w = esep_witness(g, cert)
        assert ci_consistent(w.distribution, g) == (True, None)


def _cut_w(m: CausalModel, w: str, value: int) -> CausalModel:
    """Children of ``w`` read the constant ``value`` instead of ``w``."""
    g = m.graph
    tables = {}
    for n in g.nodes:
        pars = sorted(g.parents[n])
        if w not in pars:
            tables[n] = dict(m.tables[n])
            continue
        i = pars.index(w)
        tables[n] = {k: m.tables[n][k[:i] + (value,) + k[i + 1:]] for k in m.tables[n]}
    return CausalModel(g, m.cardinalities, tables)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([0, 1]))
def test_section_compatible_separated_distribution_exists(seed, value):
    g17 = g_of("hlp-17")
    cert = esep_search(g17)
    (w,) = cert.w
    m = random_model(g17, 2, seed, denominator=8)
    p = observed_marginal(m)
    q = observed_marginal(_cut_w(m, w, value))
    assert section_compatible(p, q, cert.w, (value,))
    assert ci_holds_in_distribution(q, CiRelation(cert.x, cert.y, cert.z))
    assert conditional_mutual_information(q, cert.x, cert.y, cert.z) == pytest.approx(0, abs=1e-12)
