import pytest
from hypothesis import given, settings

from causalgap import catalog
from causalgap.dist import random_model
from causalgap.errors import ParseError
from causalgap.finegrained import EQ1, tilde_p_prime
from causalgap.formats import (
    format_distribution,
    format_graph,
    format_inequality,
    format_model,
    graph_from_dict,
    graph_to_dict,
    parse_distribution,
    parse_graph,
    parse_inequalities,
    parse_model,
)

from .strategies import dags, distributions


@pytest.mark.parametrize("name", catalog.names())
def test_catalog_graphs_round_trip(name):
    g = catalog.get(name).graph
    assert parse_graph(format_graph(g)) == g
    assert graph_from_dict(graph_to_dict(g)) == g


@settings(max_examples=100, deadline=None)
@given(dags(max_nodes=7, latent=True))
def test_graph_text_round_trip(g):
    assert parse_graph(format_graph(g)) == g


def test_graph_comments_and_json():
    g = parse_graph("# bell\nnode A observed\nnode U latent  # source\nnode X observed\nedge A X\nedge U X\n")
    assert g.latent == {"U"} and ("U", "X") in g.edges
    import json

    assert parse_graph(json.dumps(graph_to_dict(g))) == g


@pytest.mark.parametrize(
    "text, line",
    [
        ("node A observed\nnode A latent\n", 2),
        ("node A observed\nedge A B\n", 2),
        ("node A observed\nedge A A\nedge A A\n", 3),
        ("node A maybe\n", 1),
        ("vertex A\n", 1),
    ],
)
def test_graph_errors_cite_lines(text, line):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert info.value.line == line


def test_graph_cycle_is_parse_error():
    with pytest.raises(ParseError):
        parse_graph("node A observed\nnode B observed\nedge A B\nedge B A\n")


@settings(max_examples=100, deadline=None)
@given(distributions())
def test_distribution_round_trip(p):
    assert parse_distribution(format_distribution(p)) == p


def test_distribution_file_example():
    p = parse_distribution("var A 2\nvar D 2\np 0 0 1/4\np 0 1 1/4\np 1 0 1/2\n")
    assert p.prob({"A": 1}) == 0.5
    assert parse_distribution(format_distribution(tilde_p_prime())) == tilde_p_prime()


@pytest.mark.parametrize(
    "text, line",
    [
        ("var A 2\np 0 1/2\np 2 1/2\n", 3),
        ("var A 2\np 0 1/2\np 0 1/2\n", 3),
        ("var A 2\np 0 x\n", 2),
        ("var A 2\np 0 1\nvar B 2\n", 3),
    ],
)
def test_distribution_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_distribution(text)
    assert info.value.line == line


def test_distribution_must_sum_to_one():
    with pytest.raises(ParseError):
        parse_distribution("var A 2\np 0 1/2\n")


def test_model_round_trip():
    m = random_model(catalog.get("bell").graph, 2, 3, denominator=16)
    assert parse_model(format_model(m)) == m


def test_model_errors():
    with pytest.raises(ParseError):
        parse_model("node A observed\ncpt A | : 1/2 1/4\n")
    with pytest.raises(ParseError) as info:
        parse_model("node A observed\ncpt A | : 1/2 1/2\ncpt B | : 1\n")
    assert info.value.line == 3


def test_inequality_round_trip():
    (ineq,) = parse_inequalities(format_inequality(EQ1))
    assert ineq == EQ1


def test_inequality_errors():
    with pytest.raises(ParseError) as info:
        parse_inequalities("inequality q\nexogenous A 0 1\nterm * E D - 0\nrhs D\nend\n")
    assert info.value.line == 3
    with pytest.raises(ParseError):
        parse_inequalities("inequality q\nexogenous A 0 1\nrhs D\n")
