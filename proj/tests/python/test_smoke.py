"""Smoke tests for the Python bindings against the staged build-tree package."""

import os

import pytest

import rdfstar

FIXTURES = os.environ.get("RDFSTAR_FIXTURE_DIR", os.path.join(os.path.dirname(__file__), "..", "fixtures"))


def fixture(name: str) -> str:
    with open(os.path.join(FIXTURES, name), encoding="utf-8") as handle:
        return handle.read()


@pytest.fixture()
def graph():
    return rdfstar.parse(fixture("bob.ttls"))


def test_parse_counts(graph):
    assert len(graph) == 3
    assert graph.embedded_count == 1
    assert graph.max_depth == 1


def test_parse_error_is_value_error():
    with pytest.raises(ValueError) as err:
        rdfstar.parse("<<:a :p :b :q :c .")
    assert "1:" in str(err.value)


def test_serialize_round_trip(graph):
    text = graph.serialize()
    again = rdfstar.parse(text)
    assert again == graph


def test_unfold(graph):
    unfolded = graph.unfold()
    assert len(unfolded) == 8
    assert unfolded.embedded_count == 0
    ntriples = unfolded.to_ntriples()
    assert ntriples.count("\n") == 8
    assert "_:t1" in ntriples


def test_query(graph):
    rows = rdfstar.query(graph, fixture("age_source.rqs"))
    assert rows == [{"age": "23", "src": "<http://example.net/homepage-listing.html>"}]
    bind_rows = rdfstar.query(graph, fixture("age_source_bind.rqs"))
    assert bind_rows == rows


def test_query_embedded_binding(graph):
    rows = rdfstar.query(
        graph,
        """
        PREFIX foaf: <http://xmlns.com/foaf/0.1/>
        PREFIX dct: <http://purl.org/dc/terms/>
        SELECT ?t WHERE { BIND(<<?bob foaf:age ?age>> AS ?t) ?t dct:source ?src . }
        """,
    )
    assert rows == [{"t": "<<<http://example.org/bob> <http://xmlns.com/foaf/0.1/age> 23>>"}]


def test_query_error(graph):
    with pytest.raises(rdfstar.QueryError):
        rdfstar.query(graph, "SELECT ?n WHERE { ?x <urn:a>/<urn:b> ?n }")


def test_query_json(graph):
    text = rdfstar.query_json(graph, fixture("age_source.rqs"))
    assert '"value": "23"' in text
