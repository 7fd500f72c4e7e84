"""RDF* toolkit: Turtle* parsing, reification unfolding, SPARQL* querying."""

from ._rdfstar import Graph, QueryError, parse, query, query_json

__all__ = ["Graph", "QueryError", "parse", "query", "query_json"]
__version__ = "0.1.0"
