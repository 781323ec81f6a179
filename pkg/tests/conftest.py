import os
import sys

import pytest

# Tests import the core modules the same way the scripts do
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.fixtures import load_fixture
from core.graph import Term
from core.reasoner import materialized
from core.series import build_series_view
from core.turtle import parse_turtle

PREFIXES = """\
@prefix rss: <http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#> .
@prefix dul: <http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#> .
@prefix d0: <http://www.ontologydesignpatterns.org/ont/d0.owl#> .
@prefix tp: <http://www.ontologydesignpatterns.org/cp/owl/timeperiod.owl#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
@prefix ex: <http://example.org/> .
"""

WOP = "http://example.org/wop/"


def ex(name):
    return Term.iri("http://example.org/" + name)


def wop(name):
    return Term.iri(WOP + name)


@pytest.fixture
def ttl():
    """Parse a Turtle snippet written with the usual prefixes (ex: is http://example.org/)."""
    return lambda body: parse_turtle(PREFIXES + body)


@pytest.fixture(scope="session")
def wop_asserted():
    return load_fixture("wop")


@pytest.fixture(scope="session")
def wop_graph(wop_asserted):
    return materialized(wop_asserted)


@pytest.fixture(scope="session")
def wop_view(wop_graph):
    return build_series_view(wop_graph, wop("wop-series"))
