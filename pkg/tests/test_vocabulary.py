import os
import re

import pytest

from core.errors import UnknownPrefixError
from core.vocabulary import NAMESPACES, RDF, RSS, all_terms, resolve_curie

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def test_rss_namespace_matches_published_iri():
    assert resolve_curie("rss:hasMemberSituation").value == (
        "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#hasMemberSituation")
    assert resolve_curie("rss:hasMemberSituation") == RSS.hasMemberSituation


def test_rdf_type():
    assert resolve_curie("rdf:type").value == "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
    assert resolve_curie("rdf:type") == RDF.type


@pytest.mark.parametrize("text", ["zzz:x", "no-colon", ":x"])
def test_unknown_prefix(text):
    with pytest.raises(UnknownPrefixError):
        resolve_curie(text)


def test_every_constant_is_unique():
    values = [term.value for _, term in all_terms()]
    assert len(values) == len(set(values))


def test_every_constant_lives_in_a_known_namespace():
    for name, term in all_terms():
        assert any(term.value.startswith(ns) for ns in NAMESPACES.values()), name


@pytest.mark.parametrize("module", ["reasoner.py", "validator.py", "series.py", "competency.py", "temporal.py"])
def test_modules_use_constants_not_raw_iris(module):
    with open(os.path.join(ROOT, "core", module), encoding="utf-8") as f:
        source = f.read()
    assert not re.search(r"[\"']https?://", source)
