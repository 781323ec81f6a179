import pytest
import rdflib
from rdflib.compare import isomorphic

from conftest import ex
from core.errors import RelativeIRIError, TurtleSyntaxError, UnknownPrefixError
from core.fixtures import FIXTURES
from core.graph import Graph, Term, Triple, merge_graphs
from core.turtle import load_turtle, parse_turtle, serialize_turtle
from core.vocabulary import RDF, XSD

ONE_TRIPLE = "@prefix ex: <http://example.org/> . ex:a ex:b ex:c ."


def test_single_statement():
    g = parse_turtle(ONE_TRIPLE)
    assert set(g) == {Triple(ex("a"), ex("b"), ex("c"))}
    assert g.prefixes == {"ex": "http://example.org/"}


def test_empty_document():
    assert len(parse_turtle("")) == 0
    assert len(parse_turtle("# only a comment\n")) == 0


def test_empty_graph_serializes_to_prefixes_only():
    assert serialize_turtle(Graph()) == ""
    text = serialize_turtle(Graph([], {"ex": "http://example.org/"}))
    assert text == "@prefix ex: <http://example.org/> .\n"


def test_single_statement_round_trip():
    g = parse_turtle(ONE_TRIPLE)
    assert parse_turtle(serialize_turtle(g)) == g


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_triple_count_matches_rdflib(name):
    ours = load_turtle(FIXTURES[name].path)
    theirs = rdflib.Graph().parse(FIXTURES[name].path, format="turtle")
    assert len(ours) == len(theirs)


def test_wop_hand_count(wop_asserted):
    assert len(wop_asserted) == 43


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_round_trip_is_isomorphic(name):
    original = load_turtle(FIXTURES[name].path)
    text = serialize_turtle(original)
    assert parse_turtle(text) == original
    theirs = rdflib.Graph().parse(FIXTURES[name].path, format="turtle")
    assert isomorphic(rdflib.Graph().parse(data=text, format="turtle"), theirs)


def test_syntax_sugar(ttl):
    g = ttl("""
        ex:s a ex:Thing, ex:Other ;
            ex:p "plain", "tagged"@EN-gb, "5"^^xsd:integer ;
            ex:q <http://example.org/full> ;
            ex:r 42, 1.5, 2e3, true ;
            .
        _:x ex:p ex:s .
    """)
    s = ex("s")
    assert g.objects(s, RDF.type) == {ex("Thing"), ex("Other")}
    assert g.objects(s, ex("p")) == {Term.literal("plain"), Term.literal("tagged", language="en-gb"),
                                     Term.literal("5", XSD.integer)}
    assert g.objects(s, ex("q")) == {ex("full")}
    assert Term.literal("42", XSD.integer) in g.objects(s, ex("r"))
    assert Term.literal("1.5", XSD.decimal) in g.objects(s, ex("r"))
    assert Term.literal("true", XSD.boolean) in g.objects(s, ex("r"))
    assert len(g.subjects(ex("p"), s)) == 1
    assert len(g) == 11


def test_escapes_survive_round_trip(ttl):
    g = ttl(r'ex:s ex:p "line\nbreak \"quoted\" tab\t back\\slash é" .')
    (t,) = g
    assert t.object.value == 'line\nbreak "quoted" tab\t back\\slash é'
    assert parse_turtle(serialize_turtle(g)) == g


def test_blank_nodes_are_scoped_per_document():
    doc_a = "@prefix ex: <http://example.org/> . _:x ex:p ex:a ."
    doc_b = "@prefix ex: <http://example.org/> . _:x ex:p ex:b ."
    a, b = parse_turtle(doc_a), parse_turtle(doc_b)
    assert next(iter(a)).subject != next(iter(b)).subject
    # Same document, same labels
    assert parse_turtle(doc_a) == a


def test_identical_files_keep_their_blank_nodes_apart(tmp_path):
    text = "@prefix ex: <http://example.org/> . _:x ex:p ex:a ."
    a, b = tmp_path / "a.ttl", tmp_path / "b.ttl"
    a.write_text(text)
    b.write_text(text)
    assert len(merge_graphs(load_turtle(a), load_turtle(b))) == 2
    # The same file loaded twice is the same graph
    assert merge_graphs(load_turtle(a), load_turtle(a)) == load_turtle(a)


def test_blank_nodes_are_relabelled_on_write():
    g = parse_turtle("@prefix ex: <http://example.org/> . _:weird ex:p _:other .")
    text = serialize_turtle(g)
    assert "_:b0 ex:p _:b1" in text.replace("\n    ", " ")


def test_serialization_is_deterministic(wop_asserted):
    reordered = Graph(reversed(wop_asserted.sorted_triples()), wop_asserted.prefixes)
    assert serialize_turtle(reordered) == serialize_turtle(wop_asserted)


def test_error_position():
    text = "@prefix ex: <http://example.org/> .\nex:a ex:b ex:c ,\n  ex:d ex:e ."
    with pytest.raises(TurtleSyntaxError) as info:
        parse_turtle(text)
    assert (info.value.line, info.value.column, info.value.token) == (3, 8, "ex:e")
    assert "line 3, column 8" in str(info.value)


def test_bad_token_position():
    with pytest.raises(TurtleSyntaxError) as info:
        parse_turtle("@prefix ex: <http://example.org/> .\nex:a ex:b $ .")
    assert (info.value.line, info.value.column) == (2, 11)


def test_unknown_prefix():
    with pytest.raises(UnknownPrefixError) as info:
        parse_turtle("zzz:a zzz:b zzz:c .")
    assert info.value.line == 1


def test_relative_iri():
    with pytest.raises(RelativeIRIError):
        parse_turtle("<a> <http://example.org/p> <http://example.org/o> .")


def test_base_is_rejected():
    with pytest.raises(TurtleSyntaxError):
        parse_turtle("@base <http://example.org/> .")


def test_missing_final_dot():
    with pytest.raises(TurtleSyntaxError):
        parse_turtle(ONE_TRIPLE[:-1])
