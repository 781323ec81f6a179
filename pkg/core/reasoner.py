import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Tuple

import networkx as nx

from core.graph import Graph, Term, Triple, merge_graphs
from core.vocabulary import D0, DUL, OWL, RDF, RSS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return f"?{self.name}"


X, Y, Z, T = Var("x"), Var("y"), Var("z"), Var("t")


@dataclass(frozen=True)
class Rule:
    """
    A Horn rule over triple patterns: when every body pattern matches,
    the head templates are instantiated with the same bindings.
    """
    id: str
    body: Tuple[tuple, ...]
    head: Tuple[tuple, ...]

    def __post_init__(self):
        body_vars = {x for pattern in self.body for x in pattern if isinstance(x, Var)}
        head_vars = {x for template in self.head for x in template if isinstance(x, Var)}
        if not head_vars <= body_vars:
            raise ValueError(f"Rule {self.id}: head variables {head_vars - body_vars} not bound by body")


RULES = (
    Rule("R1", ((X, RDF.type, RSS.RecurrentSituationSeries),),
         ((X, RDF.type, DUL.Collection), (X, RDF.type, RSS.Situation))),
    Rule("R2", ((X, RDF.type, RSS.Situation),), ((X, RDF.type, D0.Eventuality),)),
    Rule("R3", ((X, RSS.hasMemberSituation, Y),), ((Y, RSS.isSituationMemberOf, X),)),
    Rule("R3'", ((Y, RSS.isSituationMemberOf, X),), ((X, RSS.hasMemberSituation, Y),)),
    Rule("R4", ((X, RSS.hasNextSituation, Y),), ((Y, RSS.hasPreviousSituation, X),)),
    Rule("R4'", ((Y, RSS.hasPreviousSituation, X),), ((X, RSS.hasNextSituation, Y),)),
    Rule("R5", ((X, RSS.hasImmediateNextSituation, Y),), ((X, RSS.hasNextSituation, Y),)),
    Rule("R5'", ((X, RSS.hasImmediatePreviousSituation, Y),), ((X, RSS.hasPreviousSituation, Y),)),
    Rule("R6", ((X, RSS.hasEstimatedTimePeriod, T),), ((X, RSS.hasTimePeriod, T),)),
    Rule("R6'", ((X, RSS.hasMeasuredTimePeriod, T),), ((X, RSS.hasTimePeriod, T),)),
    Rule("R7", ((X, RSS.hasMemberSituation, Y), (Y, RSS.hasTimePeriodBeforeNextSituation, T)),
         ((X, RSS.hasTimePeriod, T),)),
    Rule("R8", ((X, RDF.type, RSS.UnifyingFactor),), ((X, RDF.type, DUL.Concept),)),
    Rule("R9", ((X, OWL.sameAs, Y),), ((Y, OWL.sameAs, X),)),
    Rule("R9'", ((X, OWL.sameAs, Y), (Y, OWL.sameAs, Z)), ((X, OWL.sameAs, Z),)),
    # immediate next/previous are inverses, like their general forms (R4)
    Rule("R10", ((X, RSS.hasImmediateNextSituation, Y),), ((Y, RSS.hasImmediatePreviousSituation, X),)),
    Rule("R10'", ((Y, RSS.hasImmediatePreviousSituation, X),), ((X, RSS.hasImmediateNextSituation, Y),)),
)


def _bind(pattern, triple, binding):
    extended = dict(binding)
    for slot, value in zip(pattern, triple):
        if isinstance(slot, Var):
            bound = extended.get(slot)
            if bound is None:
                extended[slot] = value
            elif bound != value:
                return None
    return extended


def _resolve(slot, binding):
    if isinstance(slot, Var):
        return binding.get(slot)
    return slot


def solve(graph, patterns, binding=None):
    """
    Yield every variable binding under which all patterns match the graph
    (a basic graph pattern, evaluated left to right with index lookups).
    """
    binding = binding or {}
    if not patterns:
        yield binding
        return
    first, rest = patterns[0], patterns[1:]
    s, p, o = (_resolve(slot, binding) for slot in first)
    for triple in graph.match(s, p, o):
        extended = _bind(first, triple, binding)
        if extended is not None:
            yield from solve(graph, rest, extended)


def instantiate(template, binding):
    s, p, o = (_resolve(slot, binding) for slot in template)
    if s.is_literal or not p.is_iri:
        return None
    return Triple(s, p, o)


@dataclass(frozen=True)
class InferenceDelta:
    added: frozenset
    iterations: int
    fired: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.added)

    def as_graph(self, prefixes=None):
        return Graph(self.added, prefixes)


def materialize(graph, rules=RULES):
    """
    Forward-chain the rules over the graph until nothing new is derived.

    Returns:
        InferenceDelta: the derived triples that were not asserted, and the
        number of rounds (the last round derives nothing).
    """
    current = graph
    added = set()
    fired = Counter()
    iterations = 0

    while True:
        iterations += 1
        new = set()
        for rule in rules:
            for binding in solve(current, rule.body):
                for template in rule.head:
                    triple = instantiate(template, binding)
                    if triple is not None and triple not in current and triple not in new:
                        new.add(triple)
                        fired[rule.id] += 1
        if not new:
            break
        added |= new
        current = current.union(new)
        logger.debug("Round %d derived %d triples", iterations, len(new))

    logger.debug("Fixpoint after %d rounds: %d triples added", iterations, len(added))
    return InferenceDelta(frozenset(added), iterations, dict(fired))


def materialized(graph):
    """The graph together with everything the rules derive from it."""
    return merge_graphs(graph, materialize(graph).as_graph())


class SameAsPartition:
    """Equivalence classes under the reflexive, symmetric, transitive closure of owl:sameAs."""

    def __init__(self, classes):
        self.classes = sorted(classes, key=lambda c: min(c).sort_key())
        self._class_of = {term: cls for cls in self.classes for term in cls}

    def class_of(self, term: Term):
        return self._class_of.get(term, frozenset([term]))

    def same(self, a, b):
        return a == b or b in self._class_of.get(a, ())


def same_as_classes(graph):
    """Connected components of the undirected owl:sameAs graph over every term."""
    links = nx.Graph()
    links.add_nodes_from(graph.terms())
    links.add_edges_from((t.subject, t.object) for t in graph.match(None, OWL.sameAs, None))
    return SameAsPartition(frozenset(c) for c in nx.connected_components(links))
