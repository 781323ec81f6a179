"""
Closed-world checks of the pattern's axioms and of sequence integrity.

Missing required structure is reported as a finding, not an error; the
report conforms when no finding has severity "violation".
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Tuple

import networkx as nx

from core.graph import Graph, Term, Triple
from core.reasoner import Var, materialized, same_as_classes, solve
from core.series import build_series_view, find_series
from core.vocabulary import DUL, RDF, RSS

logger = logging.getLogger(__name__)

VIOLATION = "violation"
WARNING = "warning"

# code -> (default severity, what it checks)
CATALOG = {
    "RSS-MEMBER-TYPE": (VIOLATION, "member situation is not typed rss:Situation"),
    "RSS-NO-DESCRIPTION": (VIOLATION, "series has no dul:Description among its unifying factors"),
    "RSS-USIT-NO-FACTOR": (VIOLATION, "unifying situation involves no unifying factor"),
    "RSS-USIT-NO-INTERVAL": (VIOLATION, "unifying situation is not valid in any dul:TimeInterval"),
    "RSS-NO-PERIOD": (VIOLATION, "series has no time period"),
    "RSS-CROSS-SERIES": (VIOLATION, "next/previous link between members of distinct series"),
    "RSS-SEQ-ORDER": (VIOLATION, "situation numbers do not follow the immediate sequence"),
    "RSS-SEQ-LAST": (VIOLATION, "last-situation flag contradicts the sequence"),
    "RSS-SEQ-CYCLE": (VIOLATION, "next-situation links form a cycle"),
    "RSS-DESC-UNSATISFIED": (WARNING, "member does not satisfy the unifying description"),
    "RSS-IMMEDIATE-BRANCH": (VIOLATION, "situation has several immediate next situations"),
}

NUMBERING_DENSE = "dense"
NUMBERING_INCREASING = "increasing"


@dataclass(frozen=True)
class ValidatorConfig:
    severities: Dict[str, str] = field(default_factory=dict)
    numbering: str = NUMBERING_DENSE
    materialize: bool = False

    def severity(self, code):
        return self.severities.get(code, CATALOG[code][0])


@dataclass(frozen=True)
class Finding:
    code: str
    severity: str
    focus: Term
    others: Tuple[Term, ...]
    message: str

    def __post_init__(self):
        if self.code not in CATALOG:
            raise ValueError(f"Unknown finding code {self.code}")

    def sort_key(self):
        return (self.code, self.focus.sort_key(), tuple(o.sort_key() for o in self.others))

    def to_json(self):
        return {
            "code": self.code,
            "severity": self.severity,
            "focus": self.focus.value,
            "others": [o.value for o in self.others],
            "message": self.message,
        }


@dataclass(frozen=True)
class LocalConsistency:
    pairs: frozenset
    graph: Graph


@dataclass(frozen=True)
class ValidationReport:
    findings: Tuple[Finding, ...]
    constructed: Graph = field(default_factory=Graph)

    @property
    def conforms(self):
        return not any(f.severity == VIOLATION for f in self.findings)

    def codes(self):
        return sorted({f.code for f in self.findings})

    def to_json(self):
        return {"conforms": self.conforms, "findings": [f.to_json() for f in self.findings]}


def _finding(config, code, focus, others, message):
    return Finding(code, config.severity(code), focus, tuple(sorted(others)), message)


def _canonical(findings):
    unique = {(f.code, f.focus, f.others): f for f in findings}
    return tuple(sorted(unique.values(), key=Finding.sort_key))


# --- cross-series links ---

_S1, _S2, _SIT1, _SIT2 = Var("rss1"), Var("rss2"), Var("sit1"), Var("sit2")

_NEXT_PATTERN = (
    (_S1, RSS.hasMemberSituation, _SIT1),
    (_S2, RSS.hasMemberSituation, _SIT2),
    (_SIT1, RSS.hasNextSituation, _SIT2),
)
# Same link written backwards: sit2 comes before sit1
_PREVIOUS_PATTERN = (
    (_S1, RSS.hasMemberSituation, _SIT1),
    (_S2, RSS.hasMemberSituation, _SIT2),
    (_SIT2, RSS.hasPreviousSituation, _SIT1),
)


def check_local_consistency(graph):
    """
    Series whose members are linked by hasNextSituation (or, mirrored,
    hasPreviousSituation) although the series are neither the same nor
    owl:sameAs-equivalent. Returns the (earlier series, later series) pairs
    and the rss:isLocallyInconsistentWith triples asserting them.
    """
    partition = same_as_classes(graph)
    pairs = set()
    for pattern in (_NEXT_PATTERN, _PREVIOUS_PATTERN):
        for b in solve(graph, pattern):
            rss1, rss2, sit1, sit2 = b[_S1], b[_S2], b[_SIT1], b[_SIT2]
            if rss1 != rss2 and sit1 != sit2 and not partition.same(rss1, rss2):
                pairs.add((rss1, rss2))
    constructed = Graph(Triple(a, RSS.isLocallyInconsistentWith, b) for a, b in pairs)
    return LocalConsistency(frozenset(pairs), constructed)


# --- sequence integrity ---

def check_sequence(view, config=None):
    """Sequence findings (order, last flag, cycles, branching) for one series."""
    config = config or ValidatorConfig()
    members = set(view.members)
    findings = []

    # Branching immediate links
    for m in view.members:
        successors = {n for n in view.immediate_next.get(m, ()) if n in members}
        if len(successors) > 1:
            findings.append(_finding(config, "RSS-IMMEDIATE-BRANCH", m, successors,
                                     f"{m.value} has {len(successors)} immediate next situations"))

    # Situation numbers along immediate links
    for m in view.members:
        here = view.numbers.get(m)
        for n in sorted(view.immediate_next.get(m, ())):
            there = view.numbers.get(n)
            if n not in members or here is None or there is None:
                continue
            ok = there == here + 1 if config.numbering == NUMBERING_DENSE else there > here
            if not ok:
                findings.append(_finding(config, "RSS-SEQ-ORDER", m, [n],
                                         f"situation number {here} is followed by {there}"))

    # Last-situation flag
    flagged = [m for m in view.members if view.last_flags.get(m)]
    for m in flagged:
        later = {n for n in view.next_links.get(m, ()) if n in members and n != m}
        if later:
            findings.append(_finding(config, "RSS-SEQ-LAST", m, later,
                                     f"{m.value} is flagged last but has a next situation"))
    if len(flagged) > 1:
        findings.append(_finding(config, "RSS-SEQ-LAST", view.series, flagged,
                                 f"{len(flagged)} members are flagged as the last situation"))

    # Cycles among next links
    digraph = nx.DiGraph()
    digraph.add_nodes_from(view.members)
    for m in view.members:
        digraph.add_edges_from((m, n) for n in view.next_links.get(m, ()) if n in members)
    for component in nx.strongly_connected_components(digraph):
        if len(component) > 1 or any(digraph.has_edge(m, m) for m in component):
            first = min(component)
            findings.append(_finding(config, "RSS-SEQ-CYCLE", first, component - {first},
                                     f"next-situation cycle through {len(component)} member(s)"))

    return findings


# --- whole-graph validation ---

def _has_period(graph, series, members):
    for predicate in (RSS.hasTimePeriod, RSS.hasEstimatedTimePeriod, RSS.hasMeasuredTimePeriod):
        if graph.objects(series, predicate):
            return True
    return any(graph.objects(m, RSS.hasTimePeriodBeforeNextSituation) for m in members)


def _satisfies(graph, member, description):
    return graph.has(member, DUL.satisfies, description) or graph.has(description, DUL.isSatisfiedBy, member)


def validate(graph, config=None, anchors=None):
    """
    Check every series and unifying situation in the graph.

    The graph is expected to be materialized; set `config.materialize`
    to have it done here.
    """
    config = config or ValidatorConfig()
    if config.materialize:
        graph = materialized(graph)

    findings = []
    for series in find_series(graph):
        view = build_series_view(graph, series, anchors)

        for m in view.members:
            if not graph.has(m, RDF.type, RSS.Situation):
                findings.append(_finding(config, "RSS-MEMBER-TYPE", m, [series],
                                         f"{m.value} is a member of {series.value} but not an rss:Situation"))

        if not any(graph.has(f, RDF.type, DUL.Description) for f in view.direct_factors):
            findings.append(_finding(config, "RSS-NO-DESCRIPTION", series, [],
                                     f"{series.value} has no dul:Description as unifying factor"))

        if not _has_period(graph, series, view.members):
            findings.append(_finding(config, "RSS-NO-PERIOD", series, [], f"{series.value} has no time period"))

        for description in sorted(view.descriptions):
            for m in view.members:
                if not _satisfies(graph, m, description):
                    findings.append(_finding(config, "RSS-DESC-UNSATISFIED", m, [description],
                                             f"{m.value} does not satisfy {description.value}"))

        findings.extend(check_sequence(view, config))

    for situation in sorted(graph.subjects(RDF.type, RSS.UnifyingSituation)):
        if not graph.objects(situation, RSS.involvesUnifyingFactor):
            findings.append(_finding(config, "RSS-USIT-NO-FACTOR", situation, [],
                                     f"{situation.value} involves no unifying factor"))
        intervals = [i for i in graph.objects(situation, RSS.isValidIn) if graph.has(i, RDF.type, DUL.TimeInterval)]
        if not intervals:
            findings.append(_finding(config, "RSS-USIT-NO-INTERVAL", situation, [],
                                     f"{situation.value} is not valid in any dul:TimeInterval"))

    consistency = check_local_consistency(graph)
    for rss1, rss2 in consistency.pairs:
        findings.append(_finding(config, "RSS-CROSS-SERIES", rss1, [rss2],
                                 f"{rss1.value} links a member to a member of {rss2.value}"))

    report = ValidationReport(_canonical(findings), consistency.graph)
    logger.debug("Validation: %d findings, conforms=%s", len(report.findings), report.conforms)
    return report
