"""Structured view of one recurrent situation series, read out of a graph."""
import logging
from dataclasses import dataclass, field
from datetime import date
from typing import Dict, FrozenSet, Mapping, Optional, Tuple

from core.errors import NotASeriesError
from core.graph import Term
from core.temporal import TimePeriod, parse_date, unit_from_term
from core.vocabulary import DUL, RDF, RSS, TP

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AnchorConfig:
    """Where member start dates (and unifying-situation intervals) are read from."""
    predicate: Term = RSS.hasStartDate
    interval_predicate: Term = DUL.hasTimeInterval
    interval_start: Term = RSS.hasStartDate
    interval_end: Term = RSS.hasEndDate


@dataclass(frozen=True)
class UnifyingSituationView:
    situation: Term
    factor: Term
    interval: Optional[Term] = None
    start: Optional[date] = None
    end: Optional[date] = None


@dataclass(frozen=True)
class SeriesView:
    series: Term
    members: Tuple[Term, ...]
    unifying_factors: FrozenSet[Term]
    direct_factors: FrozenSet[Term]
    unifying_situations: Tuple[UnifyingSituationView, ...]
    descriptions: FrozenSet[Term]
    estimated: Optional[TimePeriod]
    declared_measured: Optional[TimePeriod]
    per_member_periods: Tuple[Tuple[Term, TimePeriod], ...]
    anchors: Mapping[Term, date]
    last_flagged: Optional[Term]
    # sequence data, restricted to links leaving a member
    immediate_next: Mapping[Term, FrozenSet[Term]] = field(default_factory=dict)
    next_links: Mapping[Term, FrozenSet[Term]] = field(default_factory=dict)
    numbers: Mapping[Term, Optional[int]] = field(default_factory=dict)
    last_flags: Mapping[Term, bool] = field(default_factory=dict)
    parts: FrozenSet[Term] = frozenset()


def is_series(graph, term):
    return graph.has(term, RDF.type, RSS.RecurrentSituationSeries)


def find_series(graph):
    """Every typed series in the graph, in term order."""
    return sorted(graph.subjects(RDF.type, RSS.RecurrentSituationSeries))


def parse_int(term):
    if term is None or not term.is_literal:
        return None
    try:
        return int(term.value.strip())
    except ValueError:
        return None


def parse_bool(term):
    if term is None or not term.is_literal:
        return None
    return {"true": True, "1": True, "false": False, "0": False}.get(term.value.strip())


def read_time_period(graph, term):
    """tp:TimePeriod node -> TimePeriod, or None if value or unit is missing."""
    value = parse_int(graph.value(term, TP.timePeriodValue))
    unit_term = graph.value(term, TP.hasTimePeriodMeasurementUnit)
    unit = unit_from_term(unit_term)
    if value is None or unit is None or value < 0:
        logger.warning("Ignoring time period %s: value=%s unit=%s", term, value, unit_term)
        return None
    return TimePeriod(value, unit, unit_term)


def _first_period(graph, candidates):
    for term in sorted(candidates):
        period = read_time_period(graph, term)
        if period is not None:
            return period
    return None


def _anchor(graph, member, anchors):
    found = [parse_date(lit) for lit in sorted(graph.objects(member, anchors.predicate))]
    found = [d for d in found if d is not None]
    if not found:
        for interval in sorted(graph.objects(member, anchors.interval_predicate)):
            found.extend(d for d in (parse_date(lit) for lit in graph.objects(interval, anchors.interval_start))
                         if d is not None)
    if not found and graph.objects(member, anchors.predicate):
        logger.warning("Member %s has an unreadable start date", member)
    return min(found) if found else None


def _interval_bounds(graph, interval, anchors):
    starts = [d for d in map(parse_date, graph.objects(interval, anchors.interval_start)) if d]
    ends = [d for d in map(parse_date, graph.objects(interval, anchors.interval_end)) if d]
    return (min(starts) if starts else None), (max(ends) if ends else None)


def order_members(members, immediate_next, numbers, anchors):
    """
    Sequence order of the members: follow immediate-next chains, starting
    from members with no immediate predecessor. Ties and unlinked members
    fall back to situation number, then start date, then IRI.
    """
    def fallback(m):
        number = numbers.get(m)
        anchor = anchors.get(m)
        return (number is None, number or 0, anchor is None, anchor or date.min, m.sort_key())

    member_set = set(members)
    successors = {m: sorted((n for n in immediate_next.get(m, ()) if n in member_set and n != m), key=fallback)
                  for m in members}
    has_predecessor = {n for m in members for n in successors[m]}

    ordered, seen = [], set()

    def walk(start):
        current = start
        while current is not None and current not in seen:
            seen.add(current)
            ordered.append(current)
            current = next((n for n in successors[current] if n not in seen), None)

    for root in sorted((m for m in members if m not in has_predecessor), key=fallback):
        walk(root)
    # Whatever is left sits on a cycle
    for m in sorted(members, key=fallback):
        if m not in seen:
            walk(m)
    return tuple(ordered)


def build_series_view(graph, series, anchors=None):
    """
    Read one series out of the graph.

    Raises:
        NotASeriesError: `series` is not typed rss:RecurrentSituationSeries.
    """
    if not is_series(graph, series):
        raise NotASeriesError(f"{series.value} is not typed rss:RecurrentSituationSeries")
    anchors = anchors or AnchorConfig()

    members = graph.objects(series, RSS.hasMemberSituation) | graph.subjects(RSS.isSituationMemberOf, series)

    # 1. Sequence data
    immediate_next: Dict[Term, FrozenSet[Term]] = {}
    next_links: Dict[Term, FrozenSet[Term]] = {}
    numbers, last_flags, member_anchors = {}, {}, {}
    for m in members:
        immediate_next[m] = (graph.objects(m, RSS.hasImmediateNextSituation)
                             | graph.subjects(RSS.hasImmediatePreviousSituation, m))
        next_links[m] = (graph.objects(m, RSS.hasNextSituation)
                         | graph.subjects(RSS.hasPreviousSituation, m)
                         | immediate_next[m])
        numbers[m] = parse_int(graph.value(m, RSS.situationNumber))
        last_flags[m] = bool(parse_bool(graph.value(m, RSS.isTheLastSituation)))
        anchor = _anchor(graph, m, anchors)
        if anchor is not None:
            member_anchors[m] = anchor

    ordered = order_members(members, immediate_next, numbers, member_anchors)
    last_flagged = next((m for m in ordered if last_flags[m]), None)

    # 2. Unifying criteria
    direct = graph.objects(series, RSS.hasUnifyingFactor)
    situations = set(graph.objects(series, RSS.hasUnifyingSituation))
    for factor in direct:
        situations |= {s for s in graph.subjects(RSS.involvesUnifyingFactor, factor)
                       if graph.has(s, RDF.type, RSS.UnifyingSituation)}

    unifying_situations = []
    for situation in sorted(situations):
        intervals = sorted(graph.objects(situation, RSS.isValidIn)) or [None]
        for factor in sorted(graph.objects(situation, RSS.involvesUnifyingFactor)):
            for interval in intervals:
                start, end = _interval_bounds(graph, interval, anchors) if interval else (None, None)
                unifying_situations.append(UnifyingSituationView(situation, factor, interval, start, end))

    factors = frozenset(direct) | {u.factor for u in unifying_situations}
    descriptions = frozenset(f for f in factors if graph.has(f, RDF.type, DUL.Description))

    # 3. Time periods
    estimated = _first_period(graph, graph.objects(series, RSS.hasEstimatedTimePeriod))
    if estimated is None:
        estimated = _first_period(graph, graph.objects(series, RSS.hasTimePeriod))
    declared_measured = _first_period(graph, graph.objects(series, RSS.hasMeasuredTimePeriod))
    per_member = []
    for m in ordered:
        for term in sorted(graph.objects(m, RSS.hasTimePeriodBeforeNextSituation)):
            period = read_time_period(graph, term)
            if period is not None:
                per_member.append((m, period))

    parts = frozenset(p for p in graph.objects(series, DUL.hasPart) if is_series(graph, p))

    view = SeriesView(
        series=series,
        members=ordered,
        unifying_factors=factors,
        direct_factors=frozenset(direct),
        unifying_situations=tuple(unifying_situations),
        descriptions=descriptions,
        estimated=estimated,
        declared_measured=declared_measured,
        per_member_periods=tuple(per_member),
        anchors=member_anchors,
        last_flagged=last_flagged,
        immediate_next=immediate_next,
        next_links=next_links,
        numbers=numbers,
        last_flags=last_flags,
        parts=parts,
    )
    logger.debug("Built view of %s: %d members, %d factors", series.value, len(ordered), len(factors))
    return view


def build_all_views(graph, anchors=None):
    return [build_series_view(graph, s, anchors) for s in find_series(graph)]
