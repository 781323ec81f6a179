"""Seeded random datasets for the benchmark and the property tests."""
from datetime import date, timedelta

import numpy as np

from core.graph import Graph, Term, Triple
from core.vocabulary import DUL, NAMESPACES, OWL, RDF, RSS, TP, XSD

BASE = "http://example.org/random/"
UNITS = ("day", "week", "month", "year")


def _iri(name):
    return Term.iri(BASE + name)


def random_graph(seed, n_series=3, n_members=5, link_prob=0.3, same_as_prob=0.1, date_prob=0.8,
                 annotations=False):
    """
    A graph of `n_series` series with up to `n_members` members each.

    Next/previous links are drawn between any two situations, so some cross
    series; immediate links follow member order inside a series. With
    `annotations`, members also get blank-node notes carrying language-tagged
    and escaped string literals.
    """
    rng = np.random.default_rng(seed)
    triples = []
    series = [_iri(f"series{i}") for i in range(n_series)]
    situations = []

    for i, s in enumerate(series):
        triples.append(Triple(s, RDF.type, RSS.RecurrentSituationSeries))
        description = _iri(f"description{i}")
        triples += [Triple(s, RSS.hasUnifyingFactor, description), Triple(description, RDF.type, DUL.Description)]

        if rng.random() < 0.7:
            period = _iri(f"period{i}")
            unit = UNITS[int(rng.integers(len(UNITS)))]
            triples += [
                Triple(s, RSS.hasEstimatedTimePeriod, period),
                Triple(period, RDF.type, TP.TimePeriod),
                Triple(period, TP.timePeriodValue, Term.literal(str(int(rng.integers(1, 4))), XSD.integer)),
                Triple(period, TP.hasTimePeriodMeasurementUnit, _iri(unit)),
            ]

        members = [_iri(f"s{i}m{j}") for j in range(int(rng.integers(0, n_members + 1)))]
        start = date(2000, 1, 1) + timedelta(days=int(rng.integers(0, 3650)))
        for j, m in enumerate(members):
            # Either direction of the membership link
            if rng.random() < 0.5:
                triples.append(Triple(s, RSS.hasMemberSituation, m))
            else:
                triples.append(Triple(m, RSS.isSituationMemberOf, s))
            triples.append(Triple(m, RDF.type, RSS.Situation))
            triples.append(Triple(m, RSS.situationNumber, Term.literal(str(j + 1), XSD.integer)))
            if rng.random() < date_prob:
                day = start + timedelta(days=int(j * 365 + rng.integers(-30, 31)))
                triples.append(Triple(m, RSS.hasStartDate, Term.literal(day.isoformat(), XSD.date)))
        for a, b in zip(members, members[1:]):
            if rng.random() < 0.5:
                triples.append(Triple(a, RSS.hasImmediateNextSituation, b))
            else:
                triples.append(Triple(b, RSS.hasImmediatePreviousSituation, a))
        if annotations:
            triples += _annotations(rng, i, members)
        situations.extend(members)

    for a in situations:
        for b in situations:
            if a != b and rng.random() < link_prob / max(1, len(situations)):
                predicate, s, o = ((RSS.hasNextSituation, a, b) if rng.random() < 0.5
                                   else (RSS.hasPreviousSituation, b, a))
                triples.append(Triple(s, predicate, o))

    for a in series:
        for b in series:
            if a < b and rng.random() < same_as_prob:
                triples.append(Triple(a, OWL.sameAs, b))

    return Graph(triples, {"ex": BASE, "rss": NAMESPACES["rss"]})


def random_dates(seed, count, start=date(1990, 1, 1), span_days=20000):
    """`count` sorted random dates."""
    rng = np.random.default_rng(seed)
    offsets = np.sort(rng.integers(0, span_days, size=count))
    return [start + timedelta(days=int(d)) for d in offsets]


LANGUAGES = ("en", "it", "en-gb", "de-ch")
# Characters the writer has to escape, plus some it must leave alone
TEXT_PIECES = ("plain", 'say "hi"', "back\\slash", "line\nbreak", "tab\there", "carriage\rreturn", "caffè",
               "emoji 🐦", "", " ")


def _annotations(rng, i, members):
    """Blank-node notes on members, some shared and some chained to another note."""
    triples = []
    notes = [Term.blank(f"note{i}_{k}") for k in range(int(rng.integers(1, 4)))]
    for k, note in enumerate(notes):
        text = "".join(rng.choice(TEXT_PIECES, size=int(rng.integers(1, 4))))
        triples.append(Triple(note, _iri("label"), Term.literal(text, language=LANGUAGES[k % len(LANGUAGES)])))
        triples.append(Triple(note, _iri("comment"), Term.literal(text)))
        if k and rng.random() < 0.5:
            triples.append(Triple(note, _iri("seeAlso"), notes[k - 1]))
    for m in members:
        if rng.random() < 0.7:
            triples.append(Triple(m, _iri("note"), notes[int(rng.integers(len(notes)))]))
    return triples
